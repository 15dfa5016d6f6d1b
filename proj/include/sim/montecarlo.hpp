#pragma once

#include <cstdint>
#include <vector>

#include "sim/baselines.hpp"
#include "sim/feedback.hpp"
#include "sim/types.hpp"

namespace sim {

enum class Algorithm { Pu2rc, ZfSdma, Dpc };

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Pu2rc;
  Regime regime = Regime::Normal;
  int nt = 4;
  int num_bases = 4;          // PU2RC: codebook holds num_bases * nt vectors
  int codebook_bits = 4;      // ZF-SDMA: per-user RVQ codebook of 2^bits vectors
  double snr_db = 5.0;        // gamma = P / nt, in dB
  std::vector<int> user_grid;
  int trials = 10000;
  std::uint64_t seed = 0;
  int sinr_feedback_bits = 0; // 0 = perfect SINR feedback
  bool shared_rvq_codebook = false;
  double zf_ortho_threshold = 0.25;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct CurvePoint {
  int users = 0;
  double mean = 0.0;           // bps/Hz
  double std_err = 0.0;
  double mean_scheduled = 0.0;
  int n_trials = 0;
};

/// Ergodic throughput estimate over the configured user grid. Deterministic
/// in (config, seed); trials run in parallel (SIM_THREADS caps workers) with
/// a fixed-order reduction so the result is thread-count independent.
std::vector<CurvePoint> run_experiment(const ExperimentConfig& cfg);

/// Asymptotic throughput references, nats: Normal/NoiseLimited give
/// nt * log log U, InterferenceLimited gives nt/(nt-1) * log U.
std::vector<double> reference_curve(Regime regime, int nt,
                                    const std::vector<int>& user_grid);

enum class SlopeAxis { LogU, LogLogU };

/// Least-squares slope of mean throughput against log U or log log U over
/// the largest-U half of the grid (at least 5 points required there).
double estimate_slope(const std::vector<CurvePoint>& points, SlopeAxis axis);

/// Worker count: SIM_THREADS if set, else hardware concurrency.
int thread_budget();

/// Deterministic pairwise tree sum, independent of how values were produced.
double tree_sum(const std::vector<double>& values, std::size_t begin, std::size_t end);

/// Stream key used for trial t of a grid point with the given user count.
/// Pilot runs (quantizer calibration) use a disjoint key space.
std::uint64_t trial_stream_id(int users, int trial, bool pilot);

}  // namespace sim
