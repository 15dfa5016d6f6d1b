// Acceptance suite: one checkable criterion per number, each printing a
// single PASS/FAIL line. Run with no arguments for all criteria or with a
// list of criterion numbers.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sim/baselines.hpp"
#include "sim/experiment_io.hpp"
#include "sim/montecarlo.hpp"
#include "sim/presets.hpp"
#include "sim/scheduler.hpp"

using namespace sim;
namespace fs = std::filesystem;

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct EpsSample {
  std::vector<double> eps;
};

EpsSample draw_eps_samples(int nt, int num_bases, int draws, std::uint64_t seed) {
  // Codebook resampled per draw: the closed forms average over the random
  // codebook ensemble.
  RandomStream rs(seed, 0);
  EpsSample out;
  out.eps.resize(draws);
  for (int i = 0; i < draws; ++i) {
    Codebook cb = make_multibasis_codebook(rs, nt, num_bases);
    CVec g = sample_gaussian_vec(rs, nt);
    out.eps[i] = quantize_shape(g / g.norm(), cb).eps;
  }
  return out;
}

ExperimentConfig pu2rc_config(int nt, int num_bases, double snr_db, std::vector<int> grid,
                              int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::Pu2rc;
  cfg.nt = nt;
  cfg.num_bases = num_bases;
  cfg.snr_db = snr_db;
  cfg.user_grid = std::move(grid);
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

ExperimentConfig zf_config(int nt, int codebook_bits, double snr_db, std::vector<int> grid,
                           int trials, std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::ZfSdma;
  cfg.nt = nt;
  cfg.codebook_bits = codebook_bits;
  cfg.snr_db = snr_db;
  cfg.user_grid = std::move(grid);
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

bool criterion1() {
  const int draws = 1000000;
  struct Grid {
    int nt, m;
  };
  bool pass = true;
  for (Grid g : {Grid{2, 1}, Grid{2, 4}, Grid{4, 2}}) {
    EpsSample sample = draw_eps_samples(g.nt, g.m, draws, 1000 + g.nt * 10 + g.m);
    for (int k = 1; k <= 10; ++k) {
      double delta = 0.05 * k;
      long count = std::count_if(sample.eps.begin(), sample.eps.end(),
                                 [&](double e) { return e >= delta; });
      double empirical = static_cast<double>(count) / draws;
      double p = ccdf_eps(std::min(delta, 0.5), g.nt, g.m);
      double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / draws);
      if (std::abs(empirical - p) > 3.0 * se + 1e-9) {
        pass = false;
        std::printf("  ccdf mismatch nt=%d M=%d delta=%.2f emp=%.6f closed=%.6f se=%.2g\n",
                    g.nt, g.m, delta, empirical, p, se);
      }
    }
  }
  return pass;
}

bool criterion2() {
  const int draws = 1000000;
  struct Grid {
    int nt, m;
  };
  bool pass = true;
  for (Grid g : {Grid{2, 1}, Grid{2, 4}, Grid{4, 2}}) {
    EpsSample sample = draw_eps_samples(g.nt, g.m, draws, 2000 + g.nt * 10 + g.m);
    double sum = 0.0, sumsq = 0.0;
    for (double e : sample.eps) {
      double v = -std::log(std::max(e, 1e-300));
      sum += v;
      sumsq += v * v;
    }
    double mean = sum / draws;
    double se = std::sqrt(std::max(sumsq / draws - mean * mean, 0.0) / draws);
    LogEpsBounds b = elog_eps_bounds(g.nt, g.m);
    // 3-standard-error slack: the bracket can be tight (nt=2, M=1 attains
    // the upper bound exactly) so the Monte Carlo mean straddles it.
    bool ok = mean >= b.lower - 3.0 * se && mean <= b.upper + 3.0 * se;
    std::printf("  nt=%d M=%d E[-log eps]=%.5f bracket=[%.5f, %.5f] se=%.2g %s\n", g.nt,
                g.m, mean, b.lower, b.upper, se, ok ? "ok" : "VIOLATION");
    pass = pass && ok;
  }
  return pass;
}

bool criterion3() {
  const int trials = 10000;
  auto pu = run_experiment(pu2rc_config(2, 8, 5.0, {200}, trials, 30));
  ExperimentConfig dpc;
  dpc.algorithm = Algorithm::Dpc;
  dpc.nt = 2;
  dpc.snr_db = 5.0;
  dpc.user_grid = {200};
  dpc.trials = trials;
  dpc.seed = 31;
  auto bound = run_experiment(dpc);
  double ratio = pu[0].mean / bound[0].mean;
  std::printf("  pu2rc=%.4f dpc=%.4f ratio=%.4f (band 0.80..0.90)\n", pu[0].mean,
              bound[0].mean, ratio);
  return ratio >= 0.80 && ratio <= 0.90;
}

double locate_crossing(const std::vector<CurvePoint>& pu, const std::vector<CurvePoint>& zf) {
  // Linear interpolation at the last sign change of the mean difference.
  double crossing = -1.0;
  for (std::size_t i = 1; i < pu.size(); ++i) {
    double d0 = pu[i - 1].mean - zf[i - 1].mean;
    double d1 = pu[i].mean - zf[i].mean;
    if (d0 < 0.0 && d1 >= 0.0) {
      double t = d0 / (d0 - d1);
      crossing = pu[i - 1].users + t * (pu[i].users - pu[i - 1].users);
    }
  }
  return crossing;
}

bool criterion4() {
  const int trials = 10000;
  std::vector<int> grid16 = {6, 10, 14, 18, 22, 26, 30, 34};
  std::vector<int> grid64 = {10, 14, 18, 22, 26, 30, 34, 38, 42, 46};
  auto pu16 = run_experiment(pu2rc_config(4, 4, 5.0, grid16, trials, 40));
  auto zf16 = run_experiment(zf_config(4, 4, 5.0, grid16, trials, 41));
  auto pu64 = run_experiment(pu2rc_config(4, 16, 5.0, grid64, trials, 42));
  auto zf64 = run_experiment(zf_config(4, 6, 5.0, grid64, trials, 43));
  double cross16 = locate_crossing(pu16, zf16);
  double cross64 = locate_crossing(pu64, zf64);
  std::printf("  crossing N=16 at U=%.1f (band 12..28), N=64 at U=%.1f (band 18..38)\n",
              cross16, cross64);
  return cross16 >= 12.0 && cross16 <= 28.0 && cross64 >= 18.0 && cross64 <= 38.0;
}

bool criterion5() {
  const int trials = 10000;
  auto pu16 = run_experiment(pu2rc_config(4, 4, 5.0, {100}, trials, 50));
  auto pu64 = run_experiment(pu2rc_config(4, 16, 5.0, {100}, trials, 50));
  auto zf16 = run_experiment(zf_config(4, 4, 5.0, {100}, trials, 51));
  auto zf64 = run_experiment(zf_config(4, 6, 5.0, {100}, trials, 51));
  double pu_loss = pu64[0].mean - pu16[0].mean;
  double zf_loss = zf64[0].mean - zf16[0].mean;
  std::printf("  loss N=64->16: pu2rc=%.3f bps/Hz, zf=%.3f bps/Hz (need zf >= 2x)\n", pu_loss,
              zf_loss);
  return zf_loss >= 2.0 * pu_loss && pu_loss >= 0.0;
}

bool criterion6() {
  const int trials = 10000;
  auto pu16 = run_experiment(pu2rc_config(4, 4, 5.0, {10, 150}, trials, 60));
  auto pu64 = run_experiment(pu2rc_config(4, 16, 5.0, {10, 150}, trials, 60));
  double small_gap = pu16[0].mean - pu64[0].mean;  // N=64 below N=16 at U=10
  double small_se = std::hypot(pu16[0].std_err, pu64[0].std_err);
  double large_gap = pu64[1].mean - pu16[1].mean;  // N=64 above N=16 at U=150
  double large_se = std::hypot(pu16[1].std_err, pu64[1].std_err);
  std::printf("  U=10: N16-N64=%.3f (2se=%.3f); U=150: N64-N16=%.3f (2se=%.3f)\n", small_gap,
              2 * small_se, large_gap, 2 * large_se);
  return small_gap > 2.0 * small_se && large_gap > 2.0 * large_se;
}

bool criterion7() {
  const int trials = 800;
  std::vector<int> grid = {10,  18,   32,   56,   100,  178, 316,
                           562, 1000, 1778, 3162, 5623, 10000};
  bool pass = true;

  // Each SNR runs the regime model it represents: 30dB interference-limited,
  // 5dB normal, 0dB noise-limited.
  auto high_cfg = pu2rc_config(2, 8, 30.0, grid, trials, 70);
  high_cfg.regime = Regime::InterferenceLimited;
  auto high = run_experiment(high_cfg);
  double slope_nats = estimate_slope(high, SlopeAxis::LogU) * kLn2;
  double target = 2.0;  // nt / (nt - 1) with nt = 2
  std::printf("  SNR=30dB slope vs log U: %.3f nats (band %.2f..%.2f)\n", slope_nats,
              0.8 * target, 1.2 * target);
  pass = pass && slope_nats >= 0.8 * target && slope_nats <= 1.2 * target;

  for (double snr : {0.0, 5.0}) {
    auto cfg = pu2rc_config(2, 8, snr, grid, trials, 71);
    cfg.regime = snr == 0.0 ? Regime::NoiseLimited : Regime::Normal;
    auto curve = run_experiment(cfg);
    double slope = estimate_slope(curve, SlopeAxis::LogLogU) * kLn2;
    double nt_target = 2.0;
    std::printf("  SNR=%.0fdB slope vs log log U: %.3f nats (band %.2f..%.2f)\n", snr, slope,
                0.7 * nt_target, 1.3 * nt_target);
    pass = pass && slope >= 0.7 * nt_target && slope <= 1.3 * nt_target;
  }
  return pass;
}

bool criterion8() {
  const int trials = 10000;
  auto perfect = run_experiment(pu2rc_config(4, 4, 5.0, {100}, trials, 80));
  auto cfg2 = pu2rc_config(4, 4, 5.0, {100}, trials, 80);
  cfg2.sinr_feedback_bits = 2;
  auto two_bit = run_experiment(cfg2);
  auto cfg3 = cfg2;
  cfg3.sinr_feedback_bits = 3;
  auto three_bit = run_experiment(cfg3);
  double loss2 = (perfect[0].mean - two_bit[0].mean) / perfect[0].mean;
  double loss3 = (perfect[0].mean - three_bit[0].mean) / perfect[0].mean;
  std::printf("  loss vs perfect SINR: 2-bit %.2f%% (<5%%), 3-bit %.2f%% (<2%%)\n",
              100 * loss2, 100 * loss3);
  return loss2 < 0.05 && loss3 < 0.02;
}

// Exhaustive enumeration over (basis, per-beam user choice) combinations.
struct OracleResult {
  int basis = -1;
  std::vector<int> assignments;
  double rate = 0.0;
};

void enumerate_beams(const std::vector<std::vector<int>>& sets,
                     const std::vector<FeedbackReport>& reports, int m, int nt, int beam,
                     std::vector<int>& current, double rate, OracleResult& best) {
  if (beam == nt) {
    if (best.basis < 0 || rate > best.rate) {
      best.basis = m;
      best.assignments = current;
      best.rate = rate;
    }
    return;
  }
  current[beam] = -1;
  enumerate_beams(sets, reports, m, nt, beam + 1, current, rate, best);
  for (int user : sets[m * nt + beam]) {
    current[beam] = user;
    enumerate_beams(sets, reports, m, nt, beam + 1, current,
                    rate + std::log1p(reports[user].sinr), best);
    current[beam] = -1;
  }
}

bool criterion9() {
  RandomStream rs(90, 0);
  std::mt19937_64 dims(90);
  for (int rep = 0; rep < 1000; ++rep) {
    int nt = 2 + static_cast<int>(dims() % 2);
    int m = 1 + static_cast<int>(dims() % 3);
    int users = 1 + static_cast<int>(dims() % 8);
    Codebook cb = make_multibasis_codebook(rs, nt, m);
    std::vector<FeedbackReport> reports;
    for (int u = 0; u < users; ++u) {
      ChannelRealization cr = decompose(sample_gaussian_vec(rs, nt));
      auto q = quantize_shape(cr.shape, cb);
      reports.push_back({u, q.codeword_index, q.eps,
                         sinr(2.0, cr.power, q.eps, Regime::Normal)});
    }
    ScheduleDecision d = schedule(reports, cb);
    OracleResult best;
    std::vector<int> current(nt, -1);
    auto sets = associate(reports, cb);
    for (int basis = 0; basis < m; ++basis)
      enumerate_beams(sets, reports, basis, nt, 0, current, 0.0, best);
    if (d.basis_index != best.basis || d.assignments != best.assignments ||
        std::abs(d.sum_rate - best.rate) > 1e-12) {
      std::printf("  mismatch at instance %d (nt=%d M=%d U=%d)\n", rep, nt, m, users);
      return false;
    }
  }
  std::printf("  1000/1000 instances match the exhaustive search\n");
  return true;
}

bool criterion10() {
  DpcConfig cfg;
  cfg.power = 2.0 * std::pow(10.0, 0.5);
  for (int rep = 0; rep < 100; ++rep) {
    RandomStream rs(1000 + rep, 0);
    std::vector<ChannelRealization> channels;
    for (int u = 0; u < 2; ++u) channels.push_back(decompose(sample_gaussian_vec(rs, 2)));
    DpcResult result = dpc_sum_capacity(channels, cfg);
    if (!result.monotone) {
      std::printf("  monotone-ascent assertion fired at draw %d\n", rep);
      return false;
    }
    double best = 0.0;
    const int steps = 1000;
    for (int i = 0; i <= steps; ++i) {
      double p1 = cfg.power * i / steps;
      CMat a = CMat::Identity(2, 2) + p1 * channels[0].h * channels[0].h.adjoint() +
               (cfg.power - p1) * channels[1].h * channels[1].h.adjoint();
      best = std::max(best, std::log(a.determinant().real()));
    }
    if (std::abs(result.sum_rate - best) > 1e-3) {
      std::printf("  grid mismatch at draw %d: iwf=%.6f grid=%.6f\n", rep, result.sum_rate,
                  best);
      return false;
    }
  }
  std::printf("  100/100 draws match the grid search within 1e-3 nats\n");
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool criterion11() {
  fs::path base = fs::temp_directory_path() / "sim_acceptance_det";
  fs::remove_all(base);
  std::map<std::string, std::string> reference;
  bool pass = true;
  int run = 0;
  for (const char* threads : {"1", "4", "1"}) {
    setenv("SIM_THREADS", threads, 1);
    fs::path dir = base / ("run" + std::to_string(run++));
    auto files = run_preset("fig6", 7, 3, dir.string());
    for (const auto& f : files) {
      std::string name = fs::path(f).filename().string();
      std::string content = slurp(f);
      if (name.ends_with("_manifest.json")) {
        auto j = nlohmann::json::parse(content);
        j.erase("wall_clock_seconds");  // only nondeterministic field
        content = j.dump();
      }
      auto [it, inserted] = reference.emplace(name, content);
      if (!inserted && it->second != content) {
        std::printf("  output differs across runs: %s\n", name.c_str());
        pass = false;
      }
    }
  }
  unsetenv("SIM_THREADS");
  fs::remove_all(base);
  if (pass) std::printf("  fig6 outputs byte-identical across reruns and SIM_THREADS=1,4\n");
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<const char*, std::function<bool()>>> criteria = {
      {1, {"quantization-error ccdf matches closed form", criterion1}},
      {2, {"E[-log eps] inside closed-form bracket", criterion2}},
      {3, {"pu2rc/dpc throughput ratio at U=200", criterion3}},
      {4, {"pu2rc vs zf-sdma crossing points", criterion4}},
      {5, {"codebook-size robustness gap at U=100", criterion5}},
      {6, {"codebook-size reversal between U=10 and U=150", criterion6}},
      {7, {"asymptotic throughput scaling slopes", criterion7}},
      {8, {"sinr scalar quantization loss", criterion8}},
      {9, {"scheduler matches exhaustive search", criterion9}},
      {10, {"2-user water-filling matches grid search", criterion10}},
      {11, {"preset outputs deterministic across threads", criterion11}},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (const auto& [num, entry] : criteria) selected.push_back(num);

  int failures = 0;
  for (int num : selected) {
    auto it = criteria.find(num);
    if (it == criteria.end()) {
      std::printf("unknown criterion %d\n", num);
      return 2;
    }
    bool ok = it->second.second();
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", num, it->second.first);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
