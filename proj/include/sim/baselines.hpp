#pragma once

#include <vector>

#include "sim/feedback.hpp"
#include "sim/random.hpp"
#include "sim/types.hpp"

namespace sim {

enum class ZfGreedyKey { ReportedSinr, ChannelPower };

struct ZfConfig {
  double ortho_threshold = 0.25;  // max squared correlation between selected directions
  int codebook_bits = 4;          // per-user RVQ codebook of 2^bits vectors
  double gamma = 1.0;             // per-beam SNR P / N_t
  ZfGreedyKey greedy_key = ZfGreedyKey::ReportedSinr;
  bool shared_codebook = false;   // one RVQ codebook for all users instead of per-user
};

struct ZfResult {
  std::vector<int> users;        // selected users, in greedy order
  std::vector<CVec> beams;       // unit-norm ZF beamformers, same order
  std::vector<CVec> directions;  // quantized directions of the selected users
  double sum_rate = 0.0;         // nats, realized against the true channels
};

/// RVQ feedback, greedy semi-orthogonal user selection, zero-forcing
/// beamforming through the quantized directions, rates from true channels.
ZfResult zf_schedule_and_rate(const std::vector<ChannelRealization>& channels,
                              const ZfConfig& cfg, RandomStream& stream);

struct DpcConfig {
  double power = 1.0;   // total transmit power P
  double tol = 1e-6;    // stop when the objective moves less than this
  int max_iters = 1000;
};

struct DpcResult {
  double sum_rate = 0.0;  // nats
  bool converged = true;
  bool monotone = true;   // objective never decreased across iterations
  int active_users = 0;   // users carrying non-negligible power
};

/// MISO broadcast sum capacity via the dual MAC: maximize
/// log det(I + sum_u p_u h_u h_u^dagger) subject to sum p_u <= P, by
/// sum-power iterative water-filling (simultaneous water-fill step with a
/// backtracking line search, which keeps the ascent monotone).
DpcResult dpc_sum_capacity(const std::vector<ChannelRealization>& channels,
                           const DpcConfig& cfg);

}  // namespace sim
