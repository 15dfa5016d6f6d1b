#pragma once

#include <vector>

#include "sim/feedback.hpp"
#include "sim/types.hpp"

namespace sim {

/// Outcome of joint basis selection, per-beam user assignment and
/// beamforming for one channel draw. Rates are in nats.
struct ScheduleDecision {
  int basis_index = -1;
  std::vector<int> assignments;   // per beam, -1 when no user reported it
  std::vector<double> beam_sinrs; // 0 on unassigned beams
  std::vector<CVec> beamformers;
  double sum_rate = 0.0;
};

/// Per-codeword association sets: user u lands in exactly the set of its
/// quantized codeword. Throws on duplicate user indices.
std::vector<std::vector<int>> associate(const std::vector<FeedbackReport>& reports,
                                        const Codebook& cb);

/// Max-SINR user per codeword, then the basis maximizing sum log(1 + xi).
/// Ties: lowest basis index, lowest user index.
///
/// Selection always runs on report.sinr. When realized_sinrs (indexed by
/// user) is given, the decision's beam SINRs and sum rate are recomputed
/// from it -- used when scheduling consumes quantized SINR feedback but
/// realized rates follow the true channel.
ScheduleDecision schedule(const std::vector<FeedbackReport>& reports, const Codebook& cb,
                          const std::vector<double>* realized_sinrs = nullptr);

/// Sum over beams of log(1 + xi), nats; infinite SINRs capped at kSinrCap.
double instantaneous_rate(const ScheduleDecision& decision);

int count_scheduled(const ScheduleDecision& decision);

}  // namespace sim
