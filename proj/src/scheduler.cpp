#include "sim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sim {
namespace {

double capped_log1p(double x) { return std::log1p(std::min(x, kSinrCap)); }

}  // namespace

std::vector<std::vector<int>> associate(const std::vector<FeedbackReport>& reports,
                                        const Codebook& cb) {
  std::vector<std::vector<int>> sets(cb.size());
  std::vector<char> seen;
  for (const auto& r : reports) {
    if (r.codeword_index < 0 || r.codeword_index >= cb.size())
      throw std::invalid_argument("associate: codeword index out of range");
    if (r.user < 0) throw std::invalid_argument("associate: negative user index");
    if (static_cast<std::size_t>(r.user) >= seen.size()) seen.resize(r.user + 1, 0);
    if (seen[r.user]) throw std::invalid_argument("associate: duplicate user index");
    seen[r.user] = 1;
    sets[r.codeword_index].push_back(r.user);
  }
  return sets;
}

ScheduleDecision schedule(const std::vector<FeedbackReport>& reports, const Codebook& cb,
                          const std::vector<double>* realized_sinrs) {
  if (cb.kind != CodebookKind::MultiBasis)
    throw std::invalid_argument("schedule: multi-basis codebook required");
  const int nt = cb.dim;
  const int num_bases = cb.num_bases;

  ScheduleDecision decision;
  decision.assignments.assign(nt, -1);
  decision.beam_sinrs.assign(nt, 0.0);

  if (reports.empty()) return decision;

  // Per-codeword max-SINR user (ties: lowest user index).
  std::vector<int> winner(cb.size(), -1);
  std::vector<double> winner_sinr(cb.size(), 0.0);
  std::vector<char> seen;
  for (const auto& r : reports) {
    if (r.codeword_index < 0 || r.codeword_index >= cb.size())
      throw std::invalid_argument("schedule: codeword index out of range");
    if (r.user < 0) throw std::invalid_argument("schedule: negative user index");
    if (static_cast<std::size_t>(r.user) >= seen.size()) seen.resize(r.user + 1, 0);
    if (seen[r.user]) throw std::invalid_argument("schedule: duplicate user index");
    seen[r.user] = 1;
    int c = r.codeword_index;
    if (winner[c] < 0 || r.sinr > winner_sinr[c] ||
        (r.sinr == winner_sinr[c] && r.user < winner[c])) {
      winner[c] = r.user;
      winner_sinr[c] = r.sinr;
    }
  }

  int best_m = 0;
  double best_obj = -1.0;
  for (int m = 0; m < num_bases; ++m) {
    double obj = 0.0;
    for (int n = 0; n < nt; ++n) {
      int c = m * nt + n;
      if (winner[c] >= 0) obj += capped_log1p(winner_sinr[c]);
    }
    if (obj > best_obj) {  // strict: ties keep the lowest basis
      best_obj = obj;
      best_m = m;
    }
  }

  decision.basis_index = best_m;
  decision.beamformers.reserve(nt);
  decision.sum_rate = 0.0;
  for (int n = 0; n < nt; ++n) {
    int c = best_m * nt + n;
    decision.beamformers.push_back(cb.vectors[c]);
    int user = winner[c];
    decision.assignments[n] = user;
    if (user >= 0) {
      double xi = winner_sinr[c];
      if (realized_sinrs) {
        if (static_cast<std::size_t>(user) >= realized_sinrs->size())
          throw std::invalid_argument("schedule: realized SINR missing for user");
        xi = (*realized_sinrs)[user];
      }
      decision.beam_sinrs[n] = xi;
      decision.sum_rate += capped_log1p(xi);
    }
  }
  return decision;
}

double instantaneous_rate(const ScheduleDecision& decision) {
  double rate = 0.0;
  for (std::size_t n = 0; n < decision.beam_sinrs.size(); ++n)
    if (decision.assignments[n] >= 0) rate += capped_log1p(decision.beam_sinrs[n]);
  return rate;
}

int count_scheduled(const ScheduleDecision& decision) {
  int count = 0;
  for (int u : decision.assignments)
    if (u >= 0) ++count;
  return count;
}

}  // namespace sim
