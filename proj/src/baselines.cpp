#include "sim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sim {
namespace {

// Water-fill total power over effective gains e: p_u = max(0, mu - 1/e_u)
// with sum p = P. Exact solution via the sorted active-set sweep.
std::vector<double> waterfill(const std::vector<double>& gains, double total_power) {
  const int k = static_cast<int>(gains.size());
  std::vector<double> inv(k);
  for (int i = 0; i < k; ++i) inv[i] = 1.0 / gains[i];
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return inv[a] < inv[b]; });

  // Largest active set whose common water level clears its worst user.
  double level = 0.0;
  double prefix = 0.0;
  int active = 0;
  for (int i = 0; i < k; ++i) {
    prefix += inv[order[i]];
    double candidate = (total_power + prefix) / (i + 1);
    if (candidate > inv[order[i]]) {
      level = candidate;
      active = i + 1;
    }
  }
  std::vector<double> powers(k, 0.0);
  for (int i = 0; i < active; ++i) {
    int u = order[i];
    powers[u] = std::max(0.0, level - inv[u]);
  }
  return powers;
}

double logdet_objective(const std::vector<ChannelRealization>& channels,
                        const std::vector<double>& powers, CMat& a) {
  const int nt = static_cast<int>(channels.front().h.size());
  a = CMat::Identity(nt, nt);
  for (std::size_t u = 0; u < channels.size(); ++u)
    if (powers[u] > 0.0)
      a.noalias() += powers[u] * channels[u].h * channels[u].h.adjoint();
  Eigen::LLT<CMat> llt(a);
  double logdet = 0.0;
  for (int i = 0; i < nt; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i).real());
  return logdet;
}

}  // namespace

ZfResult zf_schedule_and_rate(const std::vector<ChannelRealization>& channels,
                              const ZfConfig& cfg, RandomStream& stream) {
  if (channels.empty()) throw std::invalid_argument("zf_schedule_and_rate: no users");
  const int nt = static_cast<int>(channels.front().h.size());
  const int codebook_size = 1 << cfg.codebook_bits;
  const int num_users = static_cast<int>(channels.size());

  // RVQ feedback: quantized direction plus SINR per user.
  std::vector<CVec> directions(num_users);
  std::vector<double> reported(num_users);
  Codebook shared;
  if (cfg.shared_codebook) shared = make_rvq_codebook(stream, nt, codebook_size);
  for (int u = 0; u < num_users; ++u) {
    const Codebook& cb =
        cfg.shared_codebook ? shared : (shared = make_rvq_codebook(stream, nt, codebook_size));
    auto q = quantize_shape(channels[u].shape, cb);
    directions[u] = cb.vectors[q.codeword_index];
    double s = sinr(cfg.gamma, channels[u].power, q.eps, Regime::Normal);
    reported[u] = cfg.greedy_key == ZfGreedyKey::ReportedSinr ? s : channels[u].power;
  }

  // Greedy semi-orthogonal selection in decreasing key order.
  std::vector<int> order(num_users);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (reported[a] != reported[b]) return reported[a] > reported[b];
    return a < b;
  });
  std::vector<int> selected;
  for (int u : order) {
    if (static_cast<int>(selected.size()) == nt) break;
    bool ok = true;
    for (int v : selected) {
      double corr = std::norm(inner_product(directions[u], directions[v]));
      if (corr > cfg.ortho_threshold) {
        ok = false;
        break;
      }
    }
    if (ok) selected.push_back(u);
  }

  // Zero-forcing through the quantized directions: W = S (S^dagger S)^-1,
  // columns normalized. A rank-deficient direction matrix drops the
  // last-added user.
  ZfResult result;
  while (!selected.empty()) {
    const int k = static_cast<int>(selected.size());
    CMat s(nt, k);
    for (int i = 0; i < k; ++i) s.col(i) = directions[selected[i]];
    CMat gram = s.adjoint() * s;
    Eigen::FullPivLU<CMat> lu(gram);
    lu.setThreshold(1e-10);
    if (lu.rank() < k) {
      selected.pop_back();
      continue;
    }
    CMat w = s * lu.inverse();
    for (int i = 0; i < k; ++i) w.col(i) /= w.col(i).norm();
    result.users = selected;
    for (int i = 0; i < k; ++i) result.beams.push_back(w.col(i));
    for (int i = 0; i < k; ++i) result.directions.push_back(directions[selected[i]]);
    for (int i = 0; i < k; ++i) {
      const CVec& h = channels[selected[i]].h;
      double signal = cfg.gamma * std::norm(inner_product(h, w.col(i)));
      double interference = 0.0;
      for (int j = 0; j < k; ++j)
        if (j != i) interference += cfg.gamma * std::norm(inner_product(h, w.col(j)));
      result.sum_rate += std::log1p(signal / (1.0 + interference));
    }
    break;
  }
  return result;
}

DpcResult dpc_sum_capacity(const std::vector<ChannelRealization>& channels,
                           const DpcConfig& cfg) {
  if (channels.empty()) throw std::invalid_argument("dpc_sum_capacity: no users");
  if (cfg.power <= 0.0) throw std::invalid_argument("dpc_sum_capacity: power must be > 0");
  const int num_users = static_cast<int>(channels.size());
  const int nt = static_cast<int>(channels.front().h.size());

  DpcResult result;
  if (num_users == 1) {
    result.sum_rate = std::log1p(cfg.power * channels[0].power);
    result.active_users = 1;
    return result;
  }

  std::vector<double> powers(num_users, cfg.power / num_users);
  CMat a;
  double objective = logdet_objective(channels, powers, a);

  int iter = 0;
  bool converged = false;
  std::vector<double> trial_powers(num_users);
  for (; iter < cfg.max_iters; ++iter) {
    // Effective gain of user u against everyone else's current powers:
    // e_u = h_u^dagger (A - p_u h_u h_u^dagger)^-1 h_u, via a rank-1
    // downdate of the full inverse.
    CMat a_inv = a.llt().solve(CMat::Identity(nt, nt));
    std::vector<double> gains(num_users);
    for (int u = 0; u < num_users; ++u) {
      double q = (channels[u].h.adjoint() * a_inv * channels[u].h).real()(0, 0);
      double denom = 1.0 - powers[u] * q;
      gains[u] = denom > 1e-14 ? q / denom : 1e14;
    }
    std::vector<double> filled = waterfill(gains, cfg.power);

    // The joint water-filling point maximizes a concave surrogate whose
    // gradient matches the true objective at the current powers, so the
    // step direction is an ascent direction. Backtrack until the true
    // objective improves; this keeps the iteration monotone for any number
    // of users.
    double beta = 1.0;
    double next = objective;
    CMat a_next = a;
    for (int back = 0; back < 40; ++back) {
      for (int u = 0; u < num_users; ++u)
        trial_powers[u] = (1.0 - beta) * powers[u] + beta * filled[u];
      next = logdet_objective(channels, trial_powers, a_next);
      if (next >= objective) break;
      beta *= 0.5;
    }
    if (next < objective - 1e-9) {
      result.monotone = false;
      break;
    }
    double delta = next - objective;
    powers = trial_powers;
    a = a_next;
    objective = next;
    if (delta < cfg.tol) {
      converged = true;
      break;
    }
  }
  result.converged = converged && result.monotone;
  result.sum_rate = objective;
  for (double p : powers)
    if (p > 1e-9 * cfg.power) ++result.active_users;
  return result;
}

}  // namespace sim
