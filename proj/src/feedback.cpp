#include "sim/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sim {

ChannelRealization decompose(const CVec& h) {
  double norm = h.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("decompose: zero channel vector");
  ChannelRealization cr;
  cr.h = h;
  cr.gain = norm;
  cr.shape = h / norm;
  cr.power = norm * norm;
  return cr;
}

Codebook make_multibasis_codebook(RandomStream& stream, int nt, int num_bases) {
  if (nt < 1 || num_bases < 1)
    throw std::invalid_argument("make_multibasis_codebook: nt and num_bases must be >= 1");
  Codebook cb;
  cb.kind = CodebookKind::MultiBasis;
  cb.num_bases = num_bases;
  cb.dim = nt;
  cb.vectors.reserve(static_cast<std::size_t>(nt) * num_bases);
  for (int m = 0; m < num_bases; ++m) {
    CMat basis = sample_haar_basis(stream, nt);
    for (int n = 0; n < nt; ++n) cb.vectors.push_back(basis.col(n));
  }
  return cb;
}

Codebook make_rvq_codebook(RandomStream& stream, int nt, int size) {
  if (nt < 1 || size < 1)
    throw std::invalid_argument("make_rvq_codebook: nt and size must be >= 1");
  Codebook cb;
  cb.kind = CodebookKind::Rvq;
  cb.num_bases = 0;
  cb.dim = nt;
  cb.vectors.reserve(size);
  for (int i = 0; i < size; ++i) {
    CVec g = sample_gaussian_vec(stream, nt);
    cb.vectors.push_back(g / g.norm());
  }
  return cb;
}

nlohmann::json codebook_to_json(const Codebook& cb) {
  nlohmann::json j;
  j["kind"] = cb.kind == CodebookKind::MultiBasis ? "multi_basis" : "rvq";
  j["dim"] = cb.dim;
  j["num_bases"] = cb.num_bases;
  nlohmann::json groups = nlohmann::json::array();
  int group_size = cb.kind == CodebookKind::MultiBasis ? cb.dim : cb.size();
  for (int start = 0; start < cb.size(); start += group_size) {
    nlohmann::json group = nlohmann::json::array();
    for (int i = start; i < start + group_size && i < cb.size(); ++i) {
      nlohmann::json vec = nlohmann::json::array();
      for (int k = 0; k < cb.vectors[i].size(); ++k)
        vec.push_back({cb.vectors[i](k).real(), cb.vectors[i](k).imag()});
      group.push_back(vec);
    }
    groups.push_back(group);
  }
  j["bases"] = groups;
  return j;
}

Codebook codebook_from_json(const nlohmann::json& j) {
  Codebook cb;
  cb.kind = j.at("kind") == "multi_basis" ? CodebookKind::MultiBasis : CodebookKind::Rvq;
  cb.dim = j.at("dim").get<int>();
  cb.num_bases = j.at("num_bases").get<int>();
  for (const auto& group : j.at("bases")) {
    for (const auto& vec : group) {
      CVec v(vec.size());
      for (std::size_t k = 0; k < vec.size(); ++k)
        v(static_cast<int>(k)) = {vec[k][0].get<double>(), vec[k][1].get<double>()};
      cb.vectors.push_back(std::move(v));
    }
  }
  return cb;
}

ShapeQuantization quantize_shape(const CVec& shape, const Codebook& cb) {
  if (cb.size() == 0) throw std::invalid_argument("quantize_shape: empty codebook");
  ShapeQuantization best;
  double best_corr = -1.0;
  for (int i = 0; i < cb.size(); ++i) {
    double corr = std::norm(inner_product(cb.vectors[i], shape));
    if (corr > best_corr) {
      best_corr = corr;
      best.codeword_index = i;
    }
  }
  best.eps = std::max(0.0, 1.0 - best_corr);
  return best;
}

double sinr(double gamma, double rho, double eps, Regime regime) {
  switch (regime) {
    case Regime::Normal:
      return gamma * rho * (1.0 - eps) / (1.0 + gamma * rho * eps);
    case Regime::InterferenceLimited:
      if (eps == 0.0) return std::numeric_limits<double>::infinity();
      return 1.0 / eps - 1.0;
    case Regime::NoiseLimited:
      return gamma * rho * (1.0 - eps);
  }
  throw std::logic_error("sinr: unknown regime");
}

SinrQuantizer build_sinr_quantizer(int bits, std::vector<double> pilot_sinrs) {
  if (bits < 1) throw std::invalid_argument("build_sinr_quantizer: bits must be >= 1");
  if (bits > 16) throw std::invalid_argument("build_sinr_quantizer: bits > 16");
  if (pilot_sinrs.empty())
    throw std::invalid_argument("build_sinr_quantizer: empty pilot run");
  // Empirical 99th percentile of the pilot samples sets the top level.
  std::size_t rank = static_cast<std::size_t>(0.99 * (pilot_sinrs.size() - 1));
  std::nth_element(pilot_sinrs.begin(), pilot_sinrs.begin() + rank, pilot_sinrs.end());
  double top = pilot_sinrs[rank];
  int count = 1 << bits;
  SinrQuantizer q;
  q.bits = bits;
  q.levels.resize(count);
  for (int i = 0; i < count; ++i)
    q.levels[i] = top * static_cast<double>(i) / (count - 1);
  return q;
}

double quantize_sinr(double x, const SinrQuantizer& q) {
  if (q.levels.empty()) throw std::invalid_argument("quantize_sinr: empty quantizer");
  double best = q.levels.front();
  double best_err = std::abs(x - best);
  for (double level : q.levels) {
    double err = std::abs(x - level);
    if (err < best_err) {  // strict: ties keep the lower level
      best_err = err;
      best = level;
    }
  }
  return best;
}

double ccdf_eps(double delta, int nt, int num_bases) {
  if (delta < 0.0 || delta > 0.5)
    throw std::invalid_argument("ccdf_eps: delta must lie in [0, 1/2]");
  double base = 1.0 - nt * std::pow(delta, nt - 1);
  if (base < 0.0) base = 0.0;
  return std::pow(base, num_bases);
}

LogEpsBounds elog_eps_bounds(int nt, int num_bases) {
  if (nt < 2) throw std::invalid_argument("elog_eps_bounds: nt must be >= 2");
  if (num_bases < 1) throw std::invalid_argument("elog_eps_bounds: num_bases must be >= 1");
  double p_alpha = 1.0 - std::pow(1.0 - nt * std::pow(2.0, -(nt - 1)), num_bases);
  double denom = (nt - 1) * p_alpha;
  LogEpsBounds b;
  b.lower = std::log(static_cast<double>(num_bases)) / denom +
            std::log(static_cast<double>(nt)) / (nt - 1);
  b.upper = b.lower + 1.0 / denom;
  return b;
}

}  // namespace sim
