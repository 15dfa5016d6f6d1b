#include "sim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "sim/scheduler.hpp"

namespace sim {
namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr int kPilotTrials = 10000;

struct TrialOutcome {
  double rate_nats = 0.0;
  double scheduled = 0.0;
};

TrialOutcome pu2rc_trial(const ExperimentConfig& cfg, int users, RandomStream& rs,
                         const SinrQuantizer* quantizer,
                         std::vector<double>* sinr_sink) {
  const double gamma = std::pow(10.0, cfg.snr_db / 10.0);
  Codebook cb = make_multibasis_codebook(rs, cfg.nt, cfg.num_bases);
  std::vector<FeedbackReport> reports;
  reports.reserve(users);
  std::vector<double> true_sinrs(users);
  for (int u = 0; u < users; ++u) {
    ChannelRealization cr = decompose(sample_gaussian_vec(rs, cfg.nt));
    ShapeQuantization q = quantize_shape(cr.shape, cb);
    double s = sinr(gamma, cr.power, q.eps, cfg.regime);
    true_sinrs[u] = s;
    if (sinr_sink) sinr_sink->push_back(s);
    double fed_back = quantizer ? quantize_sinr(s, *quantizer) : s;
    reports.push_back({u, q.codeword_index, q.eps, fed_back});
  }
  ScheduleDecision decision =
      schedule(reports, cb, quantizer ? &true_sinrs : nullptr);
  return {decision.sum_rate, static_cast<double>(count_scheduled(decision))};
}

TrialOutcome zf_trial(const ExperimentConfig& cfg, int users, RandomStream& rs) {
  ZfConfig zf;
  zf.ortho_threshold = cfg.zf_ortho_threshold;
  zf.codebook_bits = cfg.codebook_bits;
  zf.gamma = std::pow(10.0, cfg.snr_db / 10.0);
  zf.shared_codebook = cfg.shared_rvq_codebook;
  std::vector<ChannelRealization> channels;
  channels.reserve(users);
  for (int u = 0; u < users; ++u)
    channels.push_back(decompose(sample_gaussian_vec(rs, cfg.nt)));
  ZfResult result = zf_schedule_and_rate(channels, zf, rs);
  return {result.sum_rate, static_cast<double>(result.users.size())};
}

TrialOutcome dpc_trial(const ExperimentConfig& cfg, int users, RandomStream& rs) {
  DpcConfig dpc;
  dpc.power = cfg.nt * std::pow(10.0, cfg.snr_db / 10.0);
  std::vector<ChannelRealization> channels;
  channels.reserve(users);
  for (int u = 0; u < users; ++u)
    channels.push_back(decompose(sample_gaussian_vec(rs, cfg.nt)));
  DpcResult result = dpc_sum_capacity(channels, dpc);
  return {result.sum_rate, static_cast<double>(result.active_users)};
}

TrialOutcome run_trial(const ExperimentConfig& cfg, int users, int trial,
                       const SinrQuantizer* quantizer) {
  RandomStream rs(cfg.seed, trial_stream_id(users, trial, false));
  switch (cfg.algorithm) {
    case Algorithm::Pu2rc:
      return pu2rc_trial(cfg, users, rs, quantizer, nullptr);
    case Algorithm::ZfSdma:
      return zf_trial(cfg, users, rs);
    case Algorithm::Dpc:
      return dpc_trial(cfg, users, rs);
  }
  throw std::logic_error("run_trial: unknown algorithm");
}

// Pilot run collecting true SINR samples to size the scalar quantizer.
SinrQuantizer build_pilot_quantizer(const ExperimentConfig& cfg, int users) {
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(kPilotTrials) * users);
  for (int t = 0; t < kPilotTrials; ++t) {
    RandomStream rs(cfg.seed, trial_stream_id(users, t, true));
    pu2rc_trial(cfg, users, rs, nullptr, &samples);
  }
  return build_sinr_quantizer(cfg.sinr_feedback_bits, std::move(samples));
}

}  // namespace

std::uint64_t trial_stream_id(int users, int trial, bool pilot) {
  std::uint64_t id = (static_cast<std::uint64_t>(users) << 32) |
                     static_cast<std::uint64_t>(static_cast<std::uint32_t>(trial));
  if (pilot) id |= 1ULL << 63;
  return id;
}

void ExperimentConfig::validate() const {
  if (nt < 1) throw std::invalid_argument("invalid field: nt (must be >= 1)");
  if (user_grid.empty()) throw std::invalid_argument("invalid field: user_grid (empty)");
  int prev = 0;
  for (int u : user_grid) {
    if (u <= prev)
      throw std::invalid_argument("invalid field: user_grid (must be positive ascending)");
    prev = u;
  }
  if (trials < 1) throw std::invalid_argument("invalid field: trials (must be >= 1)");
  if (algorithm == Algorithm::Pu2rc && num_bases < 1)
    throw std::invalid_argument("invalid field: num_bases (must be >= 1)");
  if (algorithm == Algorithm::ZfSdma && (codebook_bits < 1 || codebook_bits > 30))
    throw std::invalid_argument("invalid field: codebook_bits (must be in [1, 30])");
  if (sinr_feedback_bits < 0 || sinr_feedback_bits > 16)
    throw std::invalid_argument("invalid field: sinr_feedback_bits (must be in [0, 16])");
  if (!std::isfinite(snr_db)) throw std::invalid_argument("invalid field: snr_db (not finite)");
  if (zf_ortho_threshold <= 0.0 || zf_ortho_threshold > 1.0)
    throw std::invalid_argument("invalid field: zf_ortho_threshold (must be in (0, 1])");
}

int thread_budget() {
  if (const char* env = std::getenv("SIM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double tree_sum(const std::vector<double>& values, std::size_t begin, std::size_t end) {
  if (end - begin <= 4) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += values[i];
    return sum;
  }
  std::size_t mid = begin + (end - begin) / 2;
  return tree_sum(values, begin, mid) + tree_sum(values, mid, end);
}

std::vector<CurvePoint> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<CurvePoint> curve;
  curve.reserve(cfg.user_grid.size());
  const int workers = std::max(1, std::min(thread_budget(), cfg.trials));

  for (int users : cfg.user_grid) {
    SinrQuantizer quantizer;
    const bool use_quantizer =
        cfg.algorithm == Algorithm::Pu2rc && cfg.sinr_feedback_bits > 0;
    if (use_quantizer) quantizer = build_pilot_quantizer(cfg, users);

    std::vector<double> rates(cfg.trials);
    std::vector<double> scheduled(cfg.trials);
    auto worker = [&](int first, int last) {
      for (int t = first; t < last; ++t) {
        TrialOutcome out = run_trial(cfg, users, t, use_quantizer ? &quantizer : nullptr);
        rates[t] = out.rate_nats;
        scheduled[t] = out.scheduled;
      }
    };
    if (workers == 1) {
      worker(0, cfg.trials);
    } else {
      std::vector<std::thread> pool;
      int chunk = (cfg.trials + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        int first = w * chunk;
        int last = std::min(cfg.trials, first + chunk);
        if (first < last) pool.emplace_back(worker, first, last);
      }
      for (auto& th : pool) th.join();
    }

    // Fixed-order reduction keeps results identical across thread counts.
    double mean_nats = tree_sum(rates, 0, rates.size()) / cfg.trials;
    std::vector<double> sq(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t) {
      double d = rates[t] - mean_nats;
      sq[t] = d * d;
    }
    double var = cfg.trials > 1 ? tree_sum(sq, 0, sq.size()) / (cfg.trials - 1) : 0.0;

    CurvePoint point;
    point.users = users;
    point.mean = mean_nats / kLn2;
    point.std_err = std::sqrt(var / cfg.trials) / kLn2;
    point.mean_scheduled = tree_sum(scheduled, 0, scheduled.size()) / cfg.trials;
    point.n_trials = cfg.trials;
    curve.push_back(point);
  }
  return curve;
}

std::vector<double> reference_curve(Regime regime, int nt,
                                    const std::vector<int>& user_grid) {
  std::vector<double> values;
  values.reserve(user_grid.size());
  for (int users : user_grid) {
    if (regime == Regime::InterferenceLimited) {
      if (users < 1) throw std::invalid_argument("reference_curve: U must be >= 1");
      values.push_back(static_cast<double>(nt) / (nt - 1) * std::log(users));
    } else {
      if (users < 3)
        throw std::invalid_argument("reference_curve: U must be >= 3 for log log scaling");
      values.push_back(nt * std::log(std::log(users)));
    }
  }
  return values;
}

double estimate_slope(const std::vector<CurvePoint>& points, SlopeAxis axis) {
  const std::size_t n = points.size();
  const std::size_t start = n / 2;
  if (n - start < 5)
    throw std::invalid_argument("estimate_slope: need >= 5 points in the upper half");
  std::vector<double> xs, ys;
  for (std::size_t i = start; i < n; ++i) {
    double u = points[i].users;
    double x = axis == SlopeAxis::LogU ? std::log(u) : std::log(std::log(u));
    if (!std::isfinite(x))
      throw std::invalid_argument("estimate_slope: abscissa undefined at small U");
    xs.push_back(x);
    ys.push_back(points[i].mean);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx < 1e-12) throw std::invalid_argument("estimate_slope: degenerate abscissa spread");
  return sxy / sxx;
}

}  // namespace sim
