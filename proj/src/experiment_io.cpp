#include "sim/experiment_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sim {

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Pu2rc: return "pu2rc";
    case Algorithm::ZfSdma: return "zf_sdma";
    case Algorithm::Dpc: return "dpc";
  }
  throw std::logic_error("algorithm_name: unknown algorithm");
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "pu2rc") return Algorithm::Pu2rc;
  if (name == "zf_sdma") return Algorithm::ZfSdma;
  if (name == "dpc") return Algorithm::Dpc;
  throw std::invalid_argument("invalid field: algorithm (got '" + name + "')");
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Normal: return "normal";
    case Regime::InterferenceLimited: return "interference_limited";
    case Regime::NoiseLimited: return "noise_limited";
  }
  throw std::logic_error("regime_name: unknown regime");
}

Regime regime_from_name(const std::string& name) {
  if (name == "normal") return Regime::Normal;
  if (name == "interference_limited") return Regime::InterferenceLimited;
  if (name == "noise_limited") return Regime::NoiseLimited;
  throw std::invalid_argument("invalid field: regime (got '" + name + "')");
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  return nlohmann::json{{"algorithm", algorithm_name(cfg.algorithm)},
                        {"regime", regime_name(cfg.regime)},
                        {"nt", cfg.nt},
                        {"num_bases", cfg.num_bases},
                        {"codebook_bits", cfg.codebook_bits},
                        {"snr_db", cfg.snr_db},
                        {"user_grid", cfg.user_grid},
                        {"trials", cfg.trials},
                        {"seed", cfg.seed},
                        {"sinr_feedback_bits", cfg.sinr_feedback_bits},
                        {"shared_rvq_codebook", cfg.shared_rvq_codebook},
                        {"zf_ortho_threshold", cfg.zf_ortho_threshold}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
    if (j.contains("regime")) cfg.regime = regime_from_name(j.at("regime").get<std::string>());
    cfg.nt = j.at("nt").get<int>();
    if (j.contains("num_bases")) cfg.num_bases = j.at("num_bases").get<int>();
    if (j.contains("codebook_bits")) cfg.codebook_bits = j.at("codebook_bits").get<int>();
    cfg.snr_db = j.at("snr_db").get<double>();
    cfg.user_grid = j.at("user_grid").get<std::vector<int>>();
    cfg.trials = j.at("trials").get<int>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("sinr_feedback_bits"))
      cfg.sinr_feedback_bits = j.at("sinr_feedback_bits").get<int>();
    if (j.contains("shared_rvq_codebook"))
      cfg.shared_rvq_codebook = j.at("shared_rvq_codebook").get<bool>();
    if (j.contains("zf_ortho_threshold"))
      cfg.zf_ortho_threshold = j.at("zf_ortho_threshold").get<double>();
  } catch (const nlohmann::json::out_of_range& e) {
    throw std::invalid_argument(std::string("invalid field: ") + e.what());
  } catch (const nlohmann::json::type_error& e) {
    throw std::invalid_argument(std::string("invalid field: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void write_curve_csv(const std::string& path, const std::vector<CurvePoint>& curve) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw std::runtime_error("write_curve_csv: cannot open " + path);
  out << "U,mean_bps_hz,stderr,mean_scheduled,n_trials\n";
  char buf[160];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof(buf), "%d,%.10g,%.10g,%.10g,%d\n", p.users, p.mean,
                  p.std_err, p.mean_scheduled, p.n_trials);
    out << buf;
  }
}

std::string build_version() {
#ifdef SIM_BUILD_VERSION
  return SIM_BUILD_VERSION;
#else
  return "unknown";
#endif
}

}  // namespace sim
