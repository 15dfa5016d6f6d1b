#include "sim/presets.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sim/experiment_io.hpp"

namespace sim {
namespace {

constexpr double kLn2 = 0.6931471805599453;

std::vector<int> grid_small_large(int small_to, int large_to, int large_step) {
  std::vector<int> grid;
  for (int u = 2; u <= small_to; u += 2) grid.push_back(u);
  for (int u = small_to + large_step; u <= large_to; u += large_step) grid.push_back(u);
  return grid;
}

ExperimentConfig base_config(std::uint64_t seed, std::optional<int> trials_override) {
  ExperimentConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials_override.value_or(10000);
  return cfg;
}

Preset preset_fig2(std::uint64_t seed, std::optional<int> trials) {
  // Throughput vs U at SNR 0/5/30 dB, nt=2, N=16, with asymptotic references.
  Preset p;
  p.name = "fig2";
  std::vector<int> grid = {3,  5,  8,  12, 18, 26, 36, 50,
                           68, 88, 110, 140};
  for (double snr : {0.0, 5.0, 30.0}) {
    ExperimentConfig cfg = base_config(seed, trials);
    cfg.algorithm = Algorithm::Pu2rc;
    cfg.nt = 2;
    cfg.num_bases = 8;
    cfg.snr_db = snr;
    cfg.user_grid = grid;
    p.curves.emplace_back("pu2rc_snr" + std::to_string(static_cast<int>(snr)) + "db", cfg);
  }
  p.references.push_back({"ref_log_u", Regime::InterferenceLimited, 2, grid});
  p.references.push_back({"ref_loglog_u", Regime::Normal, 2, grid});
  return p;
}

Preset preset_fig3(std::uint64_t seed, std::optional<int> trials) {
  // PU2RC vs ZF-SDMA, nt=4, SNR 5 dB, codebook sizes N=16 and N=64.
  Preset p;
  p.name = "fig3";
  std::vector<int> grid = grid_small_large(40, 200, 20);
  for (int n : {16, 64}) {
    ExperimentConfig pu = base_config(seed, trials);
    pu.algorithm = Algorithm::Pu2rc;
    pu.nt = 4;
    pu.num_bases = n / 4;
    pu.snr_db = 5.0;
    pu.user_grid = grid;
    p.curves.emplace_back("pu2rc_n" + std::to_string(n), pu);

    ExperimentConfig zf = base_config(seed, trials);
    zf.algorithm = Algorithm::ZfSdma;
    zf.nt = 4;
    zf.codebook_bits = n == 16 ? 4 : 6;
    zf.snr_db = 5.0;
    zf.user_grid = grid;
    p.curves.emplace_back("zf_sdma_n" + std::to_string(n), zf);
  }
  return p;
}

Preset preset_fig4(std::uint64_t seed, std::optional<int> trials) {
  // Average scheduled-user counts; data lives in the mean_scheduled column.
  Preset p = preset_fig3(seed, trials);
  p.name = "fig4";
  return p;
}

Preset preset_fig5(std::uint64_t seed, std::optional<int> trials) {
  // Throughput vs SNR at U in {20, 40, 80}, nt=4, N=64. One curve per
  // (algorithm, SNR); each CSV row is one U.
  Preset p;
  p.name = "fig5";
  for (int snr = 0; snr <= 20; snr += 2) {
    ExperimentConfig pu = base_config(seed, trials);
    pu.algorithm = Algorithm::Pu2rc;
    pu.nt = 4;
    pu.num_bases = 16;
    pu.snr_db = snr;
    pu.user_grid = {20, 40, 80};
    p.curves.emplace_back("pu2rc_snr" + std::to_string(snr) + "db", pu);

    ExperimentConfig zf = base_config(seed, trials);
    zf.algorithm = Algorithm::ZfSdma;
    zf.nt = 4;
    zf.codebook_bits = 6;
    zf.snr_db = snr;
    zf.user_grid = {20, 40, 80};
    p.curves.emplace_back("zf_sdma_snr" + std::to_string(snr) + "db", zf);
  }
  return p;
}

Preset preset_fig6(std::uint64_t seed, std::optional<int> trials) {
  // PU2RC for N in {2,4,8,16} against the DPC upper bound; nt=2, SNR 5 dB.
  Preset p;
  p.name = "fig6";
  std::vector<int> grid = {2, 5, 10, 20, 40, 80, 120, 160, 200};
  for (int n : {2, 4, 8, 16}) {
    ExperimentConfig cfg = base_config(seed, trials);
    cfg.algorithm = Algorithm::Pu2rc;
    cfg.nt = 2;
    cfg.num_bases = n / 2;
    cfg.snr_db = 5.0;
    cfg.user_grid = grid;
    p.curves.emplace_back("pu2rc_n" + std::to_string(n), cfg);
  }
  ExperimentConfig dpc = base_config(seed, trials);
  dpc.algorithm = Algorithm::Dpc;
  dpc.nt = 2;
  dpc.snr_db = 5.0;
  dpc.user_grid = grid;
  p.curves.emplace_back("dpc", dpc);
  return p;
}

Preset preset_fig7(std::uint64_t seed, std::optional<int> trials) {
  // SINR scalar quantization: perfect feedback vs 1-4 bits; nt=4, N=16.
  Preset p;
  p.name = "fig7";
  std::vector<int> grid = {5, 10, 20, 40, 70, 100, 140, 200};
  for (int bits : {0, 1, 2, 3, 4}) {
    ExperimentConfig cfg = base_config(seed, trials);
    cfg.algorithm = Algorithm::Pu2rc;
    cfg.nt = 4;
    cfg.num_bases = 4;
    cfg.snr_db = 5.0;
    cfg.sinr_feedback_bits = bits;
    cfg.user_grid = grid;
    p.curves.emplace_back(bits == 0 ? "perfect_sinr" : "sinr_" + std::to_string(bits) + "bit",
                          cfg);
  }
  return p;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
}

Preset make_preset(const std::string& name, std::uint64_t seed,
                   std::optional<int> trials_override) {
  if (name == "fig2") return preset_fig2(seed, trials_override);
  if (name == "fig3") return preset_fig3(seed, trials_override);
  if (name == "fig4") return preset_fig4(seed, trials_override);
  if (name == "fig5") return preset_fig5(seed, trials_override);
  if (name == "fig6") return preset_fig6(seed, trials_override);
  if (name == "fig7") return preset_fig7(seed, trials_override);
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
}

namespace {

std::vector<std::string> emit(const std::string& stem,
                              const std::vector<std::pair<std::string, ExperimentConfig>>& curves,
                              const std::vector<Preset::Reference>& references,
                              const std::string& out_dir, std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto started = std::chrono::steady_clock::now();

  std::vector<std::string> written;
  nlohmann::json manifest;
  manifest["preset"] = stem;
  manifest["seed"] = seed;
  manifest["build"] = build_version();
  manifest["curves"] = nlohmann::json::object();

  for (const auto& [curve_name, cfg] : curves) {
    std::vector<CurvePoint> curve = run_experiment(cfg);
    std::string path = (fs::path(out_dir) / (stem + "_" + curve_name + ".csv")).string();
    write_curve_csv(path, curve);
    written.push_back(path);
    manifest["curves"][curve_name] = config_to_json(cfg);
  }
  for (const auto& ref : references) {
    std::vector<double> nats = reference_curve(ref.regime, ref.nt, ref.user_grid);
    std::vector<CurvePoint> curve;
    for (std::size_t i = 0; i < nats.size(); ++i)
      curve.push_back({ref.user_grid[i], nats[i] / kLn2, 0.0, 0.0, 0});
    std::string path = (fs::path(out_dir) / (stem + "_" + ref.name + ".csv")).string();
    write_curve_csv(path, curve);
    written.push_back(path);
  }

  manifest["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::string manifest_path = (fs::path(out_dir) / (stem + "_manifest.json")).string();
  std::ofstream out(manifest_path, std::ios::binary);
  out << manifest.dump(2) << "\n";
  written.push_back(manifest_path);
  return written;
}

}  // namespace

std::vector<std::string> run_preset(const std::string& name, std::uint64_t seed,
                                    std::optional<int> trials_override,
                                    const std::string& out_dir) {
  Preset p = make_preset(name, seed, trials_override);
  return emit(p.name, p.curves, p.references, out_dir, seed);
}

std::vector<std::string> run_custom(const ExperimentConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  return emit("custom", {{algorithm_name(cfg.algorithm), cfg}}, {}, out_dir, cfg.seed);
}

}  // namespace sim
