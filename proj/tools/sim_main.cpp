// Command-line front end for the PU2RC link-level simulator.
//
//   sim run-preset <name> [--seed S] [--trials T] [--out DIR]
//   sim run --config FILE [--out DIR]
//   sim analytics ccdf --nt N --m M
//   sim analytics elog-bounds --nt N --m M
//
// SIM_THREADS caps the Monte Carlo worker count.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "sim/experiment_io.hpp"
#include "sim/presets.hpp"

int main(int argc, char** argv) {
  CLI::App app{"PU2RC limited-feedback SDMA simulator"};
  app.require_subcommand(1);

  std::string preset_name;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int trials = -1;
  auto* run_preset_cmd = app.add_subcommand("run-preset", "Run a figure preset");
  run_preset_cmd->add_option("name", preset_name, "Preset name")->required();
  run_preset_cmd->add_option("--seed", seed, "Random seed");
  run_preset_cmd->add_option("--trials", trials, "Override trials per grid point");
  run_preset_cmd->add_option("--out", out_dir, "Output directory");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run a custom experiment config");
  run_cmd->add_option("--config", config_path, "JSON config file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");

  auto* analytics_cmd = app.add_subcommand("analytics", "Closed-form evaluators");
  analytics_cmd->require_subcommand(1);
  int nt = 2;
  int num_bases = 1;
  auto* ccdf_cmd = analytics_cmd->add_subcommand("ccdf", "Quantization-error CCDF");
  ccdf_cmd->add_option("--nt", nt, "Transmit antennas")->required();
  ccdf_cmd->add_option("--m", num_bases, "Orthonormal bases")->required();
  auto* elog_cmd = analytics_cmd->add_subcommand("elog-bounds", "Bounds on E[-log eps]");
  elog_cmd->add_option("--nt", nt, "Transmit antennas")->required();
  elog_cmd->add_option("--m", num_bases, "Orthonormal bases")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_preset_cmd->parsed()) {
      std::optional<int> trials_override;
      if (trials > 0) trials_override = trials;
      auto files = sim::run_preset(preset_name, seed, trials_override, out_dir);
      for (const auto& f : files) std::cout << f << "\n";
      return 0;
    }
    if (run_cmd->parsed()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "cannot open config file: " << config_path << "\n";
        return 1;
      }
      nlohmann::json j;
      in >> j;
      sim::ExperimentConfig cfg = sim::config_from_json(j);
      auto files = sim::run_custom(cfg, out_dir);
      for (const auto& f : files) std::cout << f << "\n";
      return 0;
    }
    if (ccdf_cmd->parsed()) {
      std::printf("delta,ccdf\n");
      for (int i = 0; i <= 50; ++i) {
        double delta = i / 100.0;
        std::printf("%.2f,%.10g\n", delta, sim::ccdf_eps(delta, nt, num_bases));
      }
      return 0;
    }
    if (elog_cmd->parsed()) {
      sim::LogEpsBounds b = sim::elog_eps_bounds(nt, num_bases);
      std::printf("lower,upper\n%.10g,%.10g\n", b.lower, b.upper);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
