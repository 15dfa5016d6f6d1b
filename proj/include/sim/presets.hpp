#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sim/montecarlo.hpp"

namespace sim {

struct Preset {
  std::string name;
  std::vector<std::pair<std::string, ExperimentConfig>> curves;
  // Asymptotic scaling references to emit alongside the simulated curves:
  // (curve name, regime, nt, user grid).
  struct Reference {
    std::string name;
    Regime regime = Regime::Normal;
    int nt = 2;
    std::vector<int> user_grid;
  };
  std::vector<Reference> references;
};

std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name.
Preset make_preset(const std::string& name, std::uint64_t seed,
                   std::optional<int> trials_override);

/// Runs every curve of a preset, writing one CSV per curve plus a JSON
/// manifest into out_dir. Returns the written file paths.
std::vector<std::string> run_preset(const std::string& name, std::uint64_t seed,
                                    std::optional<int> trials_override,
                                    const std::string& out_dir);

/// As run_preset, for a single user-supplied config.
std::vector<std::string> run_custom(const ExperimentConfig& cfg,
                                    const std::string& out_dir);

}  // namespace sim
