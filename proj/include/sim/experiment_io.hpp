#pragma once

#include <string>
#include <vector>

#include "sim/montecarlo.hpp"

#include "json.hpp"

namespace sim {

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);
std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Header: U,mean_bps_hz,stderr,mean_scheduled,n_trials. UTF-8, LF endings.
void write_curve_csv(const std::string& path, const std::vector<CurvePoint>& curve);

std::string build_version();

}  // namespace sim
