// Scenario and sweep files: JSON, field names mirror the config structs
// exactly. Unknown keys are an error (fail-closed), so typos cannot silently
// fall back to defaults.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgsim/domain.hpp"

namespace sgsim {

struct SweepSpec {
  enum class Variable { TotalDevices, ReservedPrbs };
  Variable variable = Variable::TotalDevices;
  std::vector<std::uint32_t> values;               // strictly increasing
  std::vector<std::uint32_t> reserved_prbs_values; // optional cross product for device sweeps
  ScenarioConfig base;
  std::uint32_t repetitions = 5;
  std::string output_dir = "sweep_out";
};

// Throws std::runtime_error with a descriptive message on parse errors,
// unknown keys, or type mismatches. ratio_r accepts either a number or a
// fraction string such as "1/10".
ScenarioConfig parse_scenario_json(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);

SweepSpec parse_sweep_json(const std::string& text, const std::string& base_dir);
SweepSpec load_sweep_file(const std::string& path);

std::string scenario_to_json(const ScenarioConfig& cfg);

}  // namespace sgsim
