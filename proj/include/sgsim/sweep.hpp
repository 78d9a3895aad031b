// Sweep orchestration: runs a scenario grid with derived seeds and collects
// one summary per (point, reserved-PRB variant, repetition).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgsim/metrics.hpp"
#include "sgsim/scenario_io.hpp"

namespace sgsim {

// Seed for one sweep run. Depends on the point index and repetition but not
// on the reserved-PRB variant, so PRB-budget comparisons share their draws.
inline std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t point_index,
                                std::uint32_t repetition) {
  return base_seed + static_cast<std::uint64_t>(point_index) * 10007 + repetition;
}

struct SweepPointResult {
  std::size_t point_index = 0;
  std::uint32_t value = 0;          // swept variable value
  std::uint32_t reserved_prbs = 0;
  std::uint32_t repetition = 0;
  MetricsSummary summary;
  bool failed = false;
  std::string error;
};

// Runs every (value, reserved variant, repetition) combination. jobs > 1 runs
// points on a small thread pool; each simulation stays single-threaded and
// results come back ordered, so output is identical for any job count.
// Failures are recorded per point and do not stop the sweep.
std::vector<SweepPointResult> run_sweep(const SweepSpec& spec, unsigned jobs = 1);

ScenarioConfig scenario_for_point(const SweepSpec& spec, std::size_t point_index,
                                  std::uint32_t reserved_prbs, std::uint32_t repetition);

}  // namespace sgsim
