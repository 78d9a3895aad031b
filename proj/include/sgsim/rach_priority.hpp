// Prioritized contention-frame random access.
//
// Time is partitioned into contention frames of half the shortest guaranteed
// latency deadline. Each frame opens with one estimation slot per guaranteed
// class, in which the class's active devices activate a random preamble; the
// base station inverts the observed preamble occupancy into a load estimate
// and sizes the following serving phases (highest priority first) so each
// class meets its access-reliability target. Whatever is left over is handed
// to best-effort traffic.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sgsim/dim_table.hpp"
#include "sgsim/domain.hpp"

namespace sgsim {

// Occupancy maximum-likelihood inversion: given K of M preambles activated,
// the load whose expected occupancy matches K is ln(1-K/M)/ln(1-1/M).
// K == M is beyond the estimator's range and saturates to 3*M, which makes
// the dimensioning request the maximal serving allocation.
std::uint32_t estimate_load(std::uint32_t activated_preambles, std::uint32_t preambles);

constexpr std::uint32_t estimator_saturation_load(std::uint32_t preambles) { return 3 * preambles; }

struct ServingPhase {
  std::uint32_t start_slot = 0;   // frame-relative RAO index
  std::uint32_t slot_count = 0;
  std::uint32_t requested = 0;    // what dimensioning asked for
  bool degraded = false;          // allocated less than requested
  bool saturated_estimate = false;
};

struct ContentionFramePlan {
  double frame_duration = 0.0;    // seconds; half the shortest guaranteed deadline
  std::uint32_t rao_slots_total = 0;
  std::map<TrafficClass, std::uint32_t> estimation_slots;  // class -> slot index
  std::map<TrafficClass, ServingPhase> serving;
  std::map<TrafficClass, std::uint32_t> estimated_load;
  std::uint32_t best_effort_start = 0;
  std::uint32_t best_effort_slots = 0;
  bool outage = false;            // highest class could not be dimensioned

  std::uint32_t allocated_slots(TrafficClass c) const {
    std::uint32_t n = estimation_slots.count(c) ? 1 : 0;
    if (auto it = serving.find(c); it != serving.end()) n += it->second.slot_count;
    return n;
  }
};

// Frame layout from per-class load estimates. `classes` must contain the
// guaranteed classes; allocation walks them in priority order. Degradation
// and outage are reported states, not errors.
ContentionFramePlan build_frame(const std::map<TrafficClass, std::uint32_t>& loads,
                                const CellConfig& cell,
                                const std::vector<DeviceClassSpec>& classes,
                                const DimensioningTable& upmu_table,
                                const DimensioningTable& pmcsm_table);

// Frame duration implied by a class table: half the shortest deadline among
// classes that carry a reliability target.
double contention_frame_duration(const std::vector<DeviceClassSpec>& classes);

}  // namespace sgsim
