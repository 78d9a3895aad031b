// Capacity comparison between two access schemes: for each guaranteed class,
// the largest device population whose reliability still meets the class
// target, interpolated linearly between sweep points, and the ratio between
// the two schemes.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgsim/domain.hpp"

namespace sgsim {

// One (N, reliability) curve point, averaged over repetitions.
struct ReliabilityPoint {
  std::uint32_t devices = 0;
  double reliability = 0.0;
};

using ReliabilityCurve = std::vector<ReliabilityPoint>;  // sorted by devices

// Largest N with reliability >= target along the curve, linearly interpolated
// on the segment where the curve crosses the target. nullopt when the curve
// never meets the target.
std::optional<double> capacity_at_target(const ReliabilityCurve& curve, double target);

struct ClassCapacity {
  TrafficClass traffic_class = TrafficClass::Upmu;
  double target = 0.0;
  std::optional<double> capacity_a;  // first scheme (e.g. legacy)
  std::optional<double> capacity_b;  // second scheme (e.g. priority)
  double ratio = 0.0;                // b / a; 0 when b never meets the target
};

struct CompareReport {
  std::vector<ClassCapacity> classes;
  std::string note;
};

// Curves keyed by class, same sweep axis for both schemes.
CompareReport compare_capacity(const std::map<TrafficClass, ReliabilityCurve>& scheme_a,
                               const std::map<TrafficClass, ReliabilityCurve>& scheme_b,
                               const std::map<TrafficClass, double>& targets);

// Parses sweep CSV rows (the stable schema written by the metrics module)
// into per-class reliability curves, averaging repetitions per N. Throws on
// malformed input.
std::map<TrafficClass, ReliabilityCurve> reliability_curves_from_csv(const std::string& csv_text);

}  // namespace sgsim
