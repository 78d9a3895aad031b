#include "sgsim/compare.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sgsim/metrics.hpp"

namespace sgsim {

std::optional<double> capacity_at_target(const ReliabilityCurve& curve, double target) {
  if (curve.empty()) return std::nullopt;
  std::optional<double> capacity;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].reliability >= target) {
      capacity = static_cast<double>(curve[i].devices);
      // Interpolate into the following below-target segment, if any.
      if (i + 1 < curve.size() && curve[i + 1].reliability < target) {
        const double n0 = curve[i].devices, n1 = curve[i + 1].devices;
        const double r0 = curve[i].reliability, r1 = curve[i + 1].reliability;
        capacity = n0 + (target - r0) / (r1 - r0) * (n1 - n0);
      }
    }
  }
  return capacity;
}

CompareReport compare_capacity(const std::map<TrafficClass, ReliabilityCurve>& scheme_a,
                               const std::map<TrafficClass, ReliabilityCurve>& scheme_b,
                               const std::map<TrafficClass, double>& targets) {
  CompareReport report;
  for (const auto& [cls, target] : targets) {
    ClassCapacity c;
    c.traffic_class = cls;
    c.target = target;
    if (auto it = scheme_a.find(cls); it != scheme_a.end())
      c.capacity_a = capacity_at_target(it->second, target);
    if (auto it = scheme_b.find(cls); it != scheme_b.end())
      c.capacity_b = capacity_at_target(it->second, target);
    if (c.capacity_a && c.capacity_b && *c.capacity_a > 0.0) {
      c.ratio = *c.capacity_b / *c.capacity_a;
    } else if (!c.capacity_b) {
      c.ratio = 0.0;
      report.note += std::string(to_string(cls)) + ": scheme B never meets the target (outage). ";
    }
    report.classes.push_back(c);
  }
  return report;
}

std::map<TrafficClass, ReliabilityCurve> reliability_curves_from_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  if (line != csv_header()) throw std::runtime_error("unexpected CSV header: " + line);

  // (class, N) -> sum/count of reliability over repetitions
  std::map<std::pair<int, std::uint32_t>, std::pair<double, std::uint32_t>> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() < 15) throw std::runtime_error("short CSV row at line " + std::to_string(line_no));
    const auto cls = traffic_class_from_string(f[4]);
    if (!cls) throw std::runtime_error("unknown class in CSV at line " + std::to_string(line_no));
    const auto n = static_cast<std::uint32_t>(std::stoul(f[1]));
    const double reliability = std::stod(f[7]);
    auto& cell = cells[{static_cast<int>(*cls), n}];
    cell.first += reliability;
    cell.second += 1;
  }

  std::map<TrafficClass, ReliabilityCurve> curves;
  for (const auto& [key, sum_count] : cells) {
    curves[static_cast<TrafficClass>(key.first)].push_back(
        ReliabilityPoint{key.second, sum_count.first / sum_count.second});
  }
  for (auto& [cls, curve] : curves)
    std::sort(curve.begin(), curve.end(),
              [](const ReliabilityPoint& a, const ReliabilityPoint& b) { return a.devices < b.devices; });
  return curves;
}

}  // namespace sgsim
