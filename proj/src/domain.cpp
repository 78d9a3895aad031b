#include "sgsim/domain.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sgsim {

const char* to_string(TrafficClass c) {
  switch (c) {
    case TrafficClass::Upmu: return "UPMU";
    case TrafficClass::PmcSm: return "PMCSM";
    case TrafficClass::BestEffort: return "BEST_EFFORT";
  }
  return "?";
}

std::optional<TrafficClass> traffic_class_from_string(const std::string& s) {
  if (s == "UPMU") return TrafficClass::Upmu;
  if (s == "PMCSM") return TrafficClass::PmcSm;
  if (s == "BEST_EFFORT") return TrafficClass::BestEffort;
  return std::nullopt;
}

const char* to_string(SimMode m) {
  switch (m) {
    case SimMode::SchedulingOnly: return "SCHEDULING_ONLY";
    case SimMode::RachLegacy: return "RACH_LEGACY";
    case SimMode::RachPriority: return "RACH_PRIORITY";
    case SimMode::Combined: return "COMBINED";
  }
  return "?";
}

std::optional<SimMode> sim_mode_from_string(const std::string& s) {
  if (s == "SCHEDULING_ONLY") return SimMode::SchedulingOnly;
  if (s == "RACH_LEGACY") return SimMode::RachLegacy;
  if (s == "RACH_PRIORITY") return SimMode::RachPriority;
  if (s == "COMBINED") return SimMode::Combined;
  return std::nullopt;
}

std::vector<DeviceClassSpec> default_class_table() {
  std::vector<DeviceClassSpec> t(3);
  t[0].name = TrafficClass::Upmu;
  t[0].report_size = 560;
  t[0].report_interval = 1.0;
  t[0].latency_deadline = 1.0;
  t[0].reliability_target = 0.999;
  t[0].priority = 0;

  t[1].name = TrafficClass::PmcSm;
  t[1].report_size = 70;
  t[1].report_interval = 1.0;
  t[1].latency_deadline = 1.0;
  t[1].reliability_target = 0.95;
  t[1].priority = 1;

  t[2].name = TrafficClass::BestEffort;
  t[2].report_size = 70;
  t[2].report_interval = 1.0;
  t[2].latency_deadline = std::nullopt;
  t[2].reliability_target = std::nullopt;
  t[2].priority = 2;
  return t;
}

const DeviceClassSpec* find_class(const std::vector<DeviceClassSpec>& classes, TrafficClass c) {
  for (const auto& s : classes)
    if (s.name == c) return &s;
  return nullptr;
}

Population split_population(std::uint32_t total, double ratio_r) {
  if (total == 0) throw std::invalid_argument("split_population: total must be >= 1");
  if (!(ratio_r > 0.0)) throw std::invalid_argument("split_population: ratio must be positive");
  const double upmu_share = ratio_r / (1.0 + ratio_r);
  auto n_upmu = static_cast<std::uint32_t>(std::floor(static_cast<double>(total) * upmu_share + 0.5));
  if (n_upmu > total) n_upmu = total;
  return Population{n_upmu, total - n_upmu, 0};
}

namespace {

bool is_multiple(double value, double unit) {
  if (unit <= 0.0) return false;
  const double q = value / unit;
  return std::abs(q - std::round(q)) < 1e-6;
}

}  // namespace

std::vector<std::string> validate_scenario(const ScenarioConfig& cfg) {
  std::vector<std::string> v;
  auto bad = [&v](const std::string& msg) { v.push_back(msg); };

  if (!(cfg.ratio_r > 0.0)) bad("ratio_r must be positive");
  if (!(cfg.sim_duration > cfg.warmup)) bad("warmup exceeds duration");
  if (cfg.warmup < 0.0) bad("warmup must be non-negative");

  const auto& cell = cfg.cell;
  if (cell.reserved_prbs == 0) bad("reserved_prbs must be positive");
  if (cell.reserved_prbs > cell.total_prbs) bad("reserved exceeds total PRBs");
  if (cell.prbs_per_grant == 0 || cell.prbs_per_grant > cell.reserved_prbs)
    bad("prbs_per_grant must be in [1, reserved_prbs]");
  if (!(cell.tti > 0.0)) bad("tti must be positive");
  if (cell.preambles < 1) bad("preambles must be >= 1");
  if (!is_multiple(cell.rao_period, cell.tti)) bad("rao_period must be an integer multiple of tti");
  if (cell.max_arp_attempts < 1) bad("max_arp_attempts must be >= 1");
  if (cell.backoff_window < 0.0) bad("backoff_window must be non-negative");

  const auto& radio = cfg.radio;
  if (!(radio.cell_radius > kMinPlacementDistance)) bad("cell_radius must exceed the 35 m placement floor");
  if (!(radio.min_bits_per_grant >= 1.0)) bad("min_bits_per_grant must be >= 1");
  if (!(radio.max_spectral_eff > 0.0)) bad("max_spectral_eff must be positive");
  if (radio.data_res_per_grant == 0) bad("data_res_per_grant must be positive");
  if (!(radio.retx_factor > 0.0 && radio.retx_factor <= 1.0)) bad("retx_factor must be in (0, 1]");

  const auto classes = cfg.classes.empty() ? default_class_table() : cfg.classes;
  std::set<std::uint32_t> priorities;
  std::set<int> names;
  for (const auto& c : classes) {
    const std::string label = to_string(c.name);
    if (!names.insert(static_cast<int>(c.name)).second) bad("duplicate class entry: " + label);
    if (!priorities.insert(c.priority).second) bad("class priorities must be distinct (" + label + ")");
    if (c.name != TrafficClass::BestEffort && c.report_size == 0)
      bad("report_size must be positive for " + label);
    if (!(c.report_interval > 0.0)) bad("report_interval must be positive for " + label);
    if (c.latency_deadline && !(*c.latency_deadline > 0.0))
      bad("latency_deadline must be positive for " + label);
    if (c.reliability_target && !(*c.reliability_target > 0.0 && *c.reliability_target < 1.0))
      bad("reliability_target must be in (0,1) for " + label);
  }
  const auto* upmu = find_class(classes, TrafficClass::Upmu);
  const auto* pmcsm = find_class(classes, TrafficClass::PmcSm);
  const auto* be = find_class(classes, TrafficClass::BestEffort);
  if (!upmu || !pmcsm) bad("class table must define UPMU and PMCSM");
  if (upmu && pmcsm && !(upmu->priority < pmcsm->priority))
    bad("UPMU priority must be higher (smaller) than PMCSM");
  if (pmcsm && be && !(pmcsm->priority < be->priority))
    bad("PMCSM priority must be higher (smaller) than BEST_EFFORT");

  if (cfg.mode == SimMode::RachPriority || cfg.mode == SimMode::Combined) {
    // Contention frames span half the shortest guaranteed deadline and are
    // sliced into RAO slots, so the frame must land on the RAO grid.
    double min_deadline = 0.0;
    bool have = false;
    for (const auto& c : classes) {
      if (c.reliability_target && c.latency_deadline) {
        min_deadline = have ? std::min(min_deadline, *c.latency_deadline) : *c.latency_deadline;
        have = true;
      }
    }
    if (!have) {
      bad("priority mode needs at least one class with a reliability target and deadline");
    } else if (!is_multiple(min_deadline / 2.0, cell.rao_period)) {
      bad("half the shortest deadline must be an integer number of RAO periods");
    }
  }
  return v;
}

}  // namespace sgsim
