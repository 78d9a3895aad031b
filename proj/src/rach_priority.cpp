#include "sgsim/rach_priority.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgsim {

std::uint32_t estimate_load(std::uint32_t activated_preambles, std::uint32_t preambles) {
  if (preambles < 1) throw std::invalid_argument("estimate_load: need at least one preamble");
  if (activated_preambles > preambles)
    throw std::invalid_argument("estimate_load: more activated preambles than exist");
  if (activated_preambles == 0) return 0;
  if (activated_preambles == preambles) return estimator_saturation_load(preambles);
  const double m = preambles;
  const double n_hat =
      std::log(1.0 - activated_preambles / m) / std::log(1.0 - 1.0 / m);
  return static_cast<std::uint32_t>(std::llround(n_hat));
}

double contention_frame_duration(const std::vector<DeviceClassSpec>& classes) {
  double min_deadline = 0.0;
  bool have = false;
  for (const auto& c : classes) {
    if (c.reliability_target && c.latency_deadline) {
      min_deadline = have ? std::min(min_deadline, *c.latency_deadline) : *c.latency_deadline;
      have = true;
    }
  }
  if (!have) throw std::invalid_argument("no guaranteed class with a deadline");
  return min_deadline / 2.0;
}

ContentionFramePlan build_frame(const std::map<TrafficClass, std::uint32_t>& loads,
                                const CellConfig& cell,
                                const std::vector<DeviceClassSpec>& classes,
                                const DimensioningTable& upmu_table,
                                const DimensioningTable& pmcsm_table) {
  ContentionFramePlan plan;
  plan.frame_duration = contention_frame_duration(classes);
  plan.rao_slots_total =
      static_cast<std::uint32_t>(std::llround(plan.frame_duration / cell.rao_period));

  std::vector<const DeviceClassSpec*> guaranteed;
  for (const auto& c : classes)
    if (c.reliability_target) guaranteed.push_back(&c);
  std::sort(guaranteed.begin(), guaranteed.end(),
            [](const DeviceClassSpec* a, const DeviceClassSpec* b) { return a->priority < b->priority; });
  if (guaranteed.empty()) throw std::invalid_argument("build_frame: no guaranteed classes");
  if (plan.rao_slots_total < guaranteed.size())
    throw std::invalid_argument("build_frame: frame too short for estimation slots");

  std::uint32_t slot = 0;
  for (const auto* c : guaranteed) plan.estimation_slots[c->name] = slot++;

  std::uint32_t remaining = plan.rao_slots_total - slot;
  bool first = true;
  for (const auto* c : guaranteed) {
    const DimensioningTable& table =
        (c->name == TrafficClass::Upmu) ? upmu_table : pmcsm_table;
    const std::uint32_t n_hat = loads.count(c->name) ? loads.at(c->name) : 0;
    plan.estimated_load[c->name] = n_hat;

    ServingPhase phase;
    phase.start_slot = slot;
    phase.saturated_estimate = n_hat >= estimator_saturation_load(cell.preambles);
    if (phase.saturated_estimate) {
      // The estimator cannot see past ~3M devices; demand everything left.
      phase.requested = remaining;
    } else if (auto req = table.required_slots(n_hat)) {
      phase.requested = *req;
    } else {
      phase.requested = remaining + 1;  // known to exceed anything available
    }
    phase.slot_count = std::min(phase.requested, remaining);
    phase.degraded = phase.slot_count < phase.requested;
    if (first && phase.degraded) plan.outage = true;
    first = false;

    slot += phase.slot_count;
    remaining -= phase.slot_count;
    plan.serving[c->name] = phase;
  }

  plan.best_effort_start = slot;
  plan.best_effort_slots = remaining;
  return plan;
}

}  // namespace sgsim
