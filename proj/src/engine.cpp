#include "sgsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sgsim/rach_legacy.hpp"
#include "sgsim/rng.hpp"
#include "sgsim/scheduler.hpp"

namespace sgsim {

namespace {

// Substream ids for the scenario master seed.
enum StreamId : std::uint64_t {
  kStreamPlacement = 1,
  kStreamPhases = 2,
  kStreamScheduler = 3,
  kStreamRach = 4,
  kStreamBackoff = 5,
};

struct Device {
  TrafficClass cls = TrafficClass::Upmu;
  const DeviceClassSpec* spec = nullptr;
  TimeUs phase = 0;
  TimeUs interval = 0;
  std::optional<TimeUs> deadline;
  std::uint32_t ttis_per_report = 0;

  std::int64_t record = -1;  // index of the in-flight record, -1 when idle
  // Legacy ARP state.
  std::uint32_t attempts = 0;
  TimeUs next_attempt = 0;
};

struct Sim {
  const ScenarioConfig& cfg;
  std::vector<DeviceClassSpec> classes;
  std::vector<Device> devices;
  RunResult result;
  EventQueue queue;
  Rng sched_rng;
  Rng rach_rng;
  Rng backoff_rng;
  TimeUs duration;
  TimeUs warmup;
  TimeUs tti;
  Backlog backlog;

  explicit Sim(const ScenarioConfig& c)
      : cfg(c),
        sched_rng(substream_seed(c.seed, kStreamScheduler)),
        rach_rng(substream_seed(c.seed, kStreamRach)),
        backoff_rng(substream_seed(c.seed, kStreamBackoff)) {}

  bool busy(const Device& d) const { return d.record >= 0; }
  ReportRecord& rec(Device& d) { return result.records[static_cast<std::size_t>(d.record)]; }

  void expire(Device& d, ExpireReason why) {
    rec(d).status = RecordStatus::Expired;
    rec(d).expire_reason = why;
    d.record = -1;
  }

  void complete(Device& d, TimeUs when) {
    rec(d).t_completed = when;
    rec(d).status = RecordStatus::Completed;
    d.record = -1;
  }

  bool in_window(TimeUs t) const { return t >= warmup && t < duration; }
};

void setup_devices(Sim& sim) {
  const auto& cfg = sim.cfg;
  Population pop{0, 0, cfg.n_best_effort};
  if (cfg.total_devices > 0) {
    const Population split = split_population(cfg.total_devices, cfg.ratio_r);
    pop.n_upmu = split.n_upmu;
    pop.n_pmcsm = split.n_pmcsm;
  }
  // Best-effort devices only take part in random access.
  const bool best_effort_active =
      cfg.mode == SimMode::RachLegacy || cfg.mode == SimMode::RachPriority || cfg.mode == SimMode::Combined;
  if (!best_effort_active) pop.n_best_effort = 0;

  Rng placement_rng(substream_seed(cfg.seed, kStreamPlacement));
  Rng phase_rng(substream_seed(cfg.seed, kStreamPhases));

  const bool needs_link = cfg.mode == SimMode::SchedulingOnly || cfg.mode == SimMode::Combined;
  auto add = [&](TrafficClass cls, std::uint32_t n) {
    const DeviceClassSpec* spec = find_class(sim.classes, cls);
    for (std::uint32_t i = 0; i < n; ++i) {
      Device d;
      d.cls = cls;
      d.spec = spec;
      d.interval = seconds_to_us(spec->report_interval);
      if (spec->latency_deadline) d.deadline = seconds_to_us(*spec->latency_deadline);
      const auto interval_ms = static_cast<std::uint64_t>(d.interval / kUsPerMs);
      d.phase = cfg.synchronized_arrivals
                    ? 0
                    : static_cast<TimeUs>(phase_rng.uniform_int(interval_ms)) * kUsPerMs;
      if (needs_link && cls != TrafficClass::BestEffort) {
        const LinkProfile link = draw_link_profile(placement_rng, cfg.radio);
        d.ttis_per_report = ttis_needed(spec->report_size, link);
      }
      sim.devices.push_back(d);
    }
  };
  add(TrafficClass::Upmu, pop.n_upmu);
  add(TrafficClass::PmcSm, pop.n_pmcsm);
  add(TrafficClass::BestEffort, pop.n_best_effort);
}

void generate_report(Sim& sim, std::uint32_t device_id, TimeUs now) {
  Device& d = sim.devices[device_id];
  ReportRecord r;
  r.device_id = device_id;
  r.traffic_class = d.cls;
  r.t_generated = now;
  if (sim.busy(d)) {
    // The previous report is still pending; the fresh one is dropped at the
    // source so in-flight work is never restarted.
    r.status = RecordStatus::Expired;
    r.expire_reason = ExpireReason::Superseded;
    sim.result.records.push_back(r);
  } else {
    sim.result.records.push_back(r);
    d.record = static_cast<std::int64_t>(sim.result.records.size()) - 1;
    d.attempts = 0;
    d.next_attempt = now;
  }
  const TimeUs next = now + d.interval;
  if (next < sim.duration) sim.queue.push(next, EventKind::ReportGenerated, device_id);
}

// --- scheduling (FFA) ------------------------------------------------------

void handle_tti(Sim& sim, TimeUs now) {
  static thread_local std::vector<std::uint32_t> completed;
  completed.clear();
  const auto granted = schedule_tti(sim.backlog, sim.cfg.cell, sim.sched_rng, &completed);
  for (std::uint32_t id : granted) {
    Device& d = sim.devices[id];
    if (!sim.rec(d).t_first_grant) sim.rec(d).t_first_grant = now;
    if (sim.in_window(now)) sim.result.granted_ttis[d.cls] += 1;
  }
  for (std::uint32_t id : completed) sim.complete(sim.devices[id], now + sim.tti);
  if (sim.in_window(now)) sim.result.window_ttis += 1;
  const TimeUs next = now + sim.tti;
  if (next < sim.duration) sim.queue.push(next, EventKind::TtiTick, 0);
}

void start_transmission(Sim& sim, Device& d, std::uint32_t device_id, TimeUs now) {
  sim.backlog.enqueue(device_id, d.ttis_per_report, now);
}

// --- legacy ARP -------------------------------------------------------------

void handle_rao(Sim& sim, TimeUs now) {
  static thread_local std::vector<std::uint32_t> ready;
  ready.clear();
  for (std::uint32_t id = 0; id < sim.devices.size(); ++id) {
    Device& d = sim.devices[id];
    if (sim.busy(d) && !sim.rec(d).t_access_success && d.next_attempt <= now) ready.push_back(id);
  }
  if (!ready.empty()) {
    const RaoOutcome outcome =
        simulate_rao(static_cast<std::uint32_t>(ready.size()), sim.cfg.cell.preambles, sim.rach_rng);
    const TimeUs backoff_us = seconds_to_us(sim.cfg.cell.backoff_window);
    for (std::uint32_t idx : outcome.successes) {
      Device& d = sim.devices[ready[idx]];
      sim.rec(d).t_access_success = now;
      sim.complete(d, now);  // access-only mode: success closes the report
    }
    for (std::uint32_t idx : outcome.collided) {
      Device& d = sim.devices[ready[idx]];
      d.attempts += 1;
      if (d.attempts >= sim.cfg.cell.max_arp_attempts) {
        sim.expire(d, ExpireReason::AttemptsExhausted);
      } else {
        d.next_attempt = now + 1 + static_cast<TimeUs>(sim.backoff_rng.uniform_int(
                                       static_cast<std::uint64_t>(backoff_us) + 1));
      }
    }
  }
  const TimeUs next = now + seconds_to_us(sim.cfg.cell.rao_period);
  if (next < sim.duration) sim.queue.push(next, EventKind::RaoSlot, 0);
}

// --- prioritized contention frames -----------------------------------------

// Serving-phase contention for one class: uniform first-attempt slot, retry
// in the next slot after a preamble collision. Returns the success slot
// (frame-relative) per contender, or nullopt for a failed pass.
std::vector<std::optional<std::uint32_t>> serve_phase(Sim& sim,
                                                      std::uint32_t n,
                                                      std::uint32_t start_slot,
                                                      std::uint32_t slot_count) {
  std::vector<std::optional<std::uint32_t>> outcome(n);
  if (slot_count == 0) return outcome;

  struct Contender {
    std::uint32_t index;
    std::uint32_t preamble = 0;
    std::uint32_t attempts = 0;
  };
  std::vector<std::vector<Contender>> by_slot(slot_count);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto s = static_cast<std::uint32_t>(sim.rach_rng.uniform_int(slot_count));
    by_slot[s].push_back(Contender{i});
  }
  std::vector<std::uint32_t> count(sim.cfg.cell.preambles, 0);
  for (std::uint32_t s = 0; s < slot_count; ++s) {
    auto& slot = by_slot[s];
    if (slot.empty()) continue;
    std::fill(count.begin(), count.end(), 0);
    for (auto& c : slot) {
      c.preamble = static_cast<std::uint32_t>(sim.rach_rng.uniform_int(sim.cfg.cell.preambles));
      c.attempts += 1;
      count[c.preamble] += 1;
    }
    for (auto& c : slot) {
      if (count[c.preamble] == 1) {
        outcome[c.index] = start_slot + s;
      } else if (s + 1 < slot_count && c.attempts < sim.cfg.cell.max_arp_attempts) {
        by_slot[s + 1].push_back(c);
      }
    }
  }
  return outcome;
}

void handle_frame(Sim& sim, TimeUs now, const DimensioningTable& upmu_table,
                  const DimensioningTable& pmcsm_table) {
  const TimeUs rao_us = seconds_to_us(sim.cfg.cell.rao_period);

  // Gather per-class contenders; stale reports are dropped at the frame edge.
  std::map<TrafficClass, std::vector<std::uint32_t>> contenders;
  for (std::uint32_t id = 0; id < sim.devices.size(); ++id) {
    Device& d = sim.devices[id];
    if (!sim.busy(d) || sim.rec(d).t_access_success) continue;
    if (d.deadline && now > sim.rec(d).t_generated + *d.deadline) {
      sim.expire(d, ExpireReason::DeadlinePassed);
      continue;
    }
    contenders[d.cls].push_back(id);
  }

  // Estimation slots: every guaranteed contender activates a random preamble.
  std::map<TrafficClass, std::uint32_t> loads;
  for (TrafficClass cls : {TrafficClass::Upmu, TrafficClass::PmcSm}) {
    if (!find_class(sim.classes, cls) || !find_class(sim.classes, cls)->reliability_target) continue;
    std::vector<std::uint32_t> count(sim.cfg.cell.preambles, 0);
    if (auto it = contenders.find(cls); it != contenders.end()) {
      for (std::size_t i = 0; i < it->second.size(); ++i)
        count[sim.rach_rng.uniform_int(sim.cfg.cell.preambles)] += 1;
    }
    const auto activated = static_cast<std::uint32_t>(
        std::count_if(count.begin(), count.end(), [](std::uint32_t c) { return c > 0; }));
    loads[cls] = estimate_load(activated, sim.cfg.cell.preambles);
  }

  const ContentionFramePlan plan =
      build_frame(loads, sim.cfg.cell, sim.classes, upmu_table, pmcsm_table);

  auto serve_class = [&](TrafficClass cls, std::uint32_t start, std::uint32_t slots) {
    auto it = contenders.find(cls);
    if (it == contenders.end() || it->second.empty()) return;
    const auto outcome =
        serve_phase(sim, static_cast<std::uint32_t>(it->second.size()), start, slots);
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      if (!outcome[i]) continue;  // failed the pass; retries next frame
      Device& d = sim.devices[it->second[i]];
      const TimeUs t_succ = now + static_cast<TimeUs>(*outcome[i]) * rao_us;
      sim.rec(d).t_access_success = t_succ;
      if (sim.cfg.mode == SimMode::Combined && d.cls != TrafficClass::BestEffort) {
        sim.queue.push(t_succ, EventKind::TransmissionComplete, it->second[i]);
      } else {
        sim.complete(d, t_succ);
      }
    }
  };
  for (TrafficClass cls : {TrafficClass::Upmu, TrafficClass::PmcSm}) {
    if (auto it = plan.serving.find(cls); it != plan.serving.end())
      serve_class(cls, it->second.start_slot, it->second.slot_count);
  }
  serve_class(TrafficClass::BestEffort, plan.best_effort_start, plan.best_effort_slots);

  FrameRecord frame;
  frame.start = now;
  for (const auto& [cls, ids] : contenders)
    frame.contenders[cls] = static_cast<std::uint32_t>(ids.size());
  frame.estimated_load = plan.estimated_load;
  for (const auto& entry : plan.serving)
    frame.allocated_slots[entry.first] = plan.allocated_slots(entry.first);
  frame.rao_slots_total = plan.rao_slots_total;
  frame.best_effort_slots = plan.best_effort_slots;
  if (auto it = plan.serving.find(TrafficClass::PmcSm); it != plan.serving.end())
    frame.pmcsm_degraded = it->second.degraded;
  frame.outage = plan.outage;
  sim.result.frames.push_back(frame);

  const TimeUs next = now + seconds_to_us(plan.frame_duration);
  if (next < sim.duration) sim.queue.push(next, EventKind::FrameStart, 0);
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const DimensioningTable* upmu_table,
                       const DimensioningTable* pmcsm_table) {
  if (const auto violations = validate_scenario(cfg); !violations.empty()) {
    std::ostringstream msg;
    msg << "invalid scenario:";
    for (const auto& v : violations) msg << "\n  - " << v;
    throw std::invalid_argument(msg.str());
  }

  Sim sim(cfg);
  sim.classes = cfg.classes.empty() ? default_class_table() : cfg.classes;
  sim.duration = seconds_to_us(cfg.sim_duration);
  sim.warmup = seconds_to_us(cfg.warmup);
  sim.tti = seconds_to_us(cfg.cell.tti);
  setup_devices(sim);

  const bool priority_mode = cfg.mode == SimMode::RachPriority || cfg.mode == SimMode::Combined;
  DimensioningTable built_upmu, built_pmcsm;
  if (priority_mode) {
    const auto* upmu_spec = find_class(sim.classes, TrafficClass::Upmu);
    const auto* pmcsm_spec = find_class(sim.classes, TrafficClass::PmcSm);
    if (!upmu_table) {
      built_upmu = DimensioningTable::build(DimTableKey{cfg.cell.preambles, *upmu_spec->reliability_target,
                                                        256, cfg.cell.max_arp_attempts});
      upmu_table = &built_upmu;
    }
    if (!pmcsm_table) {
      built_pmcsm = DimensioningTable::build(DimTableKey{cfg.cell.preambles, *pmcsm_spec->reliability_target,
                                                         256, cfg.cell.max_arp_attempts});
      pmcsm_table = &built_pmcsm;
    }
  }

  for (std::uint32_t id = 0; id < sim.devices.size(); ++id) {
    const TimeUs first = sim.devices[id].phase;
    if (first < sim.duration) sim.queue.push(first, EventKind::ReportGenerated, id);
  }
  switch (cfg.mode) {
    case SimMode::SchedulingOnly:
      sim.queue.push(0, EventKind::TtiTick, 0);
      break;
    case SimMode::RachLegacy:
      sim.queue.push(0, EventKind::RaoSlot, 0);
      break;
    case SimMode::RachPriority:
      sim.queue.push(0, EventKind::FrameStart, 0);
      break;
    case SimMode::Combined:
      sim.queue.push(0, EventKind::TtiTick, 0);
      sim.queue.push(0, EventKind::FrameStart, 0);
      break;
  }

  while (!sim.queue.empty() && sim.queue.top().time < sim.duration) {
    const Event ev = sim.queue.pop();
    switch (ev.kind) {
      case EventKind::ReportGenerated: {
        generate_report(sim, ev.subject, ev.time);
        if (cfg.mode == SimMode::SchedulingOnly) {
          Device& d = sim.devices[ev.subject];
          if (sim.busy(d) && !sim.rec(d).t_access_success) {
            // No access phase in this mode: the report enters service directly.
            sim.rec(d).t_access_success = ev.time;
            start_transmission(sim, d, ev.subject, ev.time);
          }
        }
        break;
      }
      case EventKind::TtiTick:
        handle_tti(sim, ev.time);
        break;
      case EventKind::RaoSlot:
        handle_rao(sim, ev.time);
        break;
      case EventKind::FrameStart:
        handle_frame(sim, ev.time, *upmu_table, *pmcsm_table);
        break;
      case EventKind::TransmissionComplete: {
        // Combined mode: access resolved, hand the report to the scheduler.
        Device& d = sim.devices[ev.subject];
        start_transmission(sim, d, ev.subject, ev.time);
        break;
      }
    }
  }

  for (auto& r : sim.result.records)
    if (r.status == RecordStatus::InFlight) r.status = RecordStatus::Truncated;
  return sim.result;
}

}  // namespace sgsim
