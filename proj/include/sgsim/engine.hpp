// Deterministic discrete-event core shared by all simulation modes.
//
// The event loop is strictly single-threaded; parallelism only ever exists
// across scenario runs with independent seeds. All randomness is drawn from
// named substreams of the scenario seed, so the radio draws, arrival phases
// and contention outcomes are independent of one another and reproducible.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sgsim/dim_table.hpp"
#include "sgsim/domain.hpp"
#include "sgsim/event_queue.hpp"
#include "sgsim/rach_priority.hpp"

namespace sgsim {

enum class RecordStatus : std::uint8_t {
  InFlight,   // still pending when observed
  Completed,  // access (and, in combined mode, transmission) finished
  Expired,    // dropped: superseded, attempts exhausted, or deadline passed
  Truncated,  // unresolved at simulation end
};

enum class ExpireReason : std::uint8_t {
  None,
  Superseded,          // a newer report fired while this one was pending
  AttemptsExhausted,   // legacy ARP gave up
  DeadlinePassed,      // stale before access completed
};

// Lifecycle timestamps of one measurement report. The timestamps are
// monotone: generated <= access <= first grant <= completed where present.
struct ReportRecord {
  std::uint32_t device_id = 0;
  TrafficClass traffic_class = TrafficClass::Upmu;
  TimeUs t_generated = 0;
  std::optional<TimeUs> t_access_success;
  std::optional<TimeUs> t_first_grant;
  std::optional<TimeUs> t_completed;
  RecordStatus status = RecordStatus::InFlight;
  ExpireReason expire_reason = ExpireReason::None;
};

inline double delay_of(const ReportRecord& r) {
  return us_to_seconds(*r.t_completed - r.t_generated);
}

// Per-frame accounting of the priority scheme (one entry per contention frame).
struct FrameRecord {
  TimeUs start = 0;
  std::map<TrafficClass, std::uint32_t> contenders;
  std::map<TrafficClass, std::uint32_t> estimated_load;
  std::map<TrafficClass, std::uint32_t> allocated_slots;  // estimation + serving
  std::uint32_t rao_slots_total = 0;
  std::uint32_t best_effort_slots = 0;
  bool pmcsm_degraded = false;
  bool outage = false;
};

struct RunResult {
  std::vector<ReportRecord> records;
  std::vector<FrameRecord> frames;
  // Grant accounting over the measurement window [warmup, sim_duration).
  std::map<TrafficClass, std::uint64_t> granted_ttis;
  std::uint64_t window_ttis = 0;
};

// Runs one scenario to completion. Throws std::invalid_argument when
// validate_scenario reports violations. The dimensioning tables are only
// needed for RACH_PRIORITY / COMBINED runs; when omitted they are built
// in-memory (slow path, no disk cache).
RunResult run_scenario(const ScenarioConfig& cfg,
                       const DimensioningTable* upmu_table = nullptr,
                       const DimensioningTable* pmcsm_table = nullptr);

}  // namespace sgsim
