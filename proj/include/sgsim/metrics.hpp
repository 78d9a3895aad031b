// Aggregation of report records into per-class delay statistics, reliability
// and resource-share figures, plus the stable CSV/JSON row formats.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgsim/domain.hpp"
#include "sgsim/engine.hpp"

namespace sgsim {

struct ClassSummary {
  TrafficClass traffic_class = TrafficClass::Upmu;
  std::uint64_t count = 0;      // reports generated inside the measurement window
  std::uint64_t completed = 0;
  std::uint64_t expired = 0;
  std::uint64_t truncated = 0;

  // Delay statistics over completed reports, seconds. Absent when nothing
  // completed (has_delays == false).
  bool has_delays = false;
  double delay_max = 0.0;
  double delay_mean = 0.0;
  double p50 = 0.0;
  double p99 = 0.0;
  double p999 = 0.0;

  // Fraction of resolved reports that completed within the class deadline.
  double reliability = 0.0;
  // Time-averaged fraction of RAO slots allocated to the class (priority mode).
  double slot_share = 0.0;
  // Fraction of the reserved PRB budget spent on this class (scheduling modes).
  double prb_utilization = 0.0;
};

struct MetricsSummary {
  // Scenario echo.
  SimMode mode = SimMode::SchedulingOnly;
  std::uint32_t total_devices = 0;
  double ratio_r = 0.0;
  std::uint32_t reserved_prbs = 0;
  std::uint64_t seed = 0;

  std::vector<ClassSummary> classes;

  // Contention-frame accounting (priority modes; zero elsewhere).
  std::uint64_t frames = 0;
  double frames_best_effort_exhausted = 0.0;  // fraction of frames with no best-effort slots
  double frames_pmcsm_degraded = 0.0;
  double frames_outage = 0.0;
  double best_effort_slot_share = 0.0;

  const ClassSummary* find(TrafficClass c) const;
};

// Deterministic aggregation over the measurement window
// [warmup, sim_duration). Reports that never resolved (truncated) are
// excluded from the reliability denominator.
MetricsSummary summarize(const RunResult& result, const ScenarioConfig& cfg);

// Nearest-rank percentile on an unsorted sample (q in (0,1]).
double percentile_nearest_rank(std::vector<double> values, double q);

// CSV schema (stable column order):
// mode,N,R,reserved_prbs,class,count,completed,reliability,delay_max_ms,
// delay_mean_ms,p50,p99,p999,slot_share,seed
std::string csv_header();
void append_csv_rows(std::ostream& out, const MetricsSummary& summary);
void write_csv(std::ostream& out, const std::vector<MetricsSummary>& summaries);

// JSON mirror of the same rows.
void write_json(std::ostream& out, const std::vector<MetricsSummary>& summaries);

}  // namespace sgsim
