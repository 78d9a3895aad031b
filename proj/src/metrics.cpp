#include "sgsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>

#include "json.hpp"

namespace sgsim {

const ClassSummary* MetricsSummary::find(TrafficClass c) const {
  for (const auto& s : classes)
    if (s.traffic_class == c) return &s;
  return nullptr;
}

double percentile_nearest_rank(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  if (rank == 0) rank = 1;
  return values[rank - 1];
}

MetricsSummary summarize(const RunResult& result, const ScenarioConfig& cfg) {
  MetricsSummary out;
  out.mode = cfg.mode;
  out.total_devices = cfg.total_devices;
  out.ratio_r = cfg.ratio_r;
  out.reserved_prbs = cfg.cell.reserved_prbs;
  out.seed = cfg.seed;

  const auto classes = cfg.classes.empty() ? default_class_table() : cfg.classes;
  const TimeUs window_start = seconds_to_us(cfg.warmup);
  const TimeUs window_end = seconds_to_us(cfg.sim_duration);

  struct Acc {
    std::uint64_t count = 0, completed = 0, expired = 0, truncated = 0, reliable = 0;
    std::vector<double> delays;
  };
  std::map<TrafficClass, Acc> acc;

  for (const auto& r : result.records) {
    if (r.t_generated < window_start || r.t_generated >= window_end) continue;
    Acc& a = acc[r.traffic_class];
    a.count += 1;
    switch (r.status) {
      case RecordStatus::Completed: {
        a.completed += 1;
        const double delay = delay_of(r);
        a.delays.push_back(delay);
        const auto* spec = find_class(classes, r.traffic_class);
        const bool within =
            !spec || !spec->latency_deadline || delay <= *spec->latency_deadline + 1e-12;
        if (within) a.reliable += 1;
        break;
      }
      case RecordStatus::Expired:
        a.expired += 1;
        break;
      case RecordStatus::Truncated:
      case RecordStatus::InFlight:
        a.truncated += 1;
        break;
    }
  }

  // Frame accounting restricted to the window as well.
  std::map<TrafficClass, double> slot_share;
  std::uint64_t frames = 0, be_exhausted = 0, degraded = 0, outage = 0;
  std::uint64_t be_slots = 0, total_slots = 0;
  for (const auto& f : result.frames) {
    if (f.start < window_start || f.start >= window_end) continue;
    frames += 1;
    total_slots += f.rao_slots_total;
    be_slots += f.best_effort_slots;
    if (f.best_effort_slots == 0) be_exhausted += 1;
    if (f.pmcsm_degraded) degraded += 1;
    if (f.outage) outage += 1;
    for (const auto& [cls, slots] : f.allocated_slots)
      slot_share[cls] += static_cast<double>(slots) / f.rao_slots_total;
  }
  out.frames = frames;
  if (frames > 0) {
    out.frames_best_effort_exhausted = static_cast<double>(be_exhausted) / frames;
    out.frames_pmcsm_degraded = static_cast<double>(degraded) / frames;
    out.frames_outage = static_cast<double>(outage) / frames;
    out.best_effort_slot_share = static_cast<double>(be_slots) / total_slots;
  }

  for (const auto& spec : classes) {
    // Only emit rows for classes that took part in the run.
    const bool seen = acc.count(spec.name) != 0 || slot_share.count(spec.name) != 0;
    if (!seen && spec.name == TrafficClass::BestEffort) continue;
    ClassSummary s;
    s.traffic_class = spec.name;
    if (auto it = acc.find(spec.name); it != acc.end()) {
      Acc& a = it->second;
      s.count = a.count;
      s.completed = a.completed;
      s.expired = a.expired;
      s.truncated = a.truncated;
      const std::uint64_t resolved = a.count - a.truncated;
      s.reliability = resolved > 0 ? static_cast<double>(a.reliable) / resolved : 0.0;
      if (!a.delays.empty()) {
        s.has_delays = true;
        s.delay_max = *std::max_element(a.delays.begin(), a.delays.end());
        s.delay_mean =
            std::accumulate(a.delays.begin(), a.delays.end(), 0.0) / a.delays.size();
        s.p50 = percentile_nearest_rank(a.delays, 0.50);
        s.p99 = percentile_nearest_rank(a.delays, 0.99);
        s.p999 = percentile_nearest_rank(a.delays, 0.999);
      }
    }
    if (auto it = slot_share.find(spec.name); it != slot_share.end() && frames > 0)
      s.slot_share = it->second / frames;
    if (result.window_ttis > 0) {
      const auto it = result.granted_ttis.find(spec.name);
      const double granted = it != result.granted_ttis.end() ? static_cast<double>(it->second) : 0.0;
      const double prb_capacity = static_cast<double>(cfg.cell.reserved_prbs) /
                                  cfg.cell.prbs_per_grant * result.window_ttis;
      s.prb_utilization = granted / prb_capacity;
    }
    out.classes.push_back(s);
  }
  return out;
}

namespace {

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string delay_ms_or_empty(const ClassSummary& s, double seconds) {
  if (!s.has_delays) return "";
  return fmt(seconds * 1e3, "%.3f");
}

}  // namespace

std::string csv_header() {
  return "mode,N,R,reserved_prbs,class,count,completed,reliability,delay_max_ms,"
         "delay_mean_ms,p50,p99,p999,slot_share,seed";
}

void append_csv_rows(std::ostream& out, const MetricsSummary& m) {
  for (const auto& s : m.classes) {
    out << to_string(m.mode) << ',' << m.total_devices << ',' << fmt(m.ratio_r) << ','
        << m.reserved_prbs << ',' << to_string(s.traffic_class) << ',' << s.count << ','
        << s.completed << ',' << fmt(s.reliability) << ',' << delay_ms_or_empty(s, s.delay_max)
        << ',' << delay_ms_or_empty(s, s.delay_mean) << ',' << delay_ms_or_empty(s, s.p50) << ','
        << delay_ms_or_empty(s, s.p99) << ',' << delay_ms_or_empty(s, s.p999) << ','
        << fmt(s.slot_share) << ',' << m.seed << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<MetricsSummary>& summaries) {
  out << csv_header() << '\n';
  for (const auto& m : summaries) append_csv_rows(out, m);
}

void write_json(std::ostream& out, const std::vector<MetricsSummary>& summaries) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& m : summaries) {
    for (const auto& s : m.classes) {
      nlohmann::ordered_json row;
      row["mode"] = to_string(m.mode);
      row["N"] = m.total_devices;
      row["R"] = m.ratio_r;
      row["reserved_prbs"] = m.reserved_prbs;
      row["class"] = to_string(s.traffic_class);
      row["count"] = s.count;
      row["completed"] = s.completed;
      row["reliability"] = s.reliability;
      if (s.has_delays) {
        row["delay_max_ms"] = s.delay_max * 1e3;
        row["delay_mean_ms"] = s.delay_mean * 1e3;
        row["p50"] = s.p50 * 1e3;
        row["p99"] = s.p99 * 1e3;
        row["p999"] = s.p999 * 1e3;
      } else {
        row["delay_max_ms"] = nullptr;
        row["delay_mean_ms"] = nullptr;
        row["p50"] = nullptr;
        row["p99"] = nullptr;
        row["p999"] = nullptr;
      }
      row["slot_share"] = s.slot_share;
      row["seed"] = m.seed;
      rows.push_back(row);
    }
  }
  out << rows.dump(2) << '\n';
}

}  // namespace sgsim
