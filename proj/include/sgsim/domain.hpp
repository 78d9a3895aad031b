// Device classes, cell configuration and scenario parameters.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgsim/radio.hpp"

namespace sgsim {

enum class TrafficClass : std::uint8_t { Upmu = 0, PmcSm = 1, BestEffort = 2 };

const char* to_string(TrafficClass c);
std::optional<TrafficClass> traffic_class_from_string(const std::string& s);

// Traffic/QoS profile of one device class.
struct DeviceClassSpec {
  TrafficClass name = TrafficClass::Upmu;
  std::uint32_t report_size = 0;                  // bytes
  double report_interval = 1.0;                   // seconds
  std::optional<double> latency_deadline = 1.0;   // seconds; absent for best effort
  std::optional<double> reliability_target;       // in (0,1); absent for best effort
  std::uint32_t priority = 0;                     // 0 = highest
};

// Radio and resource parameters of one LTE cell.
struct CellConfig {
  std::uint32_t total_prbs = 50;         // 10 MHz carrier
  std::uint32_t reserved_prbs = 50;      // PRBs set aside for this traffic
  std::uint32_t prbs_per_grant = 2;      // fixed allocation per device per TTI
  double tti = 0.001;                    // seconds
  std::uint32_t preambles = 12;          // contention preambles per RAO
  double rao_period = 0.005;             // seconds between random-access opportunities
  std::uint32_t max_arp_attempts = 10;   // access attempts per report
  double backoff_window = 0.020;         // seconds, uniform backoff after collision
  std::uint32_t selection_window = 8;    // extra backlog depth eligible for grants (see scheduler)
};

enum class SimMode : std::uint8_t {
  SchedulingOnly = 0,
  RachLegacy = 1,
  RachPriority = 2,
  Combined = 3,
};

const char* to_string(SimMode m);
std::optional<SimMode> sim_mode_from_string(const std::string& s);

struct ScenarioConfig {
  std::uint32_t total_devices = 0;       // smart-grid devices (uPMU + PMC/SM)
  double ratio_r = 0.1;                  // uPMU count over PMC/SM count
  SimMode mode = SimMode::SchedulingOnly;
  double sim_duration = 70.0;            // seconds
  double warmup = 10.0;                  // seconds
  std::uint64_t seed = 1;
  std::uint32_t n_best_effort = 0;
  bool synchronized_arrivals = false;    // force all report phases to zero
  CellConfig cell;
  RadioModelConfig radio;
  std::vector<DeviceClassSpec> classes;  // defaults to default_class_table() when empty
};

struct Population {
  std::uint32_t n_upmu = 0;
  std::uint32_t n_pmcsm = 0;
  std::uint32_t n_best_effort = 0;
};

// uPMU 560 B @ 1 s, deadline 1 s, 99.9%; PMC/SM 70 B @ 1 s, deadline 1 s, 95%;
// best effort carries no deadline and no target.
std::vector<DeviceClassSpec> default_class_table();

const DeviceClassSpec* find_class(const std::vector<DeviceClassSpec>& classes, TrafficClass c);

// Splits a smart-grid device total into uPMU and PMC/SM counts so that
// n_upmu / n_pmcsm is as close to ratio_r as integer rounding allows
// (round-half-up on the uPMU share). Throws std::invalid_argument on
// total == 0 or ratio_r <= 0.
Population split_population(std::uint32_t total, double ratio_r);

// Returns every invariant violation as a human-readable string; an empty
// vector means the scenario is runnable. Violations are data, not faults.
std::vector<std::string> validate_scenario(const ScenarioConfig& cfg);

}  // namespace sgsim
