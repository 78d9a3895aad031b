// Radio abstraction: device placement -> SINR -> net bits per grant-TTI.
//
// The link model is a standard urban-macro chain: uniform placement on the
// cell disk, log-distance pathloss, log-normal shadowing, and a truncated
// Shannon map to spectral efficiency. HARQ retransmissions are folded into a
// multiplicative effective-throughput factor instead of per-block error
// simulation.

#pragma once

#include <cstdint>

#include "sgsim/rng.hpp"

namespace sgsim {

struct RadioModelConfig {
  double cell_radius = 1000.0;            // m
  double pathloss_intercept = 128.1;      // dB at 1 km
  double pathloss_exponent_coeff = 37.6;  // dB per decade of distance
  double shadowing_sigma = 8.0;           // dB
  double tx_power = 23.0;                 // dBm
  double noise_figure = 5.0;              // dB
  double interference_margin = 7.0;       // dB, uplink interference-over-thermal
  double min_bits_per_grant = 23.0;       // worst-case calibration floor, bits per grant-TTI
  double max_spectral_eff = 4.8;          // bits/symbol ceiling of the MCS set
  std::uint32_t data_res_per_grant = 288; // data resource elements per grant-TTI (2 PRBs)
  double retx_factor = 0.9;               // effective-throughput factor for retransmissions
};

struct LinkProfile {
  double sinr_db = 0.0;
  double bits_per_grant_tti = 0.0;  // net bits per grant-TTI after coding + retx overhead
};

// Minimum placement distance from the base station, in meters.
constexpr double kMinPlacementDistance = 35.0;

// Thermal noise density in dBm/Hz; each data resource element spans 1.25 kHz
// (180 kHz per PRB / 144 data REs per PRB-pair per TTI).
constexpr double kNoiseDensityDbmHz = -174.0;
constexpr double kHzPerDataRes = 1250.0;

double sinr_at(double distance_m, double shadowing_db, const RadioModelConfig& model);

// Truncated-Shannon mapping from SINR to net bits per grant-TTI, clamped to
// [min_bits_per_grant, max_spectral_eff * data_res_per_grant * retx_factor].
double bits_per_grant_tti(double sinr_db, const RadioModelConfig& model);

// Places a device uniformly on the cell disk (minimum distance 35 m), draws
// shadowing and returns the resulting static link profile.
LinkProfile draw_link_profile(Rng& rng, const RadioModelConfig& model);

// Number of grant-TTIs needed to move a report across the given link.
std::uint32_t ttis_needed(std::uint32_t report_size_bytes, const LinkProfile& link);

}  // namespace sgsim
