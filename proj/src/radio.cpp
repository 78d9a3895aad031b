#include "sgsim/radio.hpp"

#include <algorithm>
#include <cmath>

namespace sgsim {

double sinr_at(double distance_m, double shadowing_db, const RadioModelConfig& model) {
  const double d_km = std::max(distance_m, kMinPlacementDistance) / 1000.0;
  const double pathloss = model.pathloss_intercept + model.pathloss_exponent_coeff * std::log10(d_km);
  const double noise_bw_hz = kHzPerDataRes * static_cast<double>(model.data_res_per_grant);
  const double noise_dbm = kNoiseDensityDbmHz + 10.0 * std::log10(noise_bw_hz) + model.noise_figure;
  return model.tx_power - pathloss + shadowing_db - noise_dbm - model.interference_margin;
}

double bits_per_grant_tti(double sinr_db, const RadioModelConfig& model) {
  const double sinr = std::pow(10.0, sinr_db / 10.0);
  const double eff = std::min(std::log2(1.0 + sinr), model.max_spectral_eff);
  const double bits = eff * static_cast<double>(model.data_res_per_grant) * model.retx_factor;
  return std::max(bits, model.min_bits_per_grant);
}

LinkProfile draw_link_profile(Rng& rng, const RadioModelConfig& model) {
  const double r2_min = kMinPlacementDistance * kMinPlacementDistance;
  const double r2_max = model.cell_radius * model.cell_radius;
  const double distance = std::sqrt(r2_min + rng.uniform() * (r2_max - r2_min));
  const double shadowing = rng.normal(0.0, model.shadowing_sigma);
  LinkProfile link;
  link.sinr_db = sinr_at(distance, shadowing, model);
  link.bits_per_grant_tti = bits_per_grant_tti(link.sinr_db, model);
  return link;
}

std::uint32_t ttis_needed(std::uint32_t report_size_bytes, const LinkProfile& link) {
  const double bits = 8.0 * static_cast<double>(report_size_bytes);
  return static_cast<std::uint32_t>(std::ceil(bits / link.bits_per_grant_tti));
}

}  // namespace sgsim
