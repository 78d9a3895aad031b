// Independent oracles used by the test suites. These deliberately do not
// share code with the library paths they check: the radio expectation is a
// numerical quadrature, the access-reliability oracle is a fluid fixed-point
// recursion, and the serving-phase probe is a from-scratch re-simulation.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "sgsim/radio.hpp"

namespace oracle {

// --- radio ------------------------------------------------------------------

// E[f(bits_per_grant_tti)] over the placement disk and the shadowing normal,
// by composite Simpson in both dimensions.
inline double radio_expectation(const sgsim::RadioModelConfig& model,
                                const std::function<double(double)>& f,
                                int distance_steps = 800, int shadow_steps = 800) {
  const double d0 = sgsim::kMinPlacementDistance;
  const double d1 = model.cell_radius;
  const double area_norm = d1 * d1 - d0 * d0;
  const double sigma = model.shadowing_sigma;
  const double x_span = 8.0 * sigma;

  auto simpson_weight = [](int i, int n) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };

  const double hd = (d1 - d0) / distance_steps;
  const double hx = (2.0 * x_span) / shadow_steps;
  double total = 0.0;
  for (int i = 0; i <= distance_steps; ++i) {
    const double d = d0 + hd * i;
    const double density_d = 2.0 * d / area_norm;  // uniform on the annulus disk
    double inner = 0.0;
    for (int j = 0; j <= shadow_steps; ++j) {
      const double x = -x_span + hx * j;
      const double pdf_x =
          std::exp(-0.5 * (x / sigma) * (x / sigma)) / (sigma * std::sqrt(2.0 * 3.14159265358979323846));
      const double bits = sgsim::bits_per_grant_tti(sgsim::sinr_at(d, x, model), model);
      inner += simpson_weight(j, shadow_steps) * pdf_x * f(bits);
    }
    inner *= hx / 3.0;
    total += simpson_weight(i, distance_steps) * density_d * inner;
  }
  return total * hd / 3.0;
}

inline double mean_bits(const sgsim::RadioModelConfig& model) {
  return radio_expectation(model, [](double b) { return b; });
}

inline double mean_ttis(const sgsim::RadioModelConfig& model, double report_bytes) {
  return radio_expectation(
      model, [report_bytes](double b) { return std::ceil(8.0 * report_bytes / b); });
}

inline double prob_bits_at_most(const sgsim::RadioModelConfig& model, double threshold) {
  return radio_expectation(model,
                           [threshold](double b) { return b <= threshold + 1e-9 ? 1.0 : 0.0; });
}

// --- access reservation (legacy) ---------------------------------------------

// Fluid fixed point for the per-attempt success probability under multichannel
// slotted-ALOHA contention: attempts arrive at G per RAO (fresh + retries) and
// an attempt succeeds iff no other attempt lands on its preamble,
// s = exp(-G/M). Reports give up after `attempts` collisions. Assumes all
// attempts fit inside the latency deadline (true for default spacing).
inline double legacy_reliability_fluid(double devices, double interval_s, double rao_period_s,
                                       std::uint32_t preambles, std::uint32_t attempts) {
  const double fresh_per_rao = devices * rao_period_s / interval_s;
  double g = fresh_per_rao;
  for (int iter = 0; iter < 10000; ++iter) {
    const double s = std::exp(-g / preambles);
    const double expected_attempts = (1.0 - std::pow(1.0 - s, attempts)) / s;
    const double g_new = fresh_per_rao * expected_attempts;
    if (std::abs(g_new - g) < 1e-12) {
      g = g_new;
      break;
    }
    g = 0.5 * g + 0.5 * g_new;
  }
  const double s = std::exp(-g / preambles);
  return 1.0 - std::pow(1.0 - s, attempts);
}

// --- serving phase ------------------------------------------------------------

// Re-simulation of one serving phase, written independently of the library:
// n devices pick a uniform first slot in [0, S); every preamble collision
// sends the device to the following slot with a fresh preamble, up to
// `attempts_cap` transmissions, failing when the phase runs out.
// Returns the per-device success probability over `trials` phases.
inline double phase_success_probe(std::uint32_t n, std::uint32_t slots, std::uint32_t preambles,
                                  std::uint32_t attempts_cap, std::uint32_t trials,
                                  std::uint64_t seed) {
  if (n == 0) return 1.0;
  std::mt19937_64 gen(seed);
  auto pick = [&gen](std::uint32_t bound) {
    return static_cast<std::uint32_t>(gen() % bound);  // bias negligible for tiny bounds
  };
  std::uint64_t ok = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> slot_members;  // (device, tx count)
  for (std::uint32_t t = 0; t < trials; ++t) {
    slot_members.assign(slots, {});
    for (std::uint32_t d = 0; d < n; ++d) slot_members[pick(slots)].push_back({d, 0});
    std::vector<std::uint32_t> preamble_of(n);
    std::vector<std::uint32_t> occupancy(preambles);
    for (std::uint32_t s = 0; s < slots; ++s) {
      auto members = slot_members[s];
      if (members.empty()) continue;
      std::fill(occupancy.begin(), occupancy.end(), 0);
      for (auto& m : members) {
        preamble_of[m.first] = pick(preambles);
        occupancy[preamble_of[m.first]] += 1;
        m.second += 1;
      }
      for (const auto& m : members) {
        if (occupancy[preamble_of[m.first]] == 1)
          ok += 1;
        else if (s + 1 < slots && m.second < attempts_cap)
          slot_members[s + 1].push_back(m);
      }
    }
  }
  return static_cast<double>(ok) / (static_cast<double>(n) * trials);
}

// Expected number of distinct preambles activated by n devices, estimated by
// brute-force trials (used to sanity-check the load estimator inversion).
inline double expected_occupancy_bruteforce(std::uint32_t n, std::uint32_t preambles,
                                            std::uint32_t trials, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint8_t> used(preambles);
  std::uint64_t total = 0;
  for (std::uint32_t t = 0; t < trials; ++t) {
    std::fill(used.begin(), used.end(), 0);
    for (std::uint32_t d = 0; d < n; ++d) used[gen() % preambles] = 1;
    total += std::count(used.begin(), used.end(), std::uint8_t{1});
  }
  return static_cast<double>(total) / trials;
}

}  // namespace oracle
