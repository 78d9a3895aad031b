#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sgsim/radio.hpp"
#include "sgsim/rng.hpp"

using namespace sgsim;

namespace {
RadioModelConfig default_model() { return RadioModelConfig{}; }
}  // namespace

TEST_CASE("link rate clamps at the MCS ceiling near the base station") {
  const RadioModelConfig model = default_model();
  const double sinr = sinr_at(kMinPlacementDistance, 0.0, model);
  const double bits = bits_per_grant_tti(sinr, model);
  const double ceiling = model.max_spectral_eff * model.data_res_per_grant * model.retx_factor;
  CHECK(bits == doctest::Approx(ceiling));
}

TEST_CASE("link rate clamps at the calibration floor at the shadowed cell edge") {
  const RadioModelConfig model = default_model();
  const double sinr = sinr_at(model.cell_radius, -3.0 * model.shadowing_sigma, model);
  CHECK(bits_per_grant_tti(sinr, model) == doctest::Approx(model.min_bits_per_grant));
}

TEST_CASE("empirical mean link rate matches the quadrature expectation") {
  const RadioModelConfig model = default_model();
  Rng rng(20240601);
  const std::uint32_t draws = 100000;
  double sum = 0.0;
  for (std::uint32_t i = 0; i < draws; ++i) sum += draw_link_profile(rng, model).bits_per_grant_tti;
  const double empirical = sum / draws;
  const double expected = oracle::mean_bits(model);
  CHECK(std::abs(empirical - expected) / expected < 0.01);
}

TEST_CASE("grant-TTI demand for the reference report sizes") {
  LinkProfile floor_link{-12.0, 28.0};
  CHECK(ttis_needed(70, floor_link) == 20);
  CHECK(ttis_needed(560, floor_link) == 160);
  LinkProfile wide_link{30.0, 4480.0};
  CHECK(ttis_needed(70, wide_link) == 1);
}

TEST_CASE("TTI demand is monotone in rate and report size") {
  for (double bits = 23.0; bits < 1300.0; bits += 7.0) {
    LinkProfile a{0.0, bits}, b{0.0, bits + 7.0};
    CHECK(ttis_needed(560, a) >= ttis_needed(560, b));
    CHECK(ttis_needed(560, a) >= ttis_needed(70, a));
  }
}

TEST_CASE("every draw stays inside the clamp range") {
  const RadioModelConfig model = default_model();
  const double ceiling = model.max_spectral_eff * model.data_res_per_grant * model.retx_factor;
  Rng rng(7);
  for (int i = 0; i < 20000; ++i) {
    const LinkProfile link = draw_link_profile(rng, model);
    CHECK(link.bits_per_grant_tti >= model.min_bits_per_grant - 1e-12);
    CHECK(link.bits_per_grant_tti <= ceiling + 1e-12);
  }
}

TEST_CASE("identical seeds give identical profiles") {
  const RadioModelConfig model = default_model();
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    const LinkProfile la = draw_link_profile(a, model);
    const LinkProfile lb = draw_link_profile(b, model);
    CHECK(la.sinr_db == lb.sinr_db);
    CHECK(la.bits_per_grant_tti == lb.bits_per_grant_tti);
  }
}
