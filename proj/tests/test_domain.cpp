#include <cmath>

#include "doctest.h"
#include "sgsim/domain.hpp"

using namespace sgsim;

TEST_CASE("population split honors exact ratios") {
  const Population a = split_population(11, 1.0 / 10.0);
  CHECK(a.n_upmu == 1);
  CHECK(a.n_pmcsm == 10);

  const Population b = split_population(4, 1.0 / 3.0);
  CHECK(b.n_upmu == 1);
  CHECK(b.n_pmcsm == 3);
}

TEST_CASE("population split rounds to the closest realizable ratio") {
  const Population p = split_population(4000, 1.0 / 10.0);
  CHECK(p.n_upmu == 364);
  CHECK(p.n_pmcsm == 3636);

  // No other split of 4000 gets closer to the requested ratio.
  const double err_chosen = std::abs(364.0 / 3636.0 - 0.1);
  for (std::uint32_t u = 1; u < 4000; ++u) {
    const double err = std::abs(static_cast<double>(u) / (4000.0 - u) - 0.1);
    CHECK(err >= err_chosen - 1e-15);
  }
}

TEST_CASE("population split rejects degenerate inputs") {
  CHECK_THROWS_AS(split_population(0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(split_population(10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(split_population(10, -1.0), std::invalid_argument);
}

TEST_CASE("population split is total-preserving and monotone") {
  const double ratios[] = {1.0 / 10.0, 1.0 / 3.0, 0.5, 1.0, 2.7};
  for (double r : ratios) {
    std::uint32_t prev_upmu = 0, prev_pmcsm = 0;
    for (std::uint32_t total = 1; total <= 500; ++total) {
      const Population p = split_population(total, r);
      CHECK(p.n_upmu + p.n_pmcsm == total);
      CHECK(p.n_upmu >= prev_upmu);
      CHECK(p.n_pmcsm >= prev_pmcsm);
      prev_upmu = p.n_upmu;
      prev_pmcsm = p.n_pmcsm;
    }
  }
}

TEST_CASE("exactly divisible totals realize the ratio exactly") {
  // ratio p/q: any total divisible by p+q splits exactly.
  struct Case {
    std::uint32_t p, q;
  } cases[] = {{1, 10}, {1, 3}, {2, 5}, {3, 4}};
  for (const auto& c : cases) {
    const double r = static_cast<double>(c.p) / c.q;
    for (std::uint32_t k = 1; k <= 40; ++k) {
      const Population pop = split_population(k * (c.p + c.q), r);
      CHECK(pop.n_upmu == k * c.p);
      CHECK(pop.n_pmcsm == k * c.q);
    }
  }
}

TEST_CASE("default scenario validates cleanly") {
  ScenarioConfig cfg;
  cfg.total_devices = 100;
  CHECK(validate_scenario(cfg).empty());
}

TEST_CASE("default class table matches the deployment profile") {
  const auto table = default_class_table();
  const auto* upmu = find_class(table, TrafficClass::Upmu);
  const auto* pmcsm = find_class(table, TrafficClass::PmcSm);
  REQUIRE(upmu != nullptr);
  REQUIRE(pmcsm != nullptr);
  CHECK(upmu->report_size == 560);
  CHECK(pmcsm->report_size == 70);
  CHECK(upmu->report_interval == 1.0);
  CHECK(*upmu->reliability_target == doctest::Approx(0.999));
  CHECK(*pmcsm->reliability_target == doctest::Approx(0.95));
  CHECK(*upmu->latency_deadline == 1.0);
  CHECK(upmu->priority < pmcsm->priority);
}

TEST_CASE("validator reports violations as data") {
  ScenarioConfig cfg;
  cfg.total_devices = 10;

  SUBCASE("over-reserving PRBs") {
    cfg.cell.reserved_prbs = 60;
    cfg.cell.total_prbs = 50;
    const auto v = validate_scenario(cfg);
    REQUIRE(!v.empty());
    bool mentions_reserved = false;
    for (const auto& msg : v)
      if (msg.find("reserved") != std::string::npos) mentions_reserved = true;
    CHECK(mentions_reserved);
  }

  SUBCASE("warmup longer than the run") {
    cfg.sim_duration = 5.0;
    cfg.warmup = 10.0;
    const auto v = validate_scenario(cfg);
    REQUIRE(!v.empty());
    bool mentions_warmup = false;
    for (const auto& msg : v)
      if (msg.find("warmup") != std::string::npos) mentions_warmup = true;
    CHECK(mentions_warmup);
  }

  SUBCASE("rao grid must align with the TTI") {
    cfg.cell.rao_period = 0.0033;
    CHECK(!validate_scenario(cfg).empty());
  }

  SUBCASE("priority inversion between classes") {
    cfg.classes = default_class_table();
    cfg.classes[0].priority = 5;
    CHECK(!validate_scenario(cfg).empty());
  }
}
