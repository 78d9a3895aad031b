#include <map>

#include "doctest.h"
#include "sgsim/engine.hpp"
#include "sgsim/scheduler.hpp"

using namespace sgsim;

namespace {
CellConfig cell_with(std::uint32_t reserved, std::uint32_t per_grant) {
  CellConfig cell;
  cell.reserved_prbs = reserved;
  cell.prbs_per_grant = per_grant;
  return cell;
}
}  // namespace

TEST_CASE("enqueue grows the backlog and replaces per-device entries") {
  Backlog backlog;
  CHECK(backlog.enqueue(1, 5, 0).replaced_existing == false);
  CHECK(backlog.size() == 1);

  // A device re-reporting while queued supersedes its old entry.
  const auto res = backlog.enqueue(1, 7, 1000);
  CHECK(res.replaced_existing == true);
  CHECK(backlog.size() == 1);
  CHECK(backlog.at(0).remaining_ttis == 7);

  Backlog big;
  for (std::uint32_t d = 0; d < 4000; ++d) big.enqueue(d, 1, 0);
  CHECK(big.size() == 4000);
}

TEST_CASE("grant count follows the PRB budget") {
  Rng rng(1);
  SUBCASE("6 reserved PRBs at 2 per grant serve exactly 3 devices") {
    Backlog backlog;
    for (std::uint32_t d = 0; d < 10; ++d) backlog.enqueue(d, 100, 0);
    const auto granted = schedule_tti(backlog, cell_with(6, 2), rng);
    CHECK(granted.size() == 3);
  }
  SUBCASE("capacity beyond demand grants everyone") {
    Backlog backlog;
    for (std::uint32_t d = 0; d < 10; ++d) backlog.enqueue(d, 100, 0);
    const auto granted = schedule_tti(backlog, cell_with(50, 2), rng);
    CHECK(granted.size() == 10);
  }
  SUBCASE("empty backlog grants nothing") {
    Backlog backlog;
    CHECK(schedule_tti(backlog, cell_with(6, 2), rng).empty());
  }
}

TEST_CASE("selection is uniform across a backlog that fits the window") {
  // Ten devices contending for 3 grants per TTI: each should be picked with
  // frequency 0.3.
  Backlog backlog;
  for (std::uint32_t d = 0; d < 10; ++d) backlog.enqueue(d, 1u << 30, 0);
  const CellConfig cell = cell_with(6, 2);
  Rng rng(12345);
  std::map<std::uint32_t, std::uint64_t> hits;
  const int ttis = 100000;
  for (int t = 0; t < ttis; ++t) {
    for (std::uint32_t id : schedule_tti(backlog, cell, rng)) hits[id] += 1;
  }
  for (std::uint32_t d = 0; d < 10; ++d) {
    const double freq = static_cast<double>(hits[d]) / ttis;
    CHECK(freq == doctest::Approx(0.3).epsilon(0.034));  // 0.3 +/- 0.01
  }
}

TEST_CASE("PRB and work conservation hold every TTI") {
  Backlog backlog;
  Rng rng(5);
  const CellConfig cell = cell_with(6, 2);
  std::uint32_t next_device = 0;
  for (int t = 0; t < 2000; ++t) {
    if (t % 3 == 0) backlog.enqueue(next_device++, 1 + t % 4, t * 1000);
    const std::size_t before = backlog.size();
    const auto granted = schedule_tti(backlog, cell, rng);
    CHECK(granted.size() * cell.prbs_per_grant <= cell.reserved_prbs);
    if (before > 0) CHECK(granted.size() >= 1);
  }
}

TEST_CASE("completed reports leave the backlog") {
  Backlog backlog;
  Rng rng(3);
  backlog.enqueue(7, 2, 0);
  std::vector<std::uint32_t> completed;
  schedule_tti(backlog, cell_with(2, 2), rng, &completed);
  CHECK(completed.empty());
  CHECK(backlog.size() == 1);
  schedule_tti(backlog, cell_with(2, 2), rng, &completed);
  CHECK(completed == std::vector<std::uint32_t>{7});
  CHECK(backlog.empty());
}

TEST_CASE("report delay is completion minus generation") {
  ReportRecord r;
  r.t_generated = 0;
  r.t_completed = seconds_to_us(0.020);
  CHECK(delay_of(r) == doctest::Approx(0.020));
  r.t_completed = seconds_to_us(0.200);
  CHECK(delay_of(r) == doctest::Approx(0.200));
  // One-TTI report granted immediately: the floor of the model.
  r.t_generated = seconds_to_us(3.0);
  r.t_completed = seconds_to_us(3.001);
  CHECK(delay_of(r) == doctest::Approx(0.001));
}
