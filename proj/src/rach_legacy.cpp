#include "sgsim/rach_legacy.hpp"

#include <cmath>
#include <stdexcept>

namespace sgsim {

RaoOutcome simulate_rao(std::uint32_t contenders, std::uint32_t preambles, Rng& rng) {
  if (preambles < 1) throw std::invalid_argument("simulate_rao: need at least one preamble");
  static thread_local std::vector<std::uint32_t> picks;
  static thread_local std::vector<std::uint32_t> count;
  picks.resize(contenders);
  count.assign(preambles, 0);
  for (std::uint32_t i = 0; i < contenders; ++i) {
    picks[i] = static_cast<std::uint32_t>(rng.uniform_int(preambles));
    count[picks[i]] += 1;
  }
  RaoOutcome out;
  for (std::uint32_t i = 0; i < contenders; ++i) {
    if (count[picks[i]] == 1)
      out.successes.push_back(i);
    else
      out.collided.push_back(i);
  }
  return out;
}

double analytic_success_approx(std::uint32_t n, std::uint64_t opportunities) {
  if (n < 1) throw std::invalid_argument("analytic_success_approx: n must be >= 1");
  if (opportunities < 1) throw std::invalid_argument("analytic_success_approx: opportunities must be >= 1");
  return std::pow(1.0 - 1.0 / static_cast<double>(opportunities), static_cast<double>(n - 1));
}

}  // namespace sgsim
