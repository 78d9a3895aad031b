// Legacy LTE access reservation: every active device contends in every RAO
// with a uniformly chosen preamble; only singleton preambles succeed.

#pragma once

#include <cstdint>
#include <vector>

#include "sgsim/rng.hpp"

namespace sgsim {

struct RaoOutcome {
  std::vector<std::uint32_t> successes;  // indices into the contender set
  std::vector<std::uint32_t> collided;
};

// One random-access opportunity with `contenders` devices and M preambles.
// Each contender picks a preamble uniformly at random; a device succeeds iff
// nobody else picked the same preamble.
RaoOutcome simulate_rao(std::uint32_t contenders, std::uint32_t preambles, Rng& rng);

// Single-shot approximation of access success for n devices sharing
// `opportunities` slot-preamble pairs: (1 - 1/opportunities)^(n-1).
// Used for cross-checks and fast sweeps, not for headline results.
double analytic_success_approx(std::uint32_t n, std::uint64_t opportunities);

}  // namespace sgsim
