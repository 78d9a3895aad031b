// Seeded PRNG for deterministic simulation runs.
//
// Wraps std::mt19937_64 but implements all value mappings (bounded ints,
// reals, gaussians) by hand, since the std::*_distribution classes are
// implementation-defined and would break run-to-run reproducibility across
// standard libraries.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace sgsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives independent substream seeds from a master seed, so that e.g. the
// radio placement draws do not shift when the scheduler consumes a different
// number of random values.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream_id) {
  return splitmix64(master ^ splitmix64(stream_id + 0x51ed2701));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, n). n must be >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = gen_();
    while (v >= limit) v = gen_();
    return v % n;
  }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // Standard normal via Box-Muller (no state caching; one value per call).
  double normal() {
    double u1 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  // k distinct indices drawn uniformly from [0, n), in random order
  // (partial Fisher-Yates over a scratch index vector).
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k) {
    scratch_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) scratch_[i] = i;
    if (k > n) k = n;
    std::vector<std::uint32_t> out(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::uint32_t j = i + static_cast<std::uint32_t>(uniform_int(n - i));
      std::swap(scratch_[i], scratch_[j]);
      out[i] = scratch_[i];
    }
    return out;
  }

 private:
  std::mt19937_64 gen_;
  std::vector<std::uint32_t> scratch_;
};

}  // namespace sgsim
