// Monte-Carlo dimensioning table for contention serving phases.
//
// For a given preamble count M and reliability target, the table answers:
// what is the smallest number of RAO slots S such that n devices, each
// picking a uniformly random first-attempt slot and retrying in the next
// slot after every preamble collision, reach a per-device success
// probability of at least the target. Entries are estimated by seeded
// Monte-Carlo and are deterministic for a given key, independent of build
// order or thread count.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sgsim {

struct DimTableKey {
  std::uint32_t preambles = 12;
  double target = 0.999;
  std::uint32_t max_slots = 256;      // search ceiling per entry
  std::uint32_t attempts_cap = 10;    // preamble transmissions per phase pass
};

// Simulates one serving phase and returns the number of devices that
// completed contention within the phase. Used for table construction; an
// independent re-implementation lives in the test suite.
std::uint32_t serving_phase_trial(std::uint32_t n_devices, std::uint32_t slots,
                                  std::uint32_t preambles, std::uint32_t attempts_cap,
                                  class Rng& rng);

// Per-device success probability estimate over `trials` phase simulations,
// seeded deterministically from the inputs.
double serving_phase_success(std::uint32_t n_devices, std::uint32_t slots,
                             std::uint32_t preambles, std::uint32_t attempts_cap,
                             std::uint32_t trials, std::uint64_t seed_salt = 0);

class DimensioningTable {
 public:
  DimensioningTable() = default;

  // Builds entries for n in [0, 3 * preambles]. trials controls the MC
  // resolution of each probe.
  static DimensioningTable build(const DimTableKey& key, std::uint32_t trials = 100000);

  // Smallest S meeting the target for n_hat devices, or nullopt when no
  // S <= slots_available suffices (the caller treats that as infeasible).
  std::optional<std::uint32_t> dimension(std::uint32_t n_hat, std::uint32_t slots_available) const;

  // Required slots ignoring any availability limit (nullopt if the
  // requirement exceeded the build-time search ceiling).
  std::optional<std::uint32_t> required_slots(std::uint32_t n_hat) const;

  std::uint32_t max_load() const { return static_cast<std::uint32_t>(slots_for_.size()) - 1; }
  const DimTableKey& key() const { return key_; }

  // CSV cache, keyed by (preambles, target, policy, attempts_cap). Loading
  // verifies the key and format version.
  void save_csv(const std::string& path) const;
  static std::optional<DimensioningTable> load_csv(const std::string& path, const DimTableKey& key);

  // Convenience: load from cache_dir if present, otherwise build and save.
  static DimensioningTable load_or_build(const std::string& cache_dir, const DimTableKey& key,
                                         bool force_rebuild = false, std::uint32_t trials = 100000);

  static std::string cache_file_name(const DimTableKey& key);

 private:
  DimTableKey key_;
  // slots_for_[n] = required S; UINT32_MAX marks "beyond max_slots".
  std::vector<std::uint32_t> slots_for_;
};

}  // namespace sgsim
