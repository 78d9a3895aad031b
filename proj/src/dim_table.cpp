#include "sgsim/dim_table.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sgsim/rng.hpp"

namespace sgsim {

namespace {
constexpr std::uint32_t kInfeasible = std::numeric_limits<std::uint32_t>::max();
constexpr const char* kPolicy = "retry-next-slot-v1";

std::uint64_t probe_seed(const DimTableKey& key, std::uint32_t n, std::uint32_t slots,
                         std::uint64_t salt) {
  std::uint64_t h = splitmix64(0xd1e5u ^ key.preambles);
  h = splitmix64(h ^ static_cast<std::uint64_t>(std::llround(key.target * 1e6)));
  h = splitmix64(h ^ key.attempts_cap);
  h = splitmix64(h ^ (static_cast<std::uint64_t>(n) << 32 | slots));
  return splitmix64(h ^ salt);
}
}  // namespace

std::uint32_t serving_phase_trial(std::uint32_t n_devices, std::uint32_t slots,
                                  std::uint32_t preambles, std::uint32_t attempts_cap,
                                  Rng& rng) {
  if (n_devices == 0) return 0;
  if (slots == 0) return 0;

  struct Contender {
    std::uint32_t preamble;
    std::uint32_t attempts;
  };
  // Devices scheduled for the current slot and the next one.
  static thread_local std::vector<std::vector<Contender>> by_slot;
  by_slot.assign(slots, {});
  for (std::uint32_t d = 0; d < n_devices; ++d) {
    const auto s = static_cast<std::uint32_t>(rng.uniform_int(slots));
    by_slot[s].push_back(Contender{0, 0});
  }

  std::vector<std::uint32_t> preamble_count(preambles, 0);
  std::uint32_t successes = 0;
  for (std::uint32_t s = 0; s < slots; ++s) {
    auto& slot = by_slot[s];
    if (slot.empty()) continue;
    std::fill(preamble_count.begin(), preamble_count.end(), 0);
    for (auto& c : slot) {
      c.preamble = static_cast<std::uint32_t>(rng.uniform_int(preambles));
      c.attempts += 1;
      preamble_count[c.preamble] += 1;
    }
    for (auto& c : slot) {
      if (preamble_count[c.preamble] == 1) {
        successes += 1;
      } else if (s + 1 < slots && c.attempts < attempts_cap) {
        by_slot[s + 1].push_back(c);
      }
    }
  }
  return successes;
}

double serving_phase_success(std::uint32_t n_devices, std::uint32_t slots,
                             std::uint32_t preambles, std::uint32_t attempts_cap,
                             std::uint32_t trials, std::uint64_t seed_salt) {
  if (n_devices == 0) return 1.0;
  if (slots == 0) return 0.0;
  Rng rng(splitmix64(probe_seed(DimTableKey{preambles, 0.0, slots, attempts_cap}, n_devices,
                                slots, seed_salt)));
  std::uint64_t successes = 0;
  for (std::uint32_t t = 0; t < trials; ++t)
    successes += serving_phase_trial(n_devices, slots, preambles, attempts_cap, rng);
  return static_cast<double>(successes) / (static_cast<double>(n_devices) * trials);
}

DimensioningTable DimensioningTable::build(const DimTableKey& key, std::uint32_t trials) {
  if (key.preambles == 0) throw std::invalid_argument("dimensioning needs at least one preamble");
  if (!(key.target > 0.0 && key.target < 1.0))
    throw std::invalid_argument("dimensioning target must be in (0,1)");

  DimensioningTable table;
  table.key_ = key;
  const std::uint32_t n_max = 3 * key.preambles;
  table.slots_for_.assign(n_max + 1, 0);

  std::uint32_t s = 1;  // requirement is non-decreasing in n; resume search there
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    if (n == 1) {
      table.slots_for_[n] = 1;  // a lone device always succeeds
      continue;
    }
    std::uint32_t found = kInfeasible;
    for (; s <= key.max_slots; ++s) {
      const double p = serving_phase_success(n, s, key.preambles, key.attempts_cap, trials,
                                             /*seed_salt=*/1);
      if (p >= key.target) {
        found = s;
        break;
      }
    }
    table.slots_for_[n] = found;
    if (found == kInfeasible) {
      // Everything larger is infeasible too.
      for (std::uint32_t m = n + 1; m <= n_max; ++m) table.slots_for_[m] = kInfeasible;
      break;
    }
  }
  return table;
}

std::optional<std::uint32_t> DimensioningTable::required_slots(std::uint32_t n_hat) const {
  if (slots_for_.empty()) throw std::logic_error("dimensioning table not built");
  const std::uint32_t n = std::min<std::uint32_t>(n_hat, max_load());
  const std::uint32_t s = slots_for_[n];
  if (s == kInfeasible) return std::nullopt;
  return s;
}

std::optional<std::uint32_t> DimensioningTable::dimension(std::uint32_t n_hat,
                                                          std::uint32_t slots_available) const {
  const auto req = required_slots(n_hat);
  if (!req || *req > slots_available) return std::nullopt;
  return req;
}

std::string DimensioningTable::cache_file_name(const DimTableKey& key) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "dim_M%u_t%.6f_a%u_%s.csv", key.preambles, key.target,
                key.attempts_cap, kPolicy);
  return buf;
}

void DimensioningTable::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dimensioning table: " + path);
  out << "# sgsim dimensioning table v1\n";
  out << "preambles,target,attempts_cap,max_slots,policy\n";
  char head[128];
  std::snprintf(head, sizeof head, "%u,%.6f,%u,%u,%s\n", key_.preambles, key_.target,
                key_.attempts_cap, key_.max_slots, kPolicy);
  out << head << "n,slots\n";
  for (std::size_t n = 0; n < slots_for_.size(); ++n) {
    if (slots_for_[n] == kInfeasible)
      out << n << ",infeasible\n";
    else
      out << n << "," << slots_for_[n] << "\n";
  }
}

std::optional<DimensioningTable> DimensioningTable::load_csv(const std::string& path,
                                                             const DimTableKey& key) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != "# sgsim dimensioning table v1") return std::nullopt;
  if (!std::getline(in, line)) return std::nullopt;  // column header
  if (!std::getline(in, line)) return std::nullopt;
  std::uint32_t preambles = 0, attempts = 0, max_slots = 0;
  double target = 0.0;
  char policy[64] = {0};
  if (std::sscanf(line.c_str(), "%u,%lf,%u,%u,%63s", &preambles, &target, &attempts, &max_slots,
                  policy) != 5)
    return std::nullopt;
  if (preambles != key.preambles || attempts != key.attempts_cap ||
      max_slots != key.max_slots || std::abs(target - key.target) > 1e-9 ||
      std::string(policy) != kPolicy)
    return std::nullopt;
  if (!std::getline(in, line)) return std::nullopt;  // n,slots header

  DimensioningTable table;
  table.key_ = key;
  table.slots_for_.assign(3 * key.preambles + 1, kInfeasible);
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string n_str, s_str;
    if (!std::getline(ss, n_str, ',') || !std::getline(ss, s_str)) return std::nullopt;
    const auto n = static_cast<std::size_t>(std::stoul(n_str));
    if (n >= table.slots_for_.size()) return std::nullopt;
    table.slots_for_[n] =
        (s_str == "infeasible") ? kInfeasible : static_cast<std::uint32_t>(std::stoul(s_str));
  }
  return table;
}

DimensioningTable DimensioningTable::load_or_build(const std::string& cache_dir,
                                                   const DimTableKey& key, bool force_rebuild,
                                                   std::uint32_t trials) {
  namespace fs = std::filesystem;
  const fs::path path = fs::path(cache_dir) / cache_file_name(key);
  if (!force_rebuild) {
    if (auto cached = load_csv(path.string(), key)) return std::move(*cached);
  }
  DimensioningTable table = build(key, trials);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  table.save_csv(path.string());
  return table;
}

}  // namespace sgsim
