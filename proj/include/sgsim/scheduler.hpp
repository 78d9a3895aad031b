// Fair-fixed-assignment uplink scheduler over the reserved PRB budget.
//
// Every TTI the scheduler issues g = min(reserved_prbs / prbs_per_grant,
// backlog) grants of a fixed PRB count each. Grantees are drawn uniformly at
// random, without replacement, from the oldest (g + selection_window) queued
// reports. Whenever the backlog fits inside that window the selection is
// uniform over the whole backlog; under sustained overload the bounded window
// keeps service age-ordered instead of letting unlucky reports starve behind
// an unbounded random pool. A granted device returns to the selection pool on
// the next TTI; there are no multi-TTI reservations.

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sgsim/domain.hpp"
#include "sgsim/event_queue.hpp"
#include "sgsim/rng.hpp"

namespace sgsim {

struct BacklogEntry {
  std::uint32_t device_id = 0;
  std::uint32_t remaining_ttis = 0;
  TimeUs enqueue_time = 0;
};

class Backlog {
 public:
  // Appends a report. If the device already has a queued report the old entry
  // is dropped and the call reports the replacement, so the caller can mark
  // the superseded report expired.
  struct EnqueueResult {
    bool replaced_existing = false;
  };
  EnqueueResult enqueue(std::uint32_t device_id, std::uint32_t ttis_needed, TimeUs now);

  bool contains(std::uint32_t device_id) const { return index_.count(device_id) != 0; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  const BacklogEntry& at(std::size_t pos) const { return entries_[order_[pos]]; }

  // Decrements the entry's remaining TTIs; removes and returns true when the
  // report is finished.
  bool apply_grant(std::uint32_t device_id);

  void remove(std::uint32_t device_id);

 private:
  std::vector<BacklogEntry> entries_;       // slab; holes reused via free list
  std::vector<std::uint32_t> order_;        // FIFO order of slab indices
  std::vector<std::uint32_t> free_slots_;
  std::unordered_map<std::uint32_t, std::uint32_t> index_;  // device -> slab index

  void erase_from_order(std::uint32_t slab_index);
};

// One scheduling round. Returns the granted device ids (reports that finished
// this TTI are removed from the backlog; finished ids are appended to
// *completed when non-null).
std::vector<std::uint32_t> schedule_tti(Backlog& backlog, const CellConfig& cell, Rng& rng,
                                        std::vector<std::uint32_t>* completed = nullptr);

}  // namespace sgsim
