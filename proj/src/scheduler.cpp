#include "sgsim/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

namespace sgsim {

Backlog::EnqueueResult Backlog::enqueue(std::uint32_t device_id, std::uint32_t ttis_needed, TimeUs now) {
  if (ttis_needed == 0) throw std::invalid_argument("backlog entry needs at least one TTI");
  EnqueueResult res;
  if (auto it = index_.find(device_id); it != index_.end()) {
    erase_from_order(it->second);
    free_slots_.push_back(it->second);
    index_.erase(it);
    res.replaced_existing = true;
  }
  std::uint32_t slab;
  if (!free_slots_.empty()) {
    slab = free_slots_.back();
    free_slots_.pop_back();
  } else {
    slab = static_cast<std::uint32_t>(entries_.size());
    entries_.emplace_back();
  }
  entries_[slab] = BacklogEntry{device_id, ttis_needed, now};
  order_.push_back(slab);
  index_.emplace(device_id, slab);
  return res;
}

void Backlog::erase_from_order(std::uint32_t slab_index) {
  auto it = std::find(order_.begin(), order_.end(), slab_index);
  if (it != order_.end()) order_.erase(it);
}

bool Backlog::apply_grant(std::uint32_t device_id) {
  auto it = index_.find(device_id);
  if (it == index_.end()) throw std::logic_error("grant for device not in backlog");
  BacklogEntry& e = entries_[it->second];
  if (--e.remaining_ttis == 0) {
    erase_from_order(it->second);
    free_slots_.push_back(it->second);
    index_.erase(it);
    return true;
  }
  return false;
}

void Backlog::remove(std::uint32_t device_id) {
  auto it = index_.find(device_id);
  if (it == index_.end()) return;
  erase_from_order(it->second);
  free_slots_.push_back(it->second);
  index_.erase(it);
}

std::vector<std::uint32_t> schedule_tti(Backlog& backlog, const CellConfig& cell, Rng& rng,
                                        std::vector<std::uint32_t>* completed) {
  const std::uint32_t capacity = cell.reserved_prbs / cell.prbs_per_grant;
  const auto backlog_size = static_cast<std::uint32_t>(backlog.size());
  const std::uint32_t grants = std::min(capacity, backlog_size);
  std::vector<std::uint32_t> granted;
  if (grants == 0) return granted;

  const std::uint32_t pool = std::min(backlog_size, grants + cell.selection_window);
  std::vector<std::uint32_t> picks = rng.sample_without_replacement(pool, grants);
  std::sort(picks.begin(), picks.end());  // stable completion order

  granted.reserve(grants);
  for (std::uint32_t pos : picks) granted.push_back(backlog.at(pos).device_id);
  for (std::uint32_t id : granted) {
    if (backlog.apply_grant(id) && completed) completed->push_back(id);
  }
  return granted;
}

}  // namespace sgsim
