#include "sgsim/sweep.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

#include "sgsim/engine.hpp"

namespace sgsim {

ScenarioConfig scenario_for_point(const SweepSpec& spec, std::size_t point_index,
                                  std::uint32_t reserved_prbs, std::uint32_t repetition) {
  ScenarioConfig cfg = spec.base;
  const std::uint32_t value = spec.values[point_index];
  if (spec.variable == SweepSpec::Variable::TotalDevices)
    cfg.total_devices = value;
  else
    cfg.cell.reserved_prbs = value;
  if (reserved_prbs != 0) cfg.cell.reserved_prbs = reserved_prbs;
  cfg.seed = sweep_seed(spec.base.seed, point_index, repetition);
  return cfg;
}

std::vector<SweepPointResult> run_sweep(const SweepSpec& spec, unsigned jobs) {
  // 0 means "keep the point/base reserved_prbs".
  std::vector<std::uint32_t> reserved_variants = spec.reserved_prbs_values;
  if (reserved_variants.empty() || spec.variable == SweepSpec::Variable::ReservedPrbs)
    reserved_variants = {0};

  // Priority-mode sweeps share the dimensioning tables across all runs.
  const DimensioningTable* upmu_table = nullptr;
  const DimensioningTable* pmcsm_table = nullptr;
  DimensioningTable upmu_built, pmcsm_built;
  const bool priority =
      spec.base.mode == SimMode::RachPriority || spec.base.mode == SimMode::Combined;
  if (priority) {
    const auto classes = spec.base.classes.empty() ? default_class_table() : spec.base.classes;
    const auto* upmu = find_class(classes, TrafficClass::Upmu);
    const auto* pmcsm = find_class(classes, TrafficClass::PmcSm);
    if (!upmu || !pmcsm || !upmu->reliability_target || !pmcsm->reliability_target)
      throw std::runtime_error("priority sweep needs guaranteed UPMU and PMCSM classes");
    upmu_built = DimensioningTable::load_or_build(
        "dim_cache", DimTableKey{spec.base.cell.preambles, *upmu->reliability_target, 256,
                                 spec.base.cell.max_arp_attempts});
    pmcsm_built = DimensioningTable::load_or_build(
        "dim_cache", DimTableKey{spec.base.cell.preambles, *pmcsm->reliability_target, 256,
                                 spec.base.cell.max_arp_attempts});
    upmu_table = &upmu_built;
    pmcsm_table = &pmcsm_built;
  }

  struct Job {
    std::size_t point_index;
    std::uint32_t variant;  // 0 = keep
    std::uint32_t repetition;
  };
  std::vector<Job> jobs_list;
  for (std::size_t p = 0; p < spec.values.size(); ++p)
    for (std::uint32_t reserved : reserved_variants)
      for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep)
        jobs_list.push_back(Job{p, reserved, rep});

  std::vector<SweepPointResult> results(jobs_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs_list.size()) return;
      const Job& job = jobs_list[i];
      SweepPointResult& r = results[i];
      r.point_index = job.point_index;
      r.value = spec.values[job.point_index];
      r.repetition = job.repetition;
      const ScenarioConfig cfg =
          scenario_for_point(spec, job.point_index, job.variant, job.repetition);
      r.reserved_prbs = cfg.cell.reserved_prbs;
      try {
        const RunResult run = run_scenario(cfg, upmu_table, pmcsm_table);
        r.summary = summarize(run, cfg);
      } catch (const std::exception& e) {
        r.failed = true;
        r.error = e.what();
      }
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace sgsim
