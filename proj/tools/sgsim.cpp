// Command-line scenario runner and sweep orchestrator.
//
//   sgsim run <scenario.json>        one scenario -> summary.csv / summary.json
//   sgsim sweep <sweep.json>         scenario grid -> combined CSV + SVG plots
//   sgsim compare <a.csv> <b.csv>    capacity-ratio report between two sweeps
//   sgsim build-dim-table            precompute serving-phase dimensioning tables
//
// Exit codes: 0 success, 1 configuration/validation error, 2 runtime error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "sgsim/compare.hpp"
#include "sgsim/engine.hpp"
#include "sgsim/metrics.hpp"
#include "sgsim/scenario_io.hpp"
#include "sgsim/svg_plot.hpp"
#include "sgsim/sweep.hpp"

namespace fs = std::filesystem;
using namespace sgsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (first) {
      t.header = fields;
      first = false;
    } else {
      t.rows.push_back(fields);
    }
  }
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path.string());
  out << content;
}

int column_of(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return static_cast<int>(i);
  throw std::runtime_error("CSV column missing: " + name);
}

// Builds the sweep plots from the written CSV text alone, so that re-plotting
// from the file yields identical SVGs.
void write_sweep_plots(const std::string& csv_text, const SweepSpec& spec, const fs::path& dir) {
  const CsvTable t = parse_csv(csv_text);
  const int c_n = column_of(t, "N");
  const int c_reserved = column_of(t, "reserved_prbs");
  const int c_class = column_of(t, "class");
  const int c_delay = column_of(t, "delay_max_ms");
  const int c_rel = column_of(t, "reliability");
  const int c_share = column_of(t, "slot_share");
  const bool device_sweep = spec.variable == SweepSpec::Variable::TotalDevices;
  const int c_x = device_sweep ? c_n : c_reserved;

  // (class, reserved) -> x -> worst delay over repetitions
  std::map<std::pair<std::string, std::string>, std::map<double, double>> delay;
  std::map<std::string, std::map<double, std::pair<double, int>>> rel, share;
  for (const auto& row : t.rows) {
    const double x = std::stod(row[c_x]);
    const std::string cls = row[c_class];
    if (!row[c_delay].empty()) {
      auto& cell = delay[{cls, row[c_reserved]}][x];
      cell = std::max(cell, std::stod(row[c_delay]));
    }
    auto& r = rel[cls][x];
    r.first += std::stod(row[c_rel]);
    r.second += 1;
    auto& s = share[cls][x];
    s.first += std::stod(row[c_share]);
    s.second += 1;
  }

  const std::string x_label = device_sweep ? "devices per cell" : "reserved PRBs";
  {
    LineChart chart("Worst-case uplink delay", x_label, "max delay [ms]");
    chart.set_log_x(device_sweep);
    chart.set_log_y(true);
    for (const auto& [key, points] : delay) {
      PlotSeries s;
      s.label = key.first + " @" + key.second + " PRB";
      for (const auto& [x, y] : points) {
        s.x.push_back(x);
        s.y.push_back(y);
      }
      chart.add_series(std::move(s));
    }
    write_file(dir / "delay_max.svg", chart.render());
  }
  {
    LineChart chart("Access reliability", x_label, "reliability");
    chart.set_log_x(device_sweep);
    for (const auto& [cls, points] : rel) {
      PlotSeries s;
      s.label = cls;
      for (const auto& [x, acc] : points) {
        s.x.push_back(x);
        s.y.push_back(acc.first / acc.second);
      }
      chart.add_series(std::move(s));
    }
    write_file(dir / "reliability.svg", chart.render());
  }
  if (spec.base.mode == SimMode::RachPriority || spec.base.mode == SimMode::Combined) {
    LineChart chart("RAO slot share", x_label, "share of RAO slots");
    chart.set_log_x(device_sweep);
    for (const auto& [cls, points] : share) {
      PlotSeries s;
      s.label = cls;
      for (const auto& [x, acc] : points) {
        s.x.push_back(x);
        s.y.push_back(acc.first / acc.second);
      }
      chart.add_series(std::move(s));
    }
    write_file(dir / "slot_share.svg", chart.render());
  }
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed) {
  ScenarioConfig cfg;
  try {
    cfg = load_scenario_file(scenario_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (seed) cfg.seed = *seed;
  const auto violations = validate_scenario(cfg);
  if (!violations.empty()) {
    std::cerr << "invalid scenario:\n";
    for (const auto& v : violations) std::cerr << "  - " << v << "\n";
    return kExitConfig;
  }

  const RunResult result = run_scenario(cfg);
  const MetricsSummary summary = summarize(result, cfg);
  fs::create_directories(out_dir);
  {
    std::ostringstream csv;
    write_csv(csv, {summary});
    write_file(fs::path(out_dir) / "summary.csv", csv.str());
  }
  {
    std::ostringstream js;
    write_json(js, {summary});
    write_file(fs::path(out_dir) / "summary.json", js.str());
  }
  std::cout << "wrote " << (fs::path(out_dir) / "summary.csv").string() << " and summary.json\n";
  return kExitOk;
}

int cmd_sweep(const std::string& sweep_path, const std::string& out_override, unsigned jobs) {
  SweepSpec spec;
  try {
    spec = load_sweep_file(sweep_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!out_override.empty()) spec.output_dir = out_override;
  if (const auto violations = validate_scenario(spec.base); !violations.empty()) {
    std::cerr << "invalid base scenario:\n";
    for (const auto& v : violations) std::cerr << "  - " << v << "\n";
    return kExitConfig;
  }

  const auto results = run_sweep(spec, jobs);
  fs::create_directories(spec.output_dir);

  std::ostringstream csv;
  csv << csv_header() << '\n';
  std::size_t failures = 0;
  std::ostringstream failure_log;
  for (const auto& r : results) {
    if (r.failed) {
      ++failures;
      failure_log << "point " << r.value << " rep " << r.repetition << ": " << r.error << "\n";
      continue;
    }
    append_csv_rows(csv, r.summary);
  }
  const fs::path dir(spec.output_dir);
  write_file(dir / "combined.csv", csv.str());
  if (failures > 0) {
    write_file(dir / "failures.txt", failure_log.str());
    std::cerr << failures << " point(s) failed; see failures.txt\n";
  }
  write_sweep_plots(csv.str(), spec, dir);
  std::cout << "wrote " << (dir / "combined.csv").string() << " (+plots), "
            << results.size() - failures << "/" << results.size() << " runs ok\n";
  return kExitOk;
}

int cmd_compare(const std::string& csv_a, const std::string& csv_b, const std::string& out_dir,
                std::vector<std::string> target_args) {
  std::map<TrafficClass, ReliabilityCurve> curves_a, curves_b;
  try {
    curves_a = reliability_curves_from_csv(read_file(csv_a));
    curves_b = reliability_curves_from_csv(read_file(csv_b));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  // Both files must cover the same sweep axis per class.
  for (const auto& [cls, curve_a] : curves_a) {
    if (!curves_b.count(cls)) continue;
    const auto& curve_b = curves_b.at(cls);
    std::vector<std::uint32_t> na, nb;
    for (const auto& p : curve_a) na.push_back(p.devices);
    for (const auto& p : curve_b) nb.push_back(p.devices);
    if (na != nb) {
      std::cerr << "config error: sweep axes differ for class " << to_string(cls) << "\n";
      return kExitConfig;
    }
  }

  std::map<TrafficClass, double> targets;
  for (const auto& c : default_class_table())
    if (c.reliability_target) targets[c.name] = *c.reliability_target;
  for (const auto& arg : target_args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos) {
      std::cerr << "config error: --target expects CLASS=value\n";
      return kExitConfig;
    }
    const auto cls = traffic_class_from_string(arg.substr(0, eq));
    if (!cls) {
      std::cerr << "config error: unknown class in --target\n";
      return kExitConfig;
    }
    targets[*cls] = std::stod(arg.substr(eq + 1));
  }

  const CompareReport report = compare_capacity(curves_a, curves_b, targets);
  fs::create_directories(out_dir);
  std::ostringstream out;
  out << "class,target,capacity_a,capacity_b,ratio\n";
  for (const auto& c : report.classes) {
    char line[256];
    std::snprintf(line, sizeof line, "%s,%.6f,%s,%s,%.4f\n", to_string(c.traffic_class), c.target,
                  c.capacity_a ? std::to_string(*c.capacity_a).c_str() : "never",
                  c.capacity_b ? std::to_string(*c.capacity_b).c_str() : "never", c.ratio);
    out << line;
  }
  write_file(fs::path(out_dir) / "compare.csv", out.str());
  std::cout << out.str();
  if (!report.note.empty()) std::cout << "note: " << report.note << "\n";

  LineChart chart("Access reliability: scheme A vs B", "devices per cell", "reliability");
  for (const auto& [cls, curve] : curves_a) {
    PlotSeries s;
    s.label = std::string(to_string(cls)) + " (A)";
    for (const auto& p : curve) {
      s.x.push_back(p.devices);
      s.y.push_back(p.reliability);
    }
    chart.add_series(std::move(s));
  }
  for (const auto& [cls, curve] : curves_b) {
    PlotSeries s;
    s.label = std::string(to_string(cls)) + " (B)";
    for (const auto& p : curve) {
      s.x.push_back(p.devices);
      s.y.push_back(p.reliability);
    }
    chart.add_series(std::move(s));
  }
  write_file(fs::path(out_dir) / "reliability_compare.svg", chart.render());
  return kExitOk;
}

int cmd_build_dim_table(std::uint32_t preambles, std::vector<double> targets,
                        std::uint32_t attempts_cap, std::uint32_t trials,
                        const std::string& cache_dir, bool force) {
  if (targets.empty()) targets = {0.999, 0.95};
  for (double target : targets) {
    const DimTableKey key{preambles, target, 256, attempts_cap};
    const auto table = DimensioningTable::load_or_build(cache_dir, key, force, trials);
    std::cout << "table M=" << preambles << " target=" << target << " ready ("
              << DimensioningTable::cache_file_name(key) << ", n_max=" << table.max_load()
              << ")\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTE uplink simulator for smart-grid telemetry traffic"};
  app.require_subcommand(1);

  std::string scenario_path, sweep_path, csv_a, csv_b;
  std::string out_dir = "out";
  std::uint64_t seed_value = 0;
  bool seed_given = false;
  unsigned jobs = 1;
  std::vector<std::string> target_args;
  std::uint32_t preambles = 12, attempts_cap = 10, trials = 100000;
  std::vector<double> table_targets;
  bool force_rebuild = false;

  auto* run = app.add_subcommand("run", "run one scenario file");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed_value, "override the scenario seed")
      ->each([&](const std::string&) { seed_given = true; });

  auto* sweep = app.add_subcommand("sweep", "run a sweep specification");
  sweep->add_option("sweep", sweep_path, "sweep JSON file")->required();
  sweep->add_option("--out", out_dir, "override the sweep output directory")->default_val("");
  sweep->add_option("--jobs", jobs, "parallel scenario runs");

  auto* compare = app.add_subcommand("compare", "capacity ratio between two sweep CSVs");
  compare->add_option("csv_a", csv_a, "baseline sweep CSV (e.g. legacy)")->required();
  compare->add_option("csv_b", csv_b, "candidate sweep CSV (e.g. priority)")->required();
  compare->add_option("--out", out_dir, "output directory");
  compare->add_option("--target", target_args, "override per-class target, CLASS=value");

  auto* build = app.add_subcommand("build-dim-table", "precompute dimensioning tables");
  build->add_option("--preambles", preambles, "preambles per RAO");
  build->add_option("--target", table_targets, "reliability target (repeatable)");
  build->add_option("--attempts-cap", attempts_cap, "per-phase attempt cap");
  build->add_option("--trials", trials, "Monte-Carlo trials per probe");
  build->add_option("--out", out_dir, "cache directory")->default_val("dim_cache");
  build->add_flag("--force-rebuild-table", force_rebuild, "ignore any cached table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(scenario_path, out_dir, seed_given ? std::optional(seed_value) : std::nullopt);
    if (sweep->parsed()) return cmd_sweep(sweep_path, out_dir, jobs);
    if (compare->parsed()) return cmd_compare(csv_a, csv_b, out_dir, target_args);
    if (build->parsed())
      return cmd_build_dim_table(preambles, table_targets, attempts_cap, trials, out_dir,
                                 force_rebuild);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
