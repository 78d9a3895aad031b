#include "sgsim/scenario_io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sgsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

// Tracks which keys of an object were consumed; anything left over is an error.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string context) : obj_(obj), context_(std::move(context)) {
    if (!obj.is_object()) fail(context_ + ": expected an object");
  }

  const json* get(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  template <typename T>
  void read(const char* key, T& out) {
    if (const json* v = get(key)) {
      try {
        out = v->get<T>();
      } catch (const json::exception&) {
        fail(context_ + "." + key + ": wrong type");
      }
    }
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) fail(context_ + ": unknown key \"" + it.key() + "\"");
    }
  }

 private:
  const json& obj_;
  std::string context_;
  std::set<std::string> seen_;
};

double parse_ratio(const json& v, const std::string& context) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) fail(context + ": ratio denominator is zero");
      return num / den;
    } catch (const std::invalid_argument&) {
      fail(context + ": cannot parse ratio \"" + s + "\"");
    }
  }
  fail(context + ": ratio_r must be a number or \"p/q\" string");
}

CellConfig parse_cell(const json& obj) {
  CellConfig cell;
  ObjectReader r(obj, "cell");
  r.read("total_prbs", cell.total_prbs);
  r.read("reserved_prbs", cell.reserved_prbs);
  r.read("prbs_per_grant", cell.prbs_per_grant);
  r.read("tti", cell.tti);
  r.read("preambles", cell.preambles);
  r.read("rao_period", cell.rao_period);
  r.read("max_arp_attempts", cell.max_arp_attempts);
  r.read("backoff_window", cell.backoff_window);
  r.read("selection_window", cell.selection_window);
  r.finish();
  return cell;
}

RadioModelConfig parse_radio(const json& obj) {
  RadioModelConfig radio;
  ObjectReader r(obj, "radio");
  r.read("cell_radius", radio.cell_radius);
  r.read("pathloss_intercept", radio.pathloss_intercept);
  r.read("pathloss_exponent_coeff", radio.pathloss_exponent_coeff);
  r.read("shadowing_sigma", radio.shadowing_sigma);
  r.read("tx_power", radio.tx_power);
  r.read("noise_figure", radio.noise_figure);
  r.read("interference_margin", radio.interference_margin);
  r.read("min_bits_per_grant", radio.min_bits_per_grant);
  r.read("max_spectral_eff", radio.max_spectral_eff);
  r.read("data_res_per_grant", radio.data_res_per_grant);
  r.read("retx_factor", radio.retx_factor);
  r.finish();
  return radio;
}

DeviceClassSpec parse_class(const json& obj, std::size_t index) {
  DeviceClassSpec spec;
  std::ostringstream ctx;
  ctx << "classes[" << index << "]";
  ObjectReader r(obj, ctx.str());
  if (const json* v = r.get("name")) {
    const auto cls = traffic_class_from_string(v->get<std::string>());
    if (!cls) fail(ctx.str() + ": unknown class name");
    spec.name = *cls;
  } else {
    fail(ctx.str() + ": missing name");
  }
  // Pull defaults for the named class, then override.
  for (const auto& d : default_class_table())
    if (d.name == spec.name) spec = d;
  r.read("report_size", spec.report_size);
  r.read("report_interval", spec.report_interval);
  if (const json* v = r.get("latency_deadline")) {
    if (v->is_null())
      spec.latency_deadline = std::nullopt;
    else
      spec.latency_deadline = v->get<double>();
  }
  if (const json* v = r.get("reliability_target")) {
    if (v->is_null())
      spec.reliability_target = std::nullopt;
    else
      spec.reliability_target = v->get<double>();
  }
  r.read("priority", spec.priority);
  r.finish();
  return spec;
}

ScenarioConfig parse_scenario(const json& obj) {
  ScenarioConfig cfg;
  ObjectReader r(obj, "scenario");
  r.read("total_devices", cfg.total_devices);
  if (const json* v = r.get("ratio_r")) cfg.ratio_r = parse_ratio(*v, "scenario");
  if (const json* v = r.get("mode")) {
    const auto mode = sim_mode_from_string(v->get<std::string>());
    if (!mode) fail("scenario.mode: unknown mode \"" + v->get<std::string>() + "\"");
    cfg.mode = *mode;
  }
  r.read("sim_duration", cfg.sim_duration);
  r.read("warmup", cfg.warmup);
  r.read("seed", cfg.seed);
  r.read("n_best_effort", cfg.n_best_effort);
  r.read("synchronized_arrivals", cfg.synchronized_arrivals);
  if (const json* v = r.get("cell")) cfg.cell = parse_cell(*v);
  if (const json* v = r.get("radio")) cfg.radio = parse_radio(*v);
  if (const json* v = r.get("classes")) {
    if (!v->is_array()) fail("scenario.classes: expected an array");
    cfg.classes.clear();
    for (std::size_t i = 0; i < v->size(); ++i) cfg.classes.push_back(parse_class((*v)[i], i));
  }
  r.finish();
  return cfg;
}

json read_json_text(const std::string& text, const std::string& what) {
  json obj = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) fail(what + ": malformed JSON");
  return obj;
}

}  // namespace

ScenarioConfig parse_scenario_json(const std::string& text) {
  return parse_scenario(read_json_text(text, "scenario"));
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_json(ss.str());
}

SweepSpec parse_sweep_json(const std::string& text, const std::string& base_dir) {
  const json obj = read_json_text(text, "sweep");
  SweepSpec sweep;
  ObjectReader r(obj, "sweep");
  if (const json* v = r.get("variable")) {
    const std::string s = v->get<std::string>();
    if (s == "TOTAL_DEVICES")
      sweep.variable = SweepSpec::Variable::TotalDevices;
    else if (s == "RESERVED_PRBS")
      sweep.variable = SweepSpec::Variable::ReservedPrbs;
    else
      fail("sweep.variable: must be TOTAL_DEVICES or RESERVED_PRBS");
  }
  r.read("values", sweep.values);
  r.read("reserved_prbs_values", sweep.reserved_prbs_values);
  r.read("repetitions", sweep.repetitions);
  r.read("output_dir", sweep.output_dir);
  const json* base = r.get("base");
  const json* base_file = r.get("base_file");
  if (base && base_file) fail("sweep: give either base or base_file, not both");
  if (base)
    sweep.base = parse_scenario(*base);
  else if (base_file)
    sweep.base = load_scenario_file(
        (std::filesystem::path(base_dir) / base_file->get<std::string>()).string());
  else
    fail("sweep: missing base scenario (base or base_file)");
  r.finish();

  if (sweep.values.empty()) fail("sweep.values: must not be empty");
  for (std::size_t i = 1; i < sweep.values.size(); ++i)
    if (sweep.values[i] <= sweep.values[i - 1]) fail("sweep.values: must be strictly increasing");
  if (sweep.repetitions < 1) fail("sweep.repetitions: must be >= 1");
  return sweep;
}

SweepSpec load_sweep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open sweep file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_json(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
  nlohmann::ordered_json j;
  j["total_devices"] = cfg.total_devices;
  j["ratio_r"] = cfg.ratio_r;
  j["mode"] = to_string(cfg.mode);
  j["sim_duration"] = cfg.sim_duration;
  j["warmup"] = cfg.warmup;
  j["seed"] = cfg.seed;
  j["n_best_effort"] = cfg.n_best_effort;
  j["synchronized_arrivals"] = cfg.synchronized_arrivals;
  j["cell"] = {{"total_prbs", cfg.cell.total_prbs},
               {"reserved_prbs", cfg.cell.reserved_prbs},
               {"prbs_per_grant", cfg.cell.prbs_per_grant},
               {"tti", cfg.cell.tti},
               {"preambles", cfg.cell.preambles},
               {"rao_period", cfg.cell.rao_period},
               {"max_arp_attempts", cfg.cell.max_arp_attempts},
               {"backoff_window", cfg.cell.backoff_window},
               {"selection_window", cfg.cell.selection_window}};
  j["radio"] = {{"cell_radius", cfg.radio.cell_radius},
                {"pathloss_intercept", cfg.radio.pathloss_intercept},
                {"pathloss_exponent_coeff", cfg.radio.pathloss_exponent_coeff},
                {"shadowing_sigma", cfg.radio.shadowing_sigma},
                {"tx_power", cfg.radio.tx_power},
                {"noise_figure", cfg.radio.noise_figure},
                {"interference_margin", cfg.radio.interference_margin},
                {"min_bits_per_grant", cfg.radio.min_bits_per_grant},
                {"max_spectral_eff", cfg.radio.max_spectral_eff},
                {"data_res_per_grant", cfg.radio.data_res_per_grant},
                {"retx_factor", cfg.radio.retx_factor}};
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : (cfg.classes.empty() ? default_class_table() : cfg.classes)) {
    nlohmann::ordered_json e;
    e["name"] = to_string(c.name);
    e["report_size"] = c.report_size;
    e["report_interval"] = c.report_interval;
    if (c.latency_deadline)
      e["latency_deadline"] = *c.latency_deadline;
    else
      e["latency_deadline"] = nullptr;
    if (c.reliability_target)
      e["reliability_target"] = *c.reliability_target;
    else
      e["reliability_target"] = nullptr;
    e["priority"] = c.priority;
    classes.push_back(e);
  }
  j["classes"] = classes;
  return j.dump(2);
}

}  // namespace sgsim
