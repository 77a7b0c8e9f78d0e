#include "memrelax/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "memrelax/errors.hpp"

namespace memrelax {

using nlohmann::json;

namespace {

// Field access with path-qualified diagnostics and rejection of unknown keys.
class BlockReader {
 public:
  BlockReader(const json& root, std::string path) : path_(std::move(path)) {
    if (!root.contains(path_)) throw ConfigError(path_ + ": missing block");
    block_ = &root.at(path_);
    if (!block_->is_object()) throw ConfigError(path_ + ": must be an object");
  }

  bool has(const std::string& key) const { return block_->contains(key); }

  double number(const std::string& key) {
    seen_.insert(key);
    if (!block_->contains(key)) throw ConfigError(field(key) + ": missing");
    const json& v = block_->at(key);
    if (!v.is_number()) throw ConfigError(field(key) + ": must be a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : (seen_.insert(key), fallback);
  }

  int integer_or(const std::string& key, int fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const json& v = block_->at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key) + ": must be an integer");
    return v.get<int>();
  }

  std::vector<double> numbers(const std::string& key) {
    seen_.insert(key);
    const json& v = block_->at(key);
    if (!v.is_array()) throw ConfigError(field(key) + ": must be an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) throw ConfigError(field(key) + ": must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::string text_or(const std::string& key, const std::string& fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const json& v = block_->at(key);
    if (!v.is_string()) throw ConfigError(field(key) + ": must be a string");
    return v.get<std::string>();
  }

  bool boolean_or(const std::string& key, bool fallback) {
    seen_.insert(key);
    if (!has(key)) return fallback;
    const json& v = block_->at(key);
    if (!v.is_boolean()) throw ConfigError(field(key) + ": must be true or false");
    return v.get<bool>();
  }

  void finish() const {
    for (auto it = block_->begin(); it != block_->end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(field(it.key()) + ": unknown field");
  }

  std::string field(const std::string& key) const { return path_ + "." + key; }

 private:
  std::string path_;
  const json* block_ = nullptr;
  std::set<std::string> seen_;
};

// Runs a constructor, converting invariant violations into a ConfigError for `block`.
template <class Fn>
auto build(const std::string& block, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw ConfigError(block + ": " + e.what());
  }
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void check_initial_values(const Scenario& s) {
  if (s.initial_values.empty()) throw ConfigError("run: initial-condition list is empty");
  for (double v : s.initial_values) {
    if (s.initial_coordinate == InitialCoordinate::state && !(v >= 0.0 && v <= 1.0))
      throw ConfigError("run.x0: value outside [0, 1]");
    if (s.initial_coordinate == InitialCoordinate::memristance && !(v >= s.r_on && v <= s.r_off))
      throw ConfigError("run.r0: value outside [r_on, r_off]");
  }
}

}  // namespace

std::vector<double> Scenario::initial_states() const {
  if (initial_coordinate == InitialCoordinate::state) return initial_values;
  std::vector<double> out;
  for (double r : initial_values) out.push_back(state_from_memristance(r, r_on, r_off));
  return out;
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    static const std::set<std::string> known{"biolek", "threshold_circuit", "pulse_train", "run",
                                             "output", "sweep"};
    if (!known.count(it.key())) throw ConfigError(it.key() + ": unknown block");
  }
  const bool has_biolek = j.contains("biolek");
  const bool has_circuit = j.contains("threshold_circuit");
  if (has_biolek == has_circuit)
    throw ConfigError("model: exactly one of 'biolek' or 'threshold_circuit' is required");

  Scenario s;
  if (has_biolek) {
    BlockReader b(j, "biolek");
    const double hp = b.number("h_plus");
    const double hm = b.number("h_minus");
    const int p = b.integer_or("p", 1);
    s.r_on = b.number_or("r_on", 2000.0);
    s.r_off = b.number_or("r_off", 10000.0);
    b.finish();
    s.model = build("biolek", [&] { return BiolekModel(hp, hm, p); });
    if (!(s.r_on > 0.0 && s.r_on < s.r_off)) throw ConfigError("biolek: need 0 < r_on < r_off");
  } else {
    BlockReader c(j, "threshold_circuit");
    const double beta = c.number("beta");
    const double v_on = c.number("v_on");
    const double v_off = c.number("v_off");
    const double r = c.number("r_series");
    s.r_on = c.number("r_on");
    s.r_off = c.number("r_off");
    c.finish();
    s.model = build("threshold_circuit",
                    [&] { return ThresholdCircuit(beta, v_on, v_off, r, s.r_on, s.r_off); });
  }

  {
    BlockReader t(j, "pulse_train");
    const double period = t.number("period");
    const double tp = t.number("tau_plus");
    const double tm = t.number("tau_minus");
    const double ap = t.number("amp_plus");
    const double am = t.number("amp_minus");
    t.finish();
    s.train = build("pulse_train", [&] { return PulseTrain(period, tp, tm, ap, am); });
  }

  {
    BlockReader r(j, "run");
    const bool has_x0 = r.has("x0");
    const bool has_r0 = r.has("r0");
    if (has_x0 == has_r0) throw ConfigError("run: exactly one of 'x0' or 'r0' is required");
    s.initial_coordinate = has_x0 ? InitialCoordinate::state : InitialCoordinate::memristance;
    s.initial_values = r.numbers(has_x0 ? "x0" : "r0");
    s.t_end_periods = r.number("t_end_periods");
    s.integrator.substeps_per_segment = r.integer_or("substeps_per_segment", 16);
    s.integrator.samples_per_period = r.integer_or("samples_per_period", 8);
    r.finish();
    if (!(s.t_end_periods >= 1.0)) throw ConfigError("run.t_end_periods: must be >= 1");
    if (s.integrator.substeps_per_segment < 1)
      throw ConfigError("run.substeps_per_segment: must be >= 1");
    if (s.integrator.samples_per_period < 1)
      throw ConfigError("run.samples_per_period: must be >= 1");
    check_initial_values(s);
  }

  if (j.contains("output")) {
    BlockReader o(j, "output");
    s.output_path = o.text_or("path", "");
    s.decimation = o.integer_or("decimation", 1);
    o.finish();
    if (s.decimation < 1) throw ConfigError("output.decimation: must be >= 1");
  }

  if (j.contains("sweep")) {
    BlockReader w(j, "sweep");
    SweepSpec spec;
    spec.parameter = w.text_or("parameter", "");
    spec.min = w.number("min");
    spec.max = w.number("max");
    spec.points = w.integer_or("points", 0);
    spec.log = w.boolean_or("log", false);
    w.finish();
    if (spec.parameter.empty()) throw ConfigError("sweep.parameter: missing");
    if (spec.points < 1) throw ConfigError("sweep.points: must be >= 1");
    if (spec.log && !(spec.min > 0.0 && spec.max > 0.0))
      throw ConfigError("sweep: log spacing needs positive bounds");
    s.sweep = spec;
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  if (const auto* b = std::get_if<BiolekModel>(&s.model)) {
    j["biolek"] = {{"h_plus", b->h_plus()},
                   {"h_minus", b->h_minus()},
                   {"p", b->p_exponent()},
                   {"r_on", s.r_on},
                   {"r_off", s.r_off}};
  } else {
    const auto& c = std::get<ThresholdCircuit>(s.model);
    j["threshold_circuit"] = {{"beta", c.beta()},         {"v_on", c.v_on()},
                              {"v_off", c.v_off()},       {"r_series", c.r_series()},
                              {"r_on", c.r_on()},         {"r_off", c.r_off()}};
  }
  j["pulse_train"] = {{"period", s.train.period()},
                      {"tau_plus", s.train.tau_plus()},
                      {"tau_minus", s.train.tau_minus()},
                      {"amp_plus", s.train.amp_plus()},
                      {"amp_minus", s.train.amp_minus()}};
  j["run"] = {{s.initial_coordinate == InitialCoordinate::state ? "x0" : "r0", s.initial_values},
              {"t_end_periods", s.t_end_periods},
              {"substeps_per_segment", s.integrator.substeps_per_segment},
              {"samples_per_period", s.integrator.samples_per_period}};
  j["output"] = {{"path", s.output_path}, {"decimation", s.decimation}};
  if (s.sweep) {
    j["sweep"] = {{"parameter", s.sweep->parameter},
                  {"min", s.sweep->min},
                  {"max", s.sweep->max},
                  {"points", s.sweep->points},
                  {"log", s.sweep->log}};
  }
  return j;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open scenario file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return scenario_from_json(j);
}

std::string scenario_hash(const Scenario& s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(scenario_to_json(s).dump())));
  return buf;
}

Scenario scenario_from_csv_comments(const std::string& csv_text) {
  static const std::string tag = "# scenario: ";
  std::istringstream in(csv_text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(tag, 0) == 0) return scenario_from_json(json::parse(line.substr(tag.size())));
    if (line.empty() || line[0] != '#') break;
  }
  throw ConfigError("csv: no scenario comment found");
}

std::vector<std::string> sweepable_parameters(const Scenario& s) {
  std::vector<std::string> common{"period", "tau_plus", "tau_minus"};
  if (std::holds_alternative<BiolekModel>(s.model)) {
    common.insert(common.end(), {"alpha", "h_plus", "h_minus"});
  } else {
    common.insert(common.end(),
                  {"amp_plus", "amp_minus", "beta", "v_on", "v_off", "r_series", "r_on", "r_off"});
  }
  return common;
}

Scenario with_parameter(const Scenario& s, const std::string& name, double value) {
  const auto names = sweepable_parameters(s);
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ConfigError("sweep: unknown parameter '" + name + "' for model " + model_name(s.model));

  Scenario out = s;
  const std::string where = "sweep " + name;
  double period = s.train.period(), tp = s.train.tau_plus(), tm = s.train.tau_minus();
  double ap = s.train.amp_plus(), am = s.train.amp_minus();
  if (name == "period") period = value;
  if (name == "tau_plus") tp = value;
  if (name == "tau_minus") tm = value;
  if (name == "amp_plus") ap = value;
  if (name == "amp_minus") am = value;
  out.train = build(where, [&] { return PulseTrain(period, tp, tm, ap, am); });

  if (const auto* b = std::get_if<BiolekModel>(&s.model)) {
    double hp = b->h_plus(), hm = b->h_minus();
    if (name == "h_plus") hp = value;
    if (name == "h_minus") hm = value;
    if (name == "alpha") {
      if (!(tm > 0.0)) throw ConfigError("sweep alpha: requires tau_minus > 0");
      hm = -value * hp * tp / tm;
    }
    out.model = build(where, [&] { return BiolekModel(hp, hm, b->p_exponent()); });
  } else {
    const auto& c = std::get<ThresholdCircuit>(s.model);
    double beta = c.beta(), v_on = c.v_on(), v_off = c.v_off(), r = c.r_series();
    double r_on = c.r_on(), r_off = c.r_off();
    if (name == "beta") beta = value;
    if (name == "v_on") v_on = value;
    if (name == "v_off") v_off = value;
    if (name == "r_series") r = value;
    if (name == "r_on") r_on = value;
    if (name == "r_off") r_off = value;
    out.model = build(where, [&] { return ThresholdCircuit(beta, v_on, v_off, r, r_on, r_off); });
    out.r_on = r_on;
    out.r_off = r_off;
  }
  return out;
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    if (log)
      out.push_back(std::exp(std::log(min) + f * (std::log(max) - std::log(min))));
    else
      out.push_back(min + f * (max - min));
  }
  return out;
}

SweepSpec parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 4 || parts.size() > 5)
    throw ConfigError("--sweep: expected param:min:max:n[:log], got '" + text + "'");

  SweepSpec spec;
  spec.parameter = parts[0];
  try {
    std::size_t used = 0;
    spec.min = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("min");
    spec.max = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("max");
    spec.points = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("n");
  } catch (const std::exception&) {
    throw ConfigError("--sweep: malformed number in '" + text + "'");
  }
  if (parts.size() == 5) {
    if (parts[4] != "log") throw ConfigError("--sweep: fifth field must be 'log'");
    spec.log = true;
  }
  if (spec.points < 1) throw ConfigError("--sweep: n must be >= 1");
  if (spec.log && !(spec.min > 0.0 && spec.max > 0.0))
    throw ConfigError("--sweep: log spacing needs positive bounds");
  return spec;
}

}  // namespace memrelax
