#include "memrelax/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "memrelax/averaged.hpp"
#include "memrelax/batch.hpp"
#include "memrelax/csv.hpp"
#include "memrelax/errors.hpp"

namespace memrelax {

namespace fs = std::filesystem;

namespace {

void write_preamble(CsvWriter& w, const std::string& title, const Scenario* s,
                    const CommandOptions& opts) {
  w.comment(title);
  if (opts.timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream os;
    os << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    w.comment("generated: " + os.str());
  }
  if (s) {
    w.comment("model: " + model_name(s->model));
    w.comment("scenario_hash: " + scenario_hash(*s));
    w.comment("scenario: " + scenario_to_json(*s).dump());
  }
}

std::string suffixed(const std::string& name, std::size_t i, std::size_t n) {
  return n == 1 ? name : name + "_" + std::to_string(i);
}

struct SweepRow {
  std::optional<double> location;
  std::optional<double> relaxation_time;
  bool stable = false;
  bool in_range = false;
};

SweepRow from_report(const FixedPointReport& rep) {
  return {rep.location, rep.relaxation_time, rep.stable(), rep.in_range};
}

void require_valid_circuit(const Scenario& s) {
  if (const auto* c = std::get_if<ThresholdCircuit>(&s.model)) {
    const ThresholdCheck check = validate_above_threshold(*c, s.train);
    if (!check.above_threshold)
      throw ValidityError("averaged circuit analysis needs above-threshold pulses: " +
                          check.diagnostic);
  }
}

SweepRow fixed_point_row(const Scenario& s) {
  if (const auto* b = std::get_if<BiolekModel>(&s.model)) {
    if (b->p_exponent() == 1) {
      const auto params = BiolekAveragedParams::from(*b, s.train);
      return {biolek_fixed_point(params.alpha), biolek_relaxation_time(params), true, true};
    }
    return from_report(numeric_fixed_point(AveragedField(s.model, s.train)));
  }
  require_valid_circuit(s);
  const auto& circ = std::get<ThresholdCircuit>(s.model);
  try {
    return from_report(circuit_fixed_point(circ, CircuitAveragedParams::from(circ, s.train)));
  } catch (const DegenerateFixedPoint&) {
    return {};
  }
}

std::string sweep_csv(const Scenario& s, const SweepSpec& sweep, const std::string& title,
                      const std::vector<std::string>& notes, const CommandOptions& opts) {
  const std::vector<double> values = sweep.values();
  // Validate the parameter name before fanning out.
  (void)with_parameter(s, sweep.parameter, values.front());
  const auto rows = parallel_map<SweepRow>(values.size(), [&](std::size_t i) {
    return fixed_point_row(with_parameter(s, sweep.parameter, values[i]));
  });

  std::ostringstream out;
  CsvWriter w(out);
  write_preamble(w, title, &s, opts);
  w.comment("sweep: " + sweep.parameter + " from " + format_number(sweep.min) + " to " +
            format_number(sweep.max) + ", " + std::to_string(sweep.points) + " points" +
            (sweep.log ? ", log-spaced" : ""));
  for (const auto& n : notes) w.comment(n);
  w.header({sweep.parameter, "location", "tau_a", "stable", "in_range"});
  for (std::size_t i = 0; i < values.size(); ++i) {
    const SweepRow& r = rows[i];
    w.row({values[i], r.location, r.relaxation_time, r.stable ? 1.0 : 0.0, r.in_range ? 1.0 : 0.0});
  }
  return out.str();
}

std::string comparison_csv(const Scenario& s, const std::string& title,
                           const std::vector<std::string>& notes,
                           std::vector<ComparisonRun>* runs_out, const CommandOptions& opts) {
  const std::vector<double> x0s = s.initial_states();
  auto slots = parallel_map<std::optional<ComparisonRun>>(x0s.size(), [&](std::size_t i) {
    return std::optional<ComparisonRun>(
        run_comparison(s.model, s.train, x0s[i], s.t_end(), s.integrator));
  });
  std::vector<ComparisonRun> runs;
  for (auto& r : slots) runs.push_back(std::move(*r));

  std::ostringstream out;
  CsvWriter w(out);
  write_preamble(w, title, &s, opts);
  for (const auto& n : notes) w.comment(n);
  const std::size_t n = runs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const ComparisonReport& r = runs[i].report;
    std::ostringstream line;
    line << "run " << i << ": x0=" << format_number(runs[i].x0)
         << " sup_deviation=" << format_number(r.sup_deviation)
         << " rms_deviation=" << format_number(r.rms_deviation)
         << " per_pulse_increment=" << format_number(r.per_pulse_increment) << " fitted_relaxation_time="
         << (r.fitted_relaxation_time ? format_number(*r.fitted_relaxation_time) : "n/a")
         << " analytic_relaxation_time="
         << (r.analytic_relaxation_time ? format_number(*r.analytic_relaxation_time) : "n/a");
    w.comment(line.str());
  }
  std::vector<std::string> names{"t"};
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(suffixed("x", i, n));
    names.push_back(suffixed("xbar", i, n));
    names.push_back(suffixed("xbar_closed", i, n));
  }
  w.header(names);
  const std::size_t rows = runs.front().averaged.size();
  for (std::size_t k = 0; k < rows; k += static_cast<std::size_t>(s.decimation)) {
    std::vector<std::optional<double>> v{runs.front().averaged[k].t};
    for (const auto& run : runs) {
      v.push_back(run.exact.samples[k].x);
      v.push_back(run.averaged[k].x);
      v.push_back(run.closed_form[k]);
    }
    w.row(v);
  }
  if (runs_out) *runs_out = std::move(runs);
  return out.str();
}

Scenario make_scenario(Model model, PulseTrain train, std::vector<double> x0, double t_end_periods,
                       IntegratorConfig cfg = {}) {
  Scenario s;
  s.model = std::move(model);
  s.train = train;
  if (const auto* c = std::get_if<ThresholdCircuit>(&s.model)) {
    s.r_on = c->r_on();
    s.r_off = c->r_off();
  }
  s.initial_values = std::move(x0);
  s.t_end_periods = t_end_periods;
  s.integrator = cfg;
  return s;
}

// Circuit behind fig3a/fig3b with T = 1, so beta T = 0.05 / V.
ThresholdCircuit fig3_circuit() { return ThresholdCircuit(0.05, 1.0, -0.7, 2000.0, 2000.0, 10000.0); }

const std::vector<double> kFigureInitialStates{0.0, 0.25, 0.5, 0.75, 1.0};

std::string figure_title(const std::string& id) { return "memrelax figure " + id; }

fs::path write_figure(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path path = dir / name;
  write_text_file(path, text);
  return path;
}

std::vector<fs::path> figure_2a(const fs::path& dir, const CommandOptions& opts) {
  const PulseTrain train(1.0, 0.2, 0.2, 1.0, -1.0);
  const BiolekModel model(0.05, -0.1);
  const auto params = BiolekAveragedParams::from(model, train);
  const Scenario s = make_scenario(model, train, kFigureInitialStates, 300.0);

  std::ostringstream out;
  CsvWriter w(out);
  write_preamble(w, figure_title("fig2a"), &s, opts);
  w.comment("averaged trajectories from the tanh solution; alpha=2, h(I+)tau+=0.01");
  w.comment("assumed default: initial states {0, 0.25, 0.5, 0.75, 1}");
  w.comment("assumed default: t in [0, 300] T, step 0.5 T");
  std::vector<std::string> names{"t"};
  for (double x0 : kFigureInitialStates) names.push_back("xbar_x0_" + format_number(x0));
  w.header(names);
  for (int i = 0; i <= 600; ++i) {
    const double t = 0.5 * i;
    std::vector<std::optional<double>> v{t};
    for (double x0 : kFigureInitialStates) v.push_back(biolek_solution(params, x0, t));
    w.row(v);
  }
  return {write_figure(dir, "fig2a.csv", out.str())};
}

std::vector<fs::path> figure_2b(const fs::path& dir, const CommandOptions& opts) {
  const Scenario s = make_scenario(BiolekModel(0.05, -0.05), PulseTrain(1.0, 0.2, 0.2, 1.0, -1.0),
                                   {0.5}, 1.0);
  const SweepSpec sweep{"alpha", 0.1, 10.0, 200, true};
  const std::string text =
      sweep_csv(s, sweep, figure_title("fig2b"),
                {"fixed point x_a and relaxation time tau_a (units of T); h(I+)tau+=0.01"}, opts);
  return {write_figure(dir, "fig2b.csv", text)};
}

std::vector<fs::path> figure_3a(const fs::path& dir, const CommandOptions& opts) {
  const ThresholdCircuit circ = fig3_circuit();
  const PulseTrain train(1.0, 0.4, 0.25, 2.2, -2.2);
  const auto params = CircuitAveragedParams::from(circ, train);
  std::vector<double> r0;
  for (double x0 : kFigureInitialStates) r0.push_back(memristance(x0, circ.r_on(), circ.r_off()));
  Scenario s = make_scenario(circ, train, r0, 1500.0);
  s.initial_coordinate = InitialCoordinate::memristance;

  std::vector<double> times;
  for (int i = 0; i <= 600; ++i) times.push_back(2.5 * i);
  const auto grid = circuit_solution_grid(circ, params, r0, times);

  std::ostringstream out;
  CsvWriter w(out);
  write_preamble(w, figure_title("fig3a"), &s, opts);
  w.comment("memristance from the implicit averaged solution; V+=-V-=2.2 V, tau+=0.4T, tau-=0.25T");
  w.comment("assumed default: R_M(0) at states {0, 0.25, 0.5, 0.75, 1}");
  w.comment("assumed default: t in [0, 1500] T, step 2.5 T");
  std::vector<std::string> names{"t"};
  for (double r : r0) names.push_back("R_M_R0_" + format_number(r));
  w.header(names);
  for (std::size_t j = 0; j < times.size(); ++j) {
    std::vector<std::optional<double>> v{times[j]};
    for (const auto& row : grid) v.push_back(row[j]);
    w.row(v);
  }
  return {write_figure(dir, "fig3a.csv", out.str())};
}

std::vector<fs::path> figure_3b(const fs::path& dir, const CommandOptions& opts) {
  Scenario s = make_scenario(fig3_circuit(), PulseTrain(1.0, 0.4, 0.25, 2.2, -2.2), {10000.0}, 1.0);
  s.initial_coordinate = InitialCoordinate::memristance;
  const SweepSpec sweep{"tau_minus", 0.0, 0.3, 301, false};
  const std::string text = sweep_csv(
      s, sweep, figure_title("fig3b"),
      {"fixed point R_a (ohm) and relaxation time tau_a (units of T) versus tau_- (units of T)",
       "assumed default: tau_- grid [0, 0.3] T, 301 points"},
      opts);
  return {write_figure(dir, "fig3b.csv", text)};
}

int periods_for(double duration, double period) {
  return static_cast<int>(std::ceil(duration / period - 1e-9));
}

std::vector<fs::path> figure_4a(const fs::path& dir, const CommandOptions& opts) {
  std::vector<fs::path> paths;
  const PulseTrain train(1.0, 0.2, 0.2, 1.0, -1.0);
  for (double minus_dose : {0.005, 0.01, 0.02}) {
    const double alpha = minus_dose / 0.01;
    const BiolekModel model(0.05, -minus_dose * 5.0);
    const double tau = biolek_relaxation_time(BiolekAveragedParams::from(model, train));
    const Scenario s = make_scenario(model, train, {0.0, 1.0}, periods_for(15.0 * tau, 1.0));
    const std::string text = comparison_csv(
        s, figure_title("fig4a"),
        {"exact (x), sliding-average (xbar) and tanh-solution (xbar_closed) trajectories",
         "tau+=tau-=0.2T, h(I+)tau+=0.01, |h(I-)tau-|=" + format_number(minus_dose) +
             " (alpha=" + format_number(alpha) + ")",
         "assumed default: |h(I-)tau-| in {0.005, 0.01, 0.02}; initial states {0, 1}",
         "closed form starts from the averaged initial value xbar(0)"},
        nullptr, opts);
    paths.push_back(write_figure(dir, "fig4a_alpha_" + format_number(alpha) + ".csv", text));
  }
  return paths;
}

std::vector<fs::path> figure_4b(const fs::path& dir, const CommandOptions& opts) {
  std::vector<fs::path> paths;
  // T0 = 1 with |h(I-)| 0.2 T0 = 0.01 and alpha = 0.5.
  const BiolekModel model(0.1, -0.05);
  for (double scale : {1.0, 5.0, 25.0}) {
    const double T = scale;
    const PulseTrain train(T, 0.2 * T, 0.2 * T, 1.0, -1.0);
    const double tau = biolek_relaxation_time(BiolekAveragedParams::from(model, train));
    IntegratorConfig cfg;
    cfg.samples_per_period = static_cast<int>(8 * scale);
    const Scenario s = make_scenario(model, train, {0.0, 1.0}, periods_for(15.0 * tau, T), cfg);
    const std::string text = comparison_csv(
        s, figure_title("fig4b"),
        {"exact (x), sliding-average (xbar) and tanh-solution (xbar_closed) trajectories",
         "alpha=0.5, tau+=tau-=0.2T, T=" + format_number(scale) + " T0, |h(I-)| 0.2 T0 = 0.01",
         "assumed default: T in {T0, 5 T0, 25 T0}; initial states {0, 1}",
         "closed form starts from the averaged initial value xbar(0)"},
        nullptr, opts);
    paths.push_back(write_figure(dir, "fig4b_T_" + format_number(scale) + ".csv", text));
  }
  return paths;
}

}  // namespace

ExitCode report_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const ValidityError& e) {
    err << "memrelax: validity error: " << e.what() << '\n';
    return ExitCode::validity;
  } catch (const NumericError& e) {
    err << "memrelax: numeric failure: " << e.what() << '\n';
    return ExitCode::numeric;
  } catch (const DegenerateFixedPoint& e) {
    err << "memrelax: numeric failure: " << e.what() << '\n';
    return ExitCode::numeric;
  } catch (const std::exception& e) {
    err << "memrelax: error: " << e.what() << '\n';
    return ExitCode::validation;
  }
}

std::string simulate_csv(const Scenario& s, const CommandOptions& opts) {
  std::vector<SimulationJob> jobs;
  for (double x0 : s.initial_states()) jobs.push_back({s.model, s.train, x0, s.t_end(), s.integrator});
  const std::vector<Trajectory> runs = simulate_batch(jobs);

  std::ostringstream out;
  CsvWriter w(out);
  write_preamble(w, "memrelax simulate", &s, opts);
  const std::size_t n = runs.size();
  std::vector<std::string> names{"t", "drive"};
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(suffixed("x", i, n));
    names.push_back(suffixed("R_M", i, n));
  }
  w.header(names);
  const std::size_t rows = runs.front().samples.size();
  for (std::size_t k = 0; k < rows; k += static_cast<std::size_t>(s.decimation)) {
    const double t = runs.front().samples[k].t;
    std::vector<std::optional<double>> v{t, drive_at(s.train, t)};
    for (const auto& run : runs) {
      v.push_back(run.samples[k].x);
      v.push_back(memristance(run.samples[k].x, s.r_on, s.r_off));
    }
    w.row(v);
  }
  return out.str();
}

std::string fixed_point_text(const Scenario& s) {
  std::ostringstream out;
  auto line = [&](const std::string& key, const std::string& value) {
    out << key << ": " << value << '\n';
  };
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : "none"; };
  auto print_report = [&](const FixedPointReport& r, const std::string& prefix) {
    line(prefix + "location", format_number(r.location));
    line(prefix + "coordinate", r.coordinate == Coordinate::state ? "state" : "memristance");
    line(prefix + "stability", to_string(r.stability));
    line(prefix + "relaxation_time", opt(r.relaxation_time));
    line(prefix + "in_range", r.in_range ? "true" : "false");
    line(prefix + "saturation_target", opt(r.saturation_target));
  };

  line("model", model_name(s.model));
  require_valid_circuit(s);
  const AveragedField field(s.model, s.train);
  if (const auto* b = std::get_if<BiolekModel>(&s.model)) {
    if (b->p_exponent() == 1) {
      const auto params = BiolekAveragedParams::from(*b, s.train);
      line("alpha", format_number(params.alpha));
      line("k", format_number(params.k));
      FixedPointReport r;
      r.location = biolek_fixed_point(params.alpha);
      r.stability = Stability::stable;
      r.relaxation_time = biolek_relaxation_time(params);
      r.in_range = true;
      print_report(r, "");
    }
  } else {
    const auto& circ = std::get<ThresholdCircuit>(s.model);
    const auto params = CircuitAveragedParams::from(circ, s.train);
    line("kappa", format_number(params.kappa));
    line("p", format_number(params.p_param));
    print_report(circuit_fixed_point(circ, params), "");
  }
  print_report(numeric_fixed_point(field), "numeric_");
  return out.str();
}

std::string fixed_point_sweep_csv(const Scenario& s, const SweepSpec& sweep,
                                  const CommandOptions& opts) {
  return sweep_csv(s, sweep, "memrelax fixed-point", {}, opts);
}

std::function<double(double)> closed_form_solution(const Model& model, const PulseTrain& train,
                                                   double xbar0) {
  if (const auto* b = std::get_if<BiolekModel>(&model)) {
    const auto params = BiolekAveragedParams::from(*b, train);
    return [params, xbar0](double t) { return biolek_solution(params, xbar0, t); };
  }
  const auto& circ = std::get<ThresholdCircuit>(model);
  const ThresholdCheck check = validate_above_threshold(circ, train);
  if (!check.above_threshold)
    throw ValidityError("averaged circuit solution needs above-threshold pulses: " + check.diagnostic);
  const auto params = CircuitAveragedParams::from(circ, train);
  const double r0 = memristance(xbar0, circ.r_on(), circ.r_off());
  // Fails early on an unstable or out-of-range fixed point.
  (void)circuit_solution(circ, params, r0, 0.0);
  return [circ, params, r0](double t) {
    return state_from_memristance(circuit_solution(circ, params, r0, t), circ.r_on(), circ.r_off());
  };
}

double analytic_relaxation_time(const Model& model, const PulseTrain& train) {
  if (const auto* b = std::get_if<BiolekModel>(&model))
    return biolek_relaxation_time(BiolekAveragedParams::from(*b, train));
  const auto& circ = std::get<ThresholdCircuit>(model);
  return circuit_relaxation_time(circ, CircuitAveragedParams::from(circ, train));
}

ComparisonRun run_comparison(const Model& model, const PulseTrain& train, double x0, double t_end,
                             const IntegratorConfig& cfg) {
  const double T = train.period();
  ComparisonRun run{x0, simulate(model, train, x0, t_end + T, cfg), {}, {}, {}};
  run.averaged = time_average(std::span<const Sample>(run.exact.samples), T);
  const auto closed = closed_form_solution(model, train, run.averaged.front().x);
  for (const Sample& s : run.averaged) run.closed_form.push_back(closed(s.t));

  const double tau = analytic_relaxation_time(model, train);
  run.report = compare(run.exact, closed, T);
  run.report.analytic_relaxation_time = tau;
  // Tail fit against the run's own end value.
  if (t_end >= 15.0 * tau) {
    try {
      run.report.fitted_relaxation_time =
          fit_relaxation_time(run.averaged, run.averaged.back().x, 5.0 * tau, 10.0 * tau);
    } catch (const FitError&) {
    }
  }
  return run;
}

std::string compare_csv(const Scenario& s, std::vector<ComparisonRun>* runs,
                        const CommandOptions& opts) {
  return comparison_csv(s, "memrelax compare",
                        {"closed form starts from the averaged initial value xbar(0)"}, runs, opts);
}

std::optional<fs::path> output_target(const Scenario& s, const CommandOptions& opts,
                                      const std::string& fallback) {
  if (opts.out_dir) {
    const fs::path name = s.output_path.empty() ? fs::path(fallback) : fs::path(s.output_path).filename();
    return *opts.out_dir / name;
  }
  if (!s.output_path.empty()) return fs::path(s.output_path);
  return std::nullopt;
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b"};
  return ids;
}

std::vector<fs::path> run_figure(const std::string& id, const fs::path& out_dir,
                                 const CommandOptions& opts) {
  if (id == "fig2a") return figure_2a(out_dir, opts);
  if (id == "fig2b") return figure_2b(out_dir, opts);
  if (id == "fig3a") return figure_3a(out_dir, opts);
  if (id == "fig3b") return figure_3b(out_dir, opts);
  if (id == "fig4a") return figure_4a(out_dir, opts);
  if (id == "fig4b") return figure_4b(out_dir, opts);
  std::string valid;
  for (const auto& v : figure_ids()) valid += (valid.empty() ? "" : ", ") + v;
  throw ConfigError("unknown figure id '" + id + "'; valid ids: " + valid);
}

}  // namespace memrelax
