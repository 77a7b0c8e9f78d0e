// memrelax: simulate pulse-driven memristors, analyse their averaged dynamics
// and regenerate figure data.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "memrelax/commands.hpp"
#include "memrelax/scenario.hpp"

namespace {

using memrelax::CommandOptions;
using memrelax::ExitCode;

void emit(const memrelax::Scenario& s, const CommandOptions& opts, const std::string& fallback,
          const std::string& text) {
  if (const auto path = memrelax::output_target(s, opts, fallback)) {
    memrelax::write_text_file(*path, text);
    std::cerr << "wrote " << path->string() << '\n';
  } else {
    std::cout << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-driven memristor relaxation toolkit"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::string sweep_text;
  std::string figure_id;
  bool timestamp = false;

  auto* sim = app.add_subcommand("simulate", "Exact pulse-by-pulse simulation to CSV");
  sim->add_option("scenario", scenario_path, "Scenario JSON file")->required();

  auto* fp = app.add_subcommand("fixed-point", "Fixed point, stability and relaxation time");
  fp->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  fp->add_option("--sweep", sweep_text, "param:min:max:n[:log]");

  auto* cmp = app.add_subcommand("compare", "Exact vs time-averaged trajectories");
  cmp->add_option("scenario", scenario_path, "Scenario JSON file")->required();

  auto* fig = app.add_subcommand("figure", "Regenerate the data behind one figure");
  std::string valid_ids;
  for (const auto& id : memrelax::figure_ids()) valid_ids += (valid_ids.empty() ? "" : ", ") + id;
  fig->add_option("id", figure_id, "Figure id: " + valid_ids)->required();

  for (auto* sub : {sim, fp, cmp, fig}) {
    sub->add_option("--out", out_dir, "Output directory override");
    sub->add_flag("--timestamp", timestamp, "Embed a generation timestamp comment");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::validation);
  }

  CommandOptions opts;
  opts.timestamp = timestamp;
  if (!out_dir.empty()) opts.out_dir = std::filesystem::path(out_dir);

  try {
    if (fig->parsed()) {
      const auto paths = memrelax::run_figure(figure_id, opts.out_dir.value_or("."), opts);
      for (const auto& p : paths) std::cerr << "wrote " << p.string() << '\n';
      return 0;
    }
    const memrelax::Scenario scenario = memrelax::load_scenario(scenario_path);
    if (sim->parsed()) {
      emit(scenario, opts, "simulate.csv", memrelax::simulate_csv(scenario, opts));
    } else if (cmp->parsed()) {
      std::vector<memrelax::ComparisonRun> runs;
      const std::string text = memrelax::compare_csv(scenario, &runs, opts);
      emit(scenario, opts, "compare.csv", text);
    } else if (fp->parsed()) {
      std::optional<memrelax::SweepSpec> sweep = scenario.sweep;
      if (!sweep_text.empty()) sweep = memrelax::parse_sweep(sweep_text);
      if (sweep)
        emit(scenario, opts, "fixed_point.csv", memrelax::fixed_point_sweep_csv(scenario, *sweep, opts));
      else
        std::cout << memrelax::fixed_point_text(scenario);
    }
  } catch (...) {
    return static_cast<int>(memrelax::report_current_exception(std::cerr));
  }
  return 0;
}
