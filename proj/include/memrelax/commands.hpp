#pragma once

// Command implementations behind the memrelax executable. Each command renders
// its CSV into a string.

#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "memrelax/analysis.hpp"
#include "memrelax/scenario.hpp"

namespace memrelax {

enum class ExitCode : int { success = 0, validation = 1, numeric = 2, validity = 3 };

/// Maps the in-flight exception to the exit-code contract and prints a diagnostic.
/// Must be called from inside a catch block.
ExitCode report_current_exception(std::ostream& err);

struct CommandOptions {
  /// Output directory override (--out).
  std::optional<std::filesystem::path> out_dir;
  /// Adds a "# generated:" comment with wall-clock time; off for reproducible output.
  bool timestamp = false;
};

std::string simulate_csv(const Scenario& s, const CommandOptions& opts = {});

std::string fixed_point_text(const Scenario& s);
std::string fixed_point_sweep_csv(const Scenario& s, const SweepSpec& sweep,
                                  const CommandOptions& opts = {});

/// Averaged-equation solution in state coordinates starting from x_bar(0) = xbar0.
std::function<double(double)> closed_form_solution(const Model& model, const PulseTrain& train,
                                                   double xbar0);
double analytic_relaxation_time(const Model& model, const PulseTrain& train);

struct ComparisonRun {
  double x0;
  Trajectory exact;
  std::vector<Sample> averaged;
  std::vector<double> closed_form;
  ComparisonReport report;
};

/// Exact run to t_end + T, its sliding average on [0, t_end], and the closed-form
/// solution started from the averaged initial value.
ComparisonRun run_comparison(const Model& model, const PulseTrain& train, double x0, double t_end,
                             const IntegratorConfig& cfg);

std::string compare_csv(const Scenario& s, std::vector<ComparisonRun>* runs = nullptr,
                        const CommandOptions& opts = {});

/// Where a command writes: --out/<file name of output.path>, output.path, or
/// --out/<fallback> when the scenario has no path. Empty means standard output.
std::optional<std::filesystem::path> output_target(const Scenario& s, const CommandOptions& opts,
                                                   const std::string& fallback);

void write_text_file(const std::filesystem::path& path, const std::string& text);

const std::vector<std::string>& figure_ids();

/// Writes the figure's CSV file(s) into out_dir and returns their paths.
std::vector<std::filesystem::path> run_figure(const std::string& id,
                                              const std::filesystem::path& out_dir,
                                              const CommandOptions& opts = {});

}  // namespace memrelax
