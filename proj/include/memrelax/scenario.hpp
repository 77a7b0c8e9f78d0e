#pragma once

// Scenario files: one JSON object with exactly one model block
// ("biolek" or "threshold_circuit"), a "pulse_train" block, a "run" block
// and an optional "output" block.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "memrelax/exact_sim.hpp"
#include "memrelax/models.hpp"

namespace memrelax {

/// Invalid scenario content; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string parameter;
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  bool log = false;

  std::vector<double> values() const;

  bool operator==(const SweepSpec&) const = default;
};

enum class InitialCoordinate { state, memristance };

struct Scenario {
  Model model = BiolekModel(1.0, -1.0);
  PulseTrain train = PulseTrain(1.0, 0.0, 0.0, 1.0, -1.0);
  /// Memristance endpoints for the R_M column. Taken from the circuit for the
  /// threshold model; optional fields of the biolek block otherwise.
  double r_on = 2000.0;
  double r_off = 10000.0;
  /// Initial conditions as written in the file (x0 or R0 values).
  std::vector<double> initial_values;
  InitialCoordinate initial_coordinate = InitialCoordinate::state;
  double t_end_periods = 1.0;
  IntegratorConfig integrator;
  std::string output_path;
  int decimation = 1;
  /// Optional "sweep" block, used by the fixed-point command.
  std::optional<SweepSpec> sweep;

  double t_end() const { return t_end_periods * train.period(); }
  /// Initial conditions in state coordinates.
  std::vector<double> initial_states() const;

  bool operator==(const Scenario&) const = default;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::string& path);

/// FNV-1a 64 of the canonical (key-sorted, compact) JSON dump, as 16 hex digits.
std::string scenario_hash(const Scenario& s);

/// Recovers the scenario echoed in the "# scenario: " comment of a CSV produced by memrelax.
Scenario scenario_from_csv_comments(const std::string& csv_text);

/// Names accepted by with_parameter() for the scenario's model.
std::vector<std::string> sweepable_parameters(const Scenario& s);

/// Copy of `s` with one parameter replaced; "alpha" rescales h_minus at fixed widths.
Scenario with_parameter(const Scenario& s, const std::string& name, double value);

/// Parses "param:min:max:n[:log]".
SweepSpec parse_sweep(const std::string& text);

}  // namespace memrelax
