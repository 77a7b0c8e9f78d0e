#pragma once

// Period-averaged dynamics x_bar' = (f(x_bar, A+) tau+ + f(x_bar, A-) tau-) / T,
// its closed-form solutions for both models, and fixed-point analysis.

#include <optional>
#include <string>
#include <tuple>

#include "memrelax/exact_sim.hpp"
#include "memrelax/models.hpp"

namespace memrelax {

enum class Stability { stable, unstable, marginal };

std::string to_string(Stability s);

enum class Coordinate { state, memristance };

struct FixedPointReport {
  Coordinate coordinate = Coordinate::state;
  /// x_a (state) or R_a (ohms). May lie outside the admissible interval.
  double location = 0.0;
  Stability stability = Stability::marginal;
  /// Present only for a stable fixed point inside the admissible interval.
  std::optional<double> relaxation_time;
  bool in_range = false;
  /// Boundary the state saturates at when no fixed point is admissible.
  std::optional<double> saturation_target;
  /// Admissible interval: [0,1] or [R_on, R_off].
  double lower_bound = 0.0;
  double upper_bound = 1.0;

  bool stable() const { return stability == Stability::stable; }
};

class AveragedField {
 public:
  AveragedField(Model model, PulseTrain train);

  const Model& model() const { return model_; }
  const PulseTrain& train() const { return train_; }
  /// False for a threshold circuit whose pulses do not always exceed the thresholds.
  bool valid() const { return check_.above_threshold; }
  const std::string& validity_diagnostic() const { return check_.diagnostic; }

 private:
  Model model_;
  PulseTrain train_;
  ThresholdCheck check_;
};

/// Throws ValidityError for an invalid circuit field, DomainError for x_bar outside [0,1].
double averaged_rate(const AveragedField& field, double xbar);

struct BiolekAveragedParams {
  /// |h(I-) tau-| / (h(I+) tau+)
  double alpha;
  /// h(I+) tau+ / T, 1/time
  double k;

  BiolekAveragedParams(double alpha, double k);
  static BiolekAveragedParams from(const BiolekModel& model, const PulseTrain& train);

  /// sqrt(1 - alpha + alpha^2), never below sqrt(3)/2.
  double discriminant() const;
};

/// Near alpha = 1 biolek_solution switches to the pure exponential form.
inline constexpr double kBiolekBranchTolerance = 1e-8;

double biolek_averaged_ode_rhs(const BiolekAveragedParams& params, double xbar);
double biolek_solution(const BiolekAveragedParams& params, double x0, double t);
double biolek_fixed_point(double alpha);
double biolek_relaxation_time(const BiolekAveragedParams& params);

struct SymmetryImage {
  double alpha;
  double x0;
  double t;
};

/// (alpha, x0, t) -> (1/alpha, 1 - x0, t/alpha). With the same k,
/// biolek_solution({1/alpha,k}, 1-x0, t) == 1 - biolek_solution({alpha,k}, x0, t/alpha).
SymmetryImage biolek_symmetry_map(double alpha, double x0, double t);

struct CircuitAveragedParams {
  /// V+ tau+ + V- tau-
  double kappa;
  /// V_on tau+ + V_off tau-
  double p_param;
  double period;

  static CircuitAveragedParams from(const ThresholdCircuit& circ, const PulseTrain& train);
};

/// R_a = R p / (kappa - p). Throws DegenerateFixedPoint when kappa == p.
double circuit_fixed_location(const ThresholdCircuit& circ, const CircuitAveragedParams& params);

/// Linearized decay rate around R_a, in 1/time; positive means stable.
double circuit_decay_rate(const ThresholdCircuit& circ, const CircuitAveragedParams& params);

/// dR_M/dt of the averaged circuit equation, unrestricted in R_M.
double circuit_memristance_rate(const ThresholdCircuit& circ, const CircuitAveragedParams& params,
                                double r_m);

FixedPointReport circuit_fixed_point(const ThresholdCircuit& circ,
                                     const CircuitAveragedParams& params);

double circuit_relaxation_time(const ThresholdCircuit& circ, const CircuitAveragedParams& params);

/// Absolute tolerance of the implicit-solution root finder, ohms.
inline constexpr double kCircuitSolutionTolerance = 1e-9;

/// R_M(t) from the implicit logarithmic solution, via bisection between R0 and R_a.
double circuit_solution(const ThresholdCircuit& circ, const CircuitAveragedParams& params,
                        double r0, double t, double tolerance = kCircuitSolutionTolerance);

struct NumericFixedPointOptions {
  int scan_cells = 1024;
  double tolerance = 1e-12;
  double derivative_step = 1e-6;
};

/// Scan + bisection for zeros of averaged_rate on [0,1], classified by the sign
/// of a central finite-difference derivative. Reports in state coordinates.
FixedPointReport numeric_fixed_point(const AveragedField& field,
                                     const NumericFixedPointOptions& options = {});

/// RK4 integration of the averaged equation itself, state clamped to [0,1].
/// Samples every `sample_every` steps (and at t_end).
Trajectory integrate_averaged(const AveragedField& field, double x0, double t_end, long steps,
                              long sample_every = 1);

}  // namespace memrelax
