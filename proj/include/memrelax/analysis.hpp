#pragma once

#include <functional>
#include <optional>
#include <span>

#include "memrelax/exact_sim.hpp"

namespace memrelax {

struct ComparisonReport {
  double sup_deviation = 0.0;
  double rms_deviation = 0.0;
  /// Largest state swing within any one-period window of the exact trajectory.
  double per_pulse_increment = 0.0;
  std::optional<double> fitted_relaxation_time;
  std::optional<double> analytic_relaxation_time;
};

/// Tail fit requested alongside a comparison.
struct RelaxationTarget {
  double fixed_point;
  double t_begin;
  double t_end;
  double analytic_relaxation_time;
};

/// Minimum trajectory length accepted by compare(), in periods.
inline constexpr int kMinComparePeriods = 10;

/// Time-averages `exact` over `window` and measures it against `closed_form`
/// evaluated on the averaged sample times.
ComparisonReport compare(const Trajectory& exact, const std::function<double(double)>& closed_form,
                         double window, const std::optional<RelaxationTarget>& relaxation = {});

/// -1 / slope of the least-squares line through ln|x(t) - fixed_point| on
/// [t_begin, t_end]. Throws FitError when the samples cross the fixed point or
/// the log distance is not monotone.
double fit_relaxation_time(std::span<const Sample> samples, double fixed_point, double t_begin,
                           double t_end);

double fit_relaxation_time(const Trajectory& traj, double fixed_point, double t_begin, double t_end);

}  // namespace memrelax
