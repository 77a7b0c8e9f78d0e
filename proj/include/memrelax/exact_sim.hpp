#pragma once

#include <span>
#include <string>
#include <vector>

#include "memrelax/models.hpp"

namespace memrelax {

struct IntegratorConfig {
  /// Fixed RK4 steps inside every constant-drive segment.
  int substeps_per_segment = 16;
  /// Output samples per drive period (uniform grid t_j = j T / samples_per_period).
  int samples_per_period = 8;

  bool operator==(const IntegratorConfig&) const = default;
};

struct Sample {
  double t;
  double x;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::string model;
  PulseTrain train;
  double x0;
  IntegratorConfig config;
};

/// Integrates x' = f(x, drive_at(t)) from x(0) = x0 to t_end.
///
/// Steps are laid out per constant-drive segment, so pulse edges are hit
/// exactly for any substep count. Output samples inside a step are produced by
/// a separate partial RK4 step from the start of that step; they never perturb
/// the integration grid. Threshold-circuit states that reach 0 or 1 are pinned
/// there for the rest of the segment while the rate keeps pushing outward.
Trajectory simulate(const Model& model, const PulseTrain& train, double x0, double t_end,
                    const IntegratorConfig& cfg = {});

/// Sliding one-window average x_bar(t) = (1/w) * integral_t^{t+w} x, trapezoidal on
/// the sample grid (linear interpolation for the upper limit). Defined at every
/// sample with t + w <= t_end.
Trajectory time_average(const Trajectory& traj, double window);

/// Same quadrature on bare samples.
std::vector<Sample> time_average(std::span<const Sample> samples, double window);

/// x at integer multiples of the period, taken from the sample grid.
std::vector<Sample> stroboscopic(const Trajectory& traj);

}  // namespace memrelax
