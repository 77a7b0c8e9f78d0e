#pragma once

// Data-parallel kernels over independent runs. Every parallel kernel has a
// *_serial twin kept as the reference the tests compare against; results are
// always ordered by input index regardless of thread scheduling.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "memrelax/averaged.hpp"
#include "memrelax/exact_sim.hpp"

namespace memrelax {

struct SimulationJob {
  Model model;
  PulseTrain train;
  double x0;
  double t_end;
  IntegratorConfig config;
};

std::vector<Trajectory> simulate_batch(std::span<const SimulationJob> jobs);
std::vector<Trajectory> simulate_batch_serial(std::span<const SimulationJob> jobs);

/// R_M(t) on a (R0, t) grid; result[i][j] = circuit_solution(..., r0[i], times[j]).
std::vector<std::vector<double>> circuit_solution_grid(const ThresholdCircuit& circ,
                                                       const CircuitAveragedParams& params,
                                                       std::span<const double> r0,
                                                       std::span<const double> times);
std::vector<std::vector<double>> circuit_solution_grid_serial(const ThresholdCircuit& circ,
                                                              const CircuitAveragedParams& params,
                                                              std::span<const double> r0,
                                                              std::span<const double> times);

/// out[i] = fn(i) for i in [0, n), evaluated in parallel. The exception thrown
/// by the lowest failing index is rethrown after the loop.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<Result> out(n);
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class Result, class Fn>
std::vector<Result> serial_map(std::size_t n, Fn&& fn) {
  std::vector<Result> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

}  // namespace memrelax
