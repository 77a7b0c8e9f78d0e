#include "memrelax/batch.hpp"

#include <optional>

namespace memrelax {

namespace {

Trajectory run(const SimulationJob& job) {
  return simulate(job.model, job.train, job.x0, job.t_end, job.config);
}

}  // namespace

std::vector<Trajectory> simulate_batch(std::span<const SimulationJob> jobs) {
  auto slots = parallel_map<std::optional<Trajectory>>(
      jobs.size(), [&](std::size_t i) { return std::optional<Trajectory>(run(jobs[i])); });
  std::vector<Trajectory> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<Trajectory> simulate_batch_serial(std::span<const SimulationJob> jobs) {
  std::vector<Trajectory> out;
  out.reserve(jobs.size());
  for (const SimulationJob& job : jobs) out.push_back(run(job));
  return out;
}

std::vector<std::vector<double>> circuit_solution_grid(const ThresholdCircuit& circ,
                                                       const CircuitAveragedParams& params,
                                                       std::span<const double> r0,
                                                       std::span<const double> times) {
  std::vector<std::vector<double>> out(r0.size(), std::vector<double>(times.size()));
  const long rows = static_cast<long>(r0.size());
  const long cols = static_cast<long>(times.size());
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(rows));
#pragma omp parallel for collapse(2) schedule(static)
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      try {
        out[i][j] = circuit_solution(circ, params, r0[i], times[j]);
      } catch (...) {
#pragma omp critical
        if (!errors[i]) errors[i] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<std::vector<double>> circuit_solution_grid_serial(const ThresholdCircuit& circ,
                                                              const CircuitAveragedParams& params,
                                                              std::span<const double> r0,
                                                              std::span<const double> times) {
  std::vector<std::vector<double>> out;
  for (double r : r0) {
    std::vector<double> row;
    row.reserve(times.size());
    for (double t : times) row.push_back(circuit_solution(circ, params, r, t));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace memrelax
