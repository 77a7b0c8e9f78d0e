#include "memrelax/exact_sim.hpp"

#include <algorithm>
#include <cmath>

#include "memrelax/errors.hpp"

namespace memrelax {

namespace {

// Integrator rate; clamps the stage state to [0,1] before evaluation.
struct SegmentRate {
  const Model* model;
  double drive;

  double operator()(double x) const {
    const double xc = std::clamp(x, 0.0, 1.0);
    if (const auto* b = std::get_if<BiolekModel>(model)) {
      const DriveSign s = sign_of(drive);
      if (s == DriveSign::zero) return 0.0;
      const double shift = s == DriveSign::negative ? 1.0 : 0.0;
      return b->rate_magnitude(s) * (1.0 - std::pow(xc - shift, 2 * b->p_exponent()));
    }
    return threshold_circuit_rate(std::get<ThresholdCircuit>(*model), xc, drive);
  }
};

double rk4_step(const SegmentRate& f, double x, double h) {
  const double k1 = f(x);
  const double k2 = f(x + 0.5 * h * k1);
  const double k3 = f(x + 0.5 * h * k2);
  const double k4 = f(x + h * k3);
  return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Segment {
  double start;
  double end;
  double drive;
};

}  // namespace

Trajectory simulate(const Model& model, const PulseTrain& train, double x0, double t_end,
                    const IntegratorConfig& cfg) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw DomainError("simulate: x0 outside [0, 1]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("simulate: t_end must be > 0");
  if (cfg.substeps_per_segment < 1 || cfg.samples_per_period < 1)
    throw DomainError("simulate: integrator settings must be positive");

  const double T = train.period();
  const int spp = cfg.samples_per_period;
  const long n_samples = static_cast<long>(std::floor(t_end / T * spp + 1e-9)) + 1;
  auto sample_time = [&](long j) {
    return static_cast<double>(j / spp) * T + static_cast<double>(j % spp) * T / spp;
  };
  const double t_stop = sample_time(n_samples - 1);
  const bool clamp_pins = std::holds_alternative<ThresholdCircuit>(model);

  Trajectory traj{{}, model_name(model), train, x0, cfg};
  traj.samples.reserve(static_cast<std::size_t>(n_samples));

  double x = x0;
  long next = 0;
  // Emits every pending sample in [t0, t_hi) from the state x held at t0.
  auto emit_before = [&](double t_hi, double t0, const SegmentRate& f, bool pinned) {
    while (next < n_samples) {
      const double s = sample_time(next);
      if (s >= t_hi) break;
      double xs = x;
      if (s > t0 && !pinned) xs = std::clamp(rk4_step(f, x, s - t0), 0.0, 1.0);
      traj.samples.push_back({s, xs});
      ++next;
    }
  };

  const double t1 = train.tau_plus();
  const double t2 = train.tau_plus() + train.tau_minus();
  for (long k = 0; next < n_samples && static_cast<double>(k) * T <= t_stop; ++k) {
    const double base = static_cast<double>(k) * T;
    const Segment segments[] = {{base, base + t1, train.amp_plus()},
                                {base + t1, base + t2, train.amp_minus()},
                                {base + t2, base + T, 0.0}};
    for (const Segment& seg : segments) {
      if (seg.end <= seg.start) continue;
      if (seg.start > t_stop) break;
      const SegmentRate f{&model, seg.drive};
      const double h = (seg.end - seg.start) / cfg.substeps_per_segment;
      bool pinned = false;
      for (int i = 0; i < cfg.substeps_per_segment; ++i) {
        const double a = seg.start + i * h;
        const double b = i + 1 == cfg.substeps_per_segment ? seg.end : seg.start + (i + 1) * h;
        emit_before(b, a, f, pinned);
        if (next >= n_samples) break;
        if (pinned) continue;
        double xn = rk4_step(f, x, b - a);
        if (clamp_pins && (xn > 1.0 || xn < 0.0)) {
          const double edge = xn > 1.0 ? 1.0 : 0.0;
          const double push = f(edge);
          xn = edge;
          pinned = edge == 1.0 ? push > 0.0 : push < 0.0;
        }
        x = std::clamp(xn, 0.0, 1.0);
      }
      if (next >= n_samples) break;
    }
  }
  // A final sample that coincides with the end of the last segment.
  while (next < n_samples) {
    traj.samples.push_back({sample_time(next), x});
    ++next;
  }
  return traj;
}

std::vector<Sample> time_average(std::span<const Sample> samples, double window) {
  if (!(window > 0.0)) throw DomainError("time_average: window must be > 0");
  if (samples.size() < 2) throw DomainError("time_average: need at least two samples");
  const double t_first = samples.front().t;
  const double t_last = samples.back().t;
  if (t_last - t_first < window * (1.0 - 1e-9))
    throw DomainError("time_average: window longer than trajectory");

  const std::size_t n = samples.size();
  std::vector<double> cumulative(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double dt = samples[i].t - samples[i - 1].t;
    cumulative[i] = cumulative[i - 1] + 0.5 * dt * (samples[i].x + samples[i - 1].x);
  }
  const double slack = 1e-9 * window;
  auto integral_to = [&](double s) {
    if (s >= t_last - slack) return cumulative[n - 1];
    auto it = std::upper_bound(samples.begin(), samples.end(), s,
                               [](double v, const Sample& smp) { return v < smp.t; });
    const std::size_t j = static_cast<std::size_t>(it - samples.begin()) - 1;
    const double dt = samples[j + 1].t - samples[j].t;
    const double frac = (s - samples[j].t) / dt;
    if (frac <= slack / dt) return cumulative[j];
    const double xs = samples[j].x + frac * (samples[j + 1].x - samples[j].x);
    return cumulative[j] + 0.5 * (s - samples[j].t) * (samples[j].x + xs);
  };

  std::vector<Sample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = samples[i].t + window;
    if (s > t_last + slack) break;
    out.push_back({samples[i].t, (integral_to(s) - cumulative[i]) / window});
  }
  return out;
}

Trajectory time_average(const Trajectory& traj, double window) {
  Trajectory out{time_average(std::span<const Sample>(traj.samples), window), traj.model,
                 traj.train, traj.x0, traj.config};
  return out;
}

std::vector<Sample> stroboscopic(const Trajectory& traj) {
  const double T = traj.train.period();
  std::vector<Sample> out;
  for (const Sample& s : traj.samples) {
    const double k = std::round(s.t / T);
    if (std::abs(s.t - k * T) <= 1e-9 * T) out.push_back(s);
  }
  return out;
}

}  // namespace memrelax
