#include "memrelax/averaged.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "memrelax/errors.hpp"

namespace memrelax {

namespace {

void require_state(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << what << ": state " << x << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

void require_time(double t, const char* what) {
  if (!(t >= 0.0)) throw DomainError(std::string(what) + ": t must be >= 0");
}

Stability classify(double derivative) {
  if (derivative < 0.0) return Stability::stable;
  if (derivative > 0.0) return Stability::unstable;
  return Stability::marginal;
}

ThresholdCheck field_check(const Model& model, const PulseTrain& train) {
  if (const auto* c = std::get_if<ThresholdCircuit>(&model)) return validate_above_threshold(*c, train);
  return {true, 0.0, 0.0, "biolek model: no threshold assumption"};
}

}  // namespace

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::unstable:
      return "unstable";
    case Stability::marginal:
      break;
  }
  return "marginal";
}

AveragedField::AveragedField(Model model, PulseTrain train)
    : model_(std::move(model)), train_(train), check_(field_check(model_, train_)) {}

double averaged_rate(const AveragedField& field, double xbar) {
  require_state(xbar, "averaged_rate");
  const PulseTrain& tr = field.train();
  if (const auto* b = std::get_if<BiolekModel>(&field.model())) {
    return (biolek_rate(*b, xbar, DriveSign::positive) * tr.tau_plus() +
            biolek_rate(*b, xbar, DriveSign::negative) * tr.tau_minus()) /
           tr.period();
  }
  if (!field.valid())
    throw ValidityError("averaged circuit equation requires above-threshold pulses: " +
                        field.validity_diagnostic());
  const auto& circ = std::get<ThresholdCircuit>(field.model());
  const auto params = CircuitAveragedParams::from(circ, tr);
  const double rm = memristance(xbar, circ.r_on(), circ.r_off());
  return circ.beta() / tr.period() * (rm / (circ.r_series() + rm) * params.kappa - params.p_param);
}

// ---------------------------------------------------------------------------
// Biolek window model

BiolekAveragedParams::BiolekAveragedParams(double alpha_, double k_) : alpha(alpha_), k(k_) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("biolek params: alpha must be > 0");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("biolek params: k must be > 0");
}

BiolekAveragedParams BiolekAveragedParams::from(const BiolekModel& model, const PulseTrain& train) {
  if (model.p_exponent() != 1)
    throw InvalidRequest("closed-form averaged dynamics exists for p = 1 only");
  const double plus = model.h_plus() * train.tau_plus();
  if (!(plus > 0.0)) throw DomainError("biolek params: positive pulse has zero width");
  const double minus = std::abs(model.h_minus() * train.tau_minus());
  return {minus / plus, plus / train.period()};
}

double BiolekAveragedParams::discriminant() const { return std::sqrt(1.0 - alpha + alpha * alpha); }

double biolek_averaged_ode_rhs(const BiolekAveragedParams& params, double xbar) {
  require_state(xbar, "biolek_averaged_ode_rhs");
  const double a = params.alpha;
  return params.k * ((a - 1.0) * xbar * xbar - 2.0 * a * xbar + 1.0);
}

double biolek_solution(const BiolekAveragedParams& params, double x0, double t) {
  require_state(x0, "biolek_solution");
  require_time(t, "biolek_solution");
  const double a = params.alpha;
  if (std::abs(a - 1.0) <= kBiolekBranchTolerance)
    return 0.5 + (x0 - 0.5) * std::exp(-2.0 * params.k * t);

  const double d = params.discriminant();
  const double u = std::tanh(params.k * d * t);
  const double num = (a * x0 - 1.0) * u - d * x0;
  const double den = ((a - 1.0) * x0 - a) * u - d;
  return std::clamp(num / den, 0.0, 1.0);
}

double biolek_fixed_point(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("biolek_fixed_point: alpha must be > 0");
  // (alpha - D) / (alpha - 1) rationalized; exact 1/2 at alpha = 1.
  return 1.0 / (alpha + std::sqrt(1.0 - alpha + alpha * alpha));
}

double biolek_relaxation_time(const BiolekAveragedParams& params) {
  return 1.0 / (2.0 * params.k * params.discriminant());
}

SymmetryImage biolek_symmetry_map(double alpha, double x0, double t) {
  if (!(alpha > 0.0)) throw DomainError("biolek_symmetry_map: alpha must be > 0");
  return {1.0 / alpha, 1.0 - x0, t / alpha};
}

// ---------------------------------------------------------------------------
// Threshold circuit

CircuitAveragedParams CircuitAveragedParams::from(const ThresholdCircuit& circ,
                                                  const PulseTrain& train) {
  return {train.amp_plus() * train.tau_plus() + train.amp_minus() * train.tau_minus(),
          circ.v_on() * train.tau_plus() + circ.v_off() * train.tau_minus(), train.period()};
}

double circuit_fixed_location(const ThresholdCircuit& circ, const CircuitAveragedParams& params) {
  const double denom = params.kappa - params.p_param;
  if (denom == 0.0) throw DegenerateFixedPoint("kappa == p: fixed point at infinity");
  return circ.r_series() * params.p_param / denom;
}

double circuit_decay_rate(const ThresholdCircuit& circ, const CircuitAveragedParams& params) {
  if (params.kappa == 0.0) return 0.0;
  const double r = circ.r_series();
  const double ra = circuit_fixed_location(circ, params);
  const double span = circ.r_off() - circ.r_on();
  return circ.beta() * span / params.period * params.kappa * r / ((r + ra) * (r + ra));
}

double circuit_memristance_rate(const ThresholdCircuit& circ, const CircuitAveragedParams& params,
                                double r_m) {
  const double span = circ.r_off() - circ.r_on();
  return -circ.beta() * span / params.period *
         (r_m / (circ.r_series() + r_m) * params.kappa - params.p_param);
}

FixedPointReport circuit_fixed_point(const ThresholdCircuit& circ,
                                     const CircuitAveragedParams& params) {
  FixedPointReport rep;
  rep.coordinate = Coordinate::memristance;
  rep.lower_bound = circ.r_on();
  rep.upper_bound = circ.r_off();
  rep.location = circuit_fixed_location(circ, params);
  const double decay = circuit_decay_rate(circ, params);
  rep.stability = classify(-decay);
  rep.in_range = circ.r_on() < rep.location && rep.location < circ.r_off();
  if (rep.in_range) {
    if (rep.stable()) rep.relaxation_time = 1.0 / decay;
  } else {
    // Sign of dR_M/dt is uniform over [R_on, R_off] when R_a lies outside it.
    const double mid = 0.5 * (circ.r_on() + circ.r_off());
    const double drift = circuit_memristance_rate(circ, params, mid);
    if (drift < 0.0) rep.saturation_target = circ.r_on();
    if (drift > 0.0) rep.saturation_target = circ.r_off();
  }
  return rep;
}

double circuit_relaxation_time(const ThresholdCircuit& circ, const CircuitAveragedParams& params) {
  const FixedPointReport rep = circuit_fixed_point(circ, params);
  if (!rep.stable() || !rep.in_range)
    throw InvalidRequest("relaxation time requires a stable fixed point inside [R_on, R_off]");
  const double gap = params.kappa - params.p_param;
  return params.period * params.kappa * circ.r_series() /
         (circ.beta() * (circ.r_off() - circ.r_on()) * gap * gap);
}

double circuit_solution(const ThresholdCircuit& circ, const CircuitAveragedParams& params,
                        double r0, double t, double tolerance) {
  require_time(t, "circuit_solution");
  if (!(r0 >= circ.r_on() && r0 <= circ.r_off()))
    throw DomainError("circuit_solution: R0 outside [R_on, R_off]");
  const FixedPointReport rep = circuit_fixed_point(circ, params);
  if (!rep.stable() || !rep.in_range)
    throw InvalidRequest("circuit_solution: no stable fixed point inside [R_on, R_off]; simulate instead");

  const double ra = rep.location;
  const double d0 = r0 - ra;
  if (std::abs(d0) < 1e-9) return ra;
  if (t == 0.0) return r0;

  // R_M = R_a + s d0 with s in (0, 1]; the implicit residual is increasing in s,
  // -inf at s -> 0 and C t >= 0 at s = 1.
  const double drive = circ.beta() * (circ.r_off() - circ.r_on()) / params.period *
                       (params.kappa - params.p_param) * t;
  const double coeff = circ.r_series() + ra;
  auto residual = [&](double s) { return (s - 1.0) * d0 + coeff * std::log(s) + drive; };

  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 400 && (hi - lo) * std::abs(d0) > tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (residual(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return ra + 0.5 * (lo + hi) * d0;
}

// ---------------------------------------------------------------------------
// Generic numeric analysis

FixedPointReport numeric_fixed_point(const AveragedField& field,
                                     const NumericFixedPointOptions& options) {
  if (options.scan_cells < 1) throw DomainError("numeric_fixed_point: scan_cells must be >= 1");
  auto rate = [&](double x) { return averaged_rate(field, x); };

  const int n = options.scan_cells;
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) values[i] = rate(static_cast<double>(i) / n);

  std::vector<double> roots;
  for (int i = 0; i <= n; ++i) {
    if (values[i] == 0.0) {
      roots.push_back(static_cast<double>(i) / n);
      continue;
    }
    if (i == n || values[i + 1] == 0.0 || (values[i] < 0.0) == (values[i + 1] < 0.0)) continue;
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    const bool rising = values[i] < 0.0;
    while (hi - lo > options.tolerance) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if ((rate(mid) < 0.0) == rising)
        lo = mid;
      else
        hi = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }

  FixedPointReport rep;
  rep.coordinate = Coordinate::state;
  if (roots.empty()) {
    // Sign-definite field: the state drifts to one boundary.
    const double target = values.front() > 0.0 ? 1.0 : 0.0;
    rep.location = target;
    rep.saturation_target = target;
    rep.stability = Stability::stable;
    rep.in_range = false;
    return rep;
  }

  auto derivative = [&](double x) {
    const double xl = std::max(0.0, x - options.derivative_step);
    const double xr = std::min(1.0, x + options.derivative_step);
    return (rate(xr) - rate(xl)) / (xr - xl);
  };
  std::size_t chosen = 0;
  std::vector<double> slopes;
  for (double r : roots) slopes.push_back(derivative(r));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (slopes[i] < 0.0) {
      chosen = i;
      break;
    }
  }
  rep.location = roots[chosen];
  rep.stability = classify(slopes[chosen]);
  rep.in_range = rep.location > 0.0 && rep.location < 1.0;
  if (rep.in_range && rep.stable()) rep.relaxation_time = -1.0 / slopes[chosen];
  return rep;
}

Trajectory integrate_averaged(const AveragedField& field, double x0, double t_end, long steps,
                              long sample_every) {
  require_state(x0, "integrate_averaged");
  if (!(t_end > 0.0)) throw DomainError("integrate_averaged: t_end must be > 0");
  if (steps < 1 || sample_every < 1) throw DomainError("integrate_averaged: steps must be >= 1");

  auto f = [&](double x) { return averaged_rate(field, std::clamp(x, 0.0, 1.0)); };
  const double h = t_end / static_cast<double>(steps);
  Trajectory traj{{}, model_name(field.model()) + "/averaged", field.train(), x0, {}};
  traj.samples.push_back({0.0, x0});
  double x = x0;
  for (long i = 1; i <= steps; ++i) {
    const double k1 = f(x);
    const double k2 = f(x + 0.5 * h * k1);
    const double k3 = f(x + 0.5 * h * k2);
    const double k4 = f(x + h * k3);
    x = std::clamp(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), 0.0, 1.0);
    if (i % sample_every == 0 || i == steps) traj.samples.push_back({i * h, x});
  }
  return traj;
}

}  // namespace memrelax
