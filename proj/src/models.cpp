#include "memrelax/models.hpp"

#include <cmath>
#include <sstream>

#include "memrelax/errors.hpp"

namespace memrelax {

namespace {

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << what << ": state x = " << x << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

}  // namespace

DriveSign sign_of(double drive) {
  if (drive > 0.0) return DriveSign::positive;
  if (drive < 0.0) return DriveSign::negative;
  return DriveSign::zero;
}

PulseTrain::PulseTrain(double period, double tau_plus, double tau_minus, double amp_plus,
                       double amp_minus)
    : period_(period),
      tau_plus_(tau_plus),
      tau_minus_(tau_minus),
      amp_plus_(amp_plus),
      amp_minus_(amp_minus) {
  if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("pulse train: period must be > 0");
  if (!(tau_plus >= 0.0)) throw DomainError("pulse train: tau_plus must be >= 0");
  if (!(tau_minus >= 0.0)) throw DomainError("pulse train: tau_minus must be >= 0");
  // 1e-12 relative slack on the width sum.
  if (tau_plus + tau_minus > period * (1.0 + 1e-12))
    throw DomainError("pulse train: tau_plus + tau_minus exceeds the period");
  if (!(amp_plus > 0.0)) throw DomainError("pulse train: amp_plus must be > 0");
  if (!(amp_minus < 0.0)) throw DomainError("pulse train: amp_minus must be < 0");
}

BiolekModel::BiolekModel(double h_plus, double h_minus, int p_exponent)
    : h_plus_(h_plus), h_minus_(h_minus), p_exponent_(p_exponent) {
  if (!(h_plus > 0.0)) throw DomainError("biolek: h_plus must be > 0");
  if (!(h_minus < 0.0)) throw DomainError("biolek: h_minus must be < 0");
  if (p_exponent < 1) throw DomainError("biolek: p must be >= 1");
}

double BiolekModel::rate_magnitude(DriveSign s) const {
  switch (s) {
    case DriveSign::positive:
      return h_plus_;
    case DriveSign::negative:
      return h_minus_;
    case DriveSign::zero:
      break;
  }
  return 0.0;
}

ThresholdCircuit::ThresholdCircuit(double beta, double v_on, double v_off, double r_series,
                                   double r_on, double r_off)
    : beta_(beta), v_on_(v_on), v_off_(v_off), r_series_(r_series), r_on_(r_on), r_off_(r_off) {
  if (!(beta > 0.0)) throw DomainError("threshold circuit: beta must be > 0");
  if (!(v_on > 0.0)) throw DomainError("threshold circuit: v_on must be > 0");
  if (!(v_off < 0.0)) throw DomainError("threshold circuit: v_off must be < 0");
  if (!(r_series > 0.0)) throw DomainError("threshold circuit: r_series must be > 0");
  if (!(r_on > 0.0 && r_on < r_off)) throw DomainError("threshold circuit: need 0 < r_on < r_off");
}

std::string model_name(const Model& m) {
  return std::holds_alternative<BiolekModel>(m) ? "biolek" : "threshold_circuit";
}

double drive_at(const PulseTrain& train, double t) {
  if (!(t >= 0.0)) throw DomainError("drive_at: t must be >= 0");
  const double T = train.period();
  double phase = std::fmod(t, T);
  if (phase < 0.0) phase += T;
  if (phase < train.tau_plus()) return train.amp_plus();
  if (phase < train.tau_plus() + train.tau_minus()) return train.amp_minus();
  return 0.0;
}

double biolek_window(double x, double drive, int p) {
  require_unit_interval(x, "biolek_window");
  if (p < 1) throw DomainError("biolek_window: p must be >= 1");
  const double shift = drive < 0.0 ? 1.0 : 0.0;
  return 1.0 - std::pow(x - shift, 2 * p);
}

double biolek_rate(const BiolekModel& model, double x, DriveSign s) {
  const double h = model.rate_magnitude(s);
  const double g = biolek_window(x, static_cast<double>(static_cast<int>(s)), model.p_exponent());
  return h * g;
}

double memristance(double x, double r_on, double r_off) {
  require_unit_interval(x, "memristance");
  return r_off + x * (r_on - r_off);
}

double state_from_memristance(double r, double r_on, double r_off) {
  return (r - r_off) / (r_on - r_off);
}

double divider_voltage(const ThresholdCircuit& circ, double x, double v_applied) {
  const double rm = memristance(x, circ.r_on(), circ.r_off());
  return rm / (circ.r_series() + rm) * v_applied;
}

double threshold_circuit_rate(const ThresholdCircuit& circ, double x, double v_applied) {
  const double vm = divider_voltage(circ, x, v_applied);
  if (vm > circ.v_on()) return circ.beta() * (vm - circ.v_on());
  if (vm < circ.v_off()) return circ.beta() * (vm - circ.v_off());
  return 0.0;
}

ThresholdCheck validate_above_threshold(const ThresholdCircuit& circ, const PulseTrain& train) {
  const double ratio = circ.r_on() / (circ.r_series() + circ.r_on());
  ThresholdCheck check{};
  check.margin_plus = ratio * train.amp_plus() - circ.v_on();
  check.margin_minus = ratio * train.amp_minus() - circ.v_off();
  const bool plus_ok = train.tau_plus() == 0.0 || check.margin_plus > 0.0;
  const bool minus_ok = train.tau_minus() == 0.0 || check.margin_minus < 0.0;
  check.above_threshold = plus_ok && minus_ok;

  std::ostringstream os;
  os << "worst case R_M = R_on: positive-pulse margin " << check.margin_plus
     << " V, negative-pulse margin " << check.margin_minus << " V";
  if (!plus_ok) os << "; positive pulse does not exceed V_on";
  if (!minus_ok) os << "; negative pulse does not fall below V_off";
  check.diagnostic = os.str();
  return check;
}

double state_rate(const Model& model, double x, double drive) {
  if (const auto* b = std::get_if<BiolekModel>(&model)) return biolek_rate(*b, x, sign_of(drive));
  return threshold_circuit_rate(std::get<ThresholdCircuit>(model), x, drive);
}

}  // namespace memrelax
