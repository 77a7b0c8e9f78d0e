#pragma once

// Drive waveform and the two first-order memristor models.
//
// Pulse phase convention: within every period [kT, (k+1)T) the positive pulse
// occupies [kT, kT+tau_plus), the negative pulse [kT+tau_plus,
// kT+tau_plus+tau_minus) and the drive is zero for the rest of the period.

#include <string>
#include <variant>

namespace memrelax {

enum class DriveSign { negative = -1, zero = 0, positive = 1 };

DriveSign sign_of(double drive);

class PulseTrain {
 public:
  /// Throws DomainError unless period > 0, widths >= 0, tau_plus + tau_minus <= period,
  /// amp_plus > 0 and amp_minus < 0.
  PulseTrain(double period, double tau_plus, double tau_minus, double amp_plus, double amp_minus);

  double period() const { return period_; }
  double tau_plus() const { return tau_plus_; }
  double tau_minus() const { return tau_minus_; }
  double amp_plus() const { return amp_plus_; }
  double amp_minus() const { return amp_minus_; }
  /// Zero-drive remainder of each period.
  double tau_zero() const { return period_ - tau_plus_ - tau_minus_; }

  bool operator==(const PulseTrain&) const = default;

 private:
  double period_;
  double tau_plus_;
  double tau_minus_;
  double amp_plus_;
  double amp_minus_;
};

/// Current-controlled Biolek-window memristor, stored as the two rates h(I+) and h(I-).
class BiolekModel {
 public:
  BiolekModel(double h_plus, double h_minus, int p_exponent = 1);

  double h_plus() const { return h_plus_; }
  double h_minus() const { return h_minus_; }
  int p_exponent() const { return p_exponent_; }

  /// h(I) for a drive of the given sign; h(0) = 0.
  double rate_magnitude(DriveSign s) const;

  bool operator==(const BiolekModel&) const = default;

 private:
  double h_plus_;
  double h_minus_;
  int p_exponent_;
};

/// Voltage-controlled threshold memristor in series with a resistor.
/// beta is in 1/(volt * time) so the state stays dimensionless.
class ThresholdCircuit {
 public:
  ThresholdCircuit(double beta, double v_on, double v_off, double r_series, double r_on,
                   double r_off);

  double beta() const { return beta_; }
  double v_on() const { return v_on_; }
  double v_off() const { return v_off_; }
  double r_series() const { return r_series_; }
  double r_on() const { return r_on_; }
  double r_off() const { return r_off_; }

  bool operator==(const ThresholdCircuit&) const = default;

 private:
  double beta_;
  double v_on_;
  double v_off_;
  double r_series_;
  double r_on_;
  double r_off_;
};

using Model = std::variant<BiolekModel, ThresholdCircuit>;

std::string model_name(const Model& m);

double drive_at(const PulseTrain& train, double t);

/// g_B(x, I) = 1 - (x - H(-I))^{2p}, with H(0) = 0.
double biolek_window(double x, double drive, int p);

double biolek_rate(const BiolekModel& model, double x, DriveSign s);

/// Linear memristance: R_off at x = 0, R_on at x = 1.
double memristance(double x, double r_on, double r_off);

/// Inverse of memristance(); no range check on r.
double state_from_memristance(double r, double r_on, double r_off);

/// Voltage across the memristor of the divider formed with the series resistor.
double divider_voltage(const ThresholdCircuit& circ, double x, double v_applied);

double threshold_circuit_rate(const ThresholdCircuit& circ, double x, double v_applied);

struct ThresholdCheck {
  bool above_threshold;
  /// V_M(R_on, V+) - V_on; positive when the positive pulse switches everywhere.
  double margin_plus;
  /// V_M(R_on, V-) - V_off; negative when the negative pulse switches everywhere.
  double margin_minus;
  std::string diagnostic;
};

/// Checks the divider voltage at R_M = R_on, where |V_M| is smallest. Pulses of
/// zero width are not required to switch.
ThresholdCheck validate_above_threshold(const ThresholdCircuit& circ, const PulseTrain& train);

/// Instantaneous rate f(x, drive) for either model. x must lie in [0,1].
double state_rate(const Model& model, double x, double drive);

}  // namespace memrelax
