#include "doctest.h"

#include <cmath>
#include <random>

#include "memrelax/errors.hpp"
#include "memrelax/models.hpp"
#include "oracles.hpp"

using namespace memrelax;
using doctest::Approx;

namespace {

ThresholdCircuit reference_circuit() { return ThresholdCircuit(0.05, 1.0, -0.7, 2000.0, 2000.0, 10000.0); }

}  // namespace

TEST_CASE("drive_at follows the pulse phase convention") {
  const PulseTrain train(1.0, 0.4, 0.25, 2.2, -2.2);
  CHECK(drive_at(train, 0.1) == 2.2);
  CHECK(drive_at(train, 0.5) == -2.2);
  CHECK(drive_at(train, 0.9) == 0.0);
  CHECK(drive_at(train, 0.0) == 2.2);
  CHECK(drive_at(train, 0.4) == -2.2);
  CHECK(drive_at(train, 3.1) == 2.2);
  CHECK_THROWS_AS(drive_at(train, -0.1), DomainError);
}

TEST_CASE("drive_at is periodic") {
  const PulseTrain train(2.5, 0.7, 0.3, 1.0, -3.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const double t = u(rng);
    // Skip points within rounding distance of a pulse edge.
    const double phase = std::fmod(t, 2.5);
    if (std::abs(phase - 0.7) < 1e-9 || std::abs(phase - 1.0) < 1e-9 || phase < 1e-9) continue;
    CHECK(drive_at(train, t) == drive_at(train, t + 2.5));
  }
}

TEST_CASE("pulse train invariants") {
  CHECK_THROWS_AS(PulseTrain(0.0, 0.1, 0.1, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(PulseTrain(1.0, 0.6, 0.5, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(PulseTrain(1.0, -0.1, 0.5, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(PulseTrain(1.0, 0.1, 0.1, -1.0, -1.0), DomainError);
  CHECK_THROWS_AS(PulseTrain(1.0, 0.1, 0.1, 1.0, 1.0), DomainError);
  CHECK_NOTHROW(PulseTrain(1.0, 0.4, 0.6, 1.0, -1.0));
  CHECK(PulseTrain(1.0, 0.4, 0.25, 1.0, -1.0).tau_zero() == Approx(0.35));
}

TEST_CASE("model invariants") {
  CHECK_THROWS_AS(BiolekModel(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(BiolekModel(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(BiolekModel(1.0, -1.0, 0), DomainError);
  CHECK_THROWS_AS(ThresholdCircuit(0.0, 1.0, -1.0, 1.0, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(ThresholdCircuit(1.0, -1.0, -1.0, 1.0, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(ThresholdCircuit(1.0, 1.0, 1.0, 1.0, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(ThresholdCircuit(1.0, 1.0, -1.0, 1.0, 3.0, 2.0), DomainError);
}

TEST_CASE("biolek window") {
  CHECK(biolek_window(0.5, 1.0, 1) == 0.75);
  CHECK(biolek_window(1.0, 1.0, 1) == 0.0);
  CHECK(biolek_window(1.0, -1.0, 1) == 1.0);
  CHECK(biolek_window(0.0, -1.0, 1) == 0.0);
  // H(0) = 0: zero drive uses the positive-drive window.
  CHECK(biolek_window(0.5, 0.0, 1) == 0.75);
  CHECK_THROWS_AS(biolek_window(1.2, 1.0, 1), DomainError);
  CHECK_THROWS_AS(biolek_window(-0.1, 1.0, 1), DomainError);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    for (int p = 1; p <= 4; ++p) {
      for (double drive : {-1.0, 0.0, 1.0}) {
        const double g = biolek_window(x, drive, p);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0);
      }
    }
  }
}

TEST_CASE("biolek rate") {
  const BiolekModel m(0.05, -0.025);
  CHECK(biolek_rate(m, 0.5, DriveSign::positive) == Approx(0.0375));
  CHECK(biolek_rate(m, 0.5, DriveSign::negative) == Approx(-0.01875));
  CHECK(biolek_rate(m, 0.3, DriveSign::zero) == 0.0);
  CHECK(biolek_rate(m, 1.0, DriveSign::positive) == 0.0);
  CHECK(biolek_rate(m, 0.0, DriveSign::negative) == 0.0);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    CHECK(biolek_rate(m, x, DriveSign::positive) > 0.0);
    CHECK(biolek_rate(m, x, DriveSign::negative) < 0.0);
  }
}

TEST_CASE("memristance") {
  CHECK(memristance(0.0, 2000.0, 10000.0) == 10000.0);
  CHECK(memristance(1.0, 2000.0, 10000.0) == 2000.0);
  CHECK(memristance(0.5, 2000.0, 10000.0) == 6000.0);
  CHECK_THROWS_AS(memristance(1.5, 2000.0, 10000.0), DomainError);
  double prev = memristance(0.0, 2000.0, 10000.0);
  for (int i = 1; i <= 100; ++i) {
    const double r = memristance(i / 100.0, 2000.0, 10000.0);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(state_from_memristance(6000.0, 2000.0, 10000.0) == Approx(0.5));
}

TEST_CASE("threshold circuit rate") {
  const ThresholdCircuit c = reference_circuit();
  // R_M = 2 kOhm: V_M = 2000/4000 * 2.2 = 1.1 V.
  CHECK(threshold_circuit_rate(c, 1.0, 2.2) == Approx(0.1 * c.beta()));
  // R_M = 10 kOhm: V_M = 10/12 * (-2.2).
  CHECK(threshold_circuit_rate(c, 0.0, -2.2) == Approx((-2.2 * 10.0 / 12.0 + 0.7) * c.beta()));
  CHECK(threshold_circuit_rate(c, 0.5, 0.5) == 0.0);
  CHECK(threshold_circuit_rate(c, 0.5, -0.5) == 0.0);
  CHECK_THROWS_AS(threshold_circuit_rate(c, 2.0, 1.0), DomainError);
}

TEST_CASE("threshold circuit rate is continuous across the thresholds") {
  const ThresholdCircuit c = reference_circuit();
  for (double x : {0.0, 0.3, 0.7, 1.0}) {
    const double rm = memristance(x, c.r_on(), c.r_off());
    const double gain = rm / (c.r_series() + rm);
    for (double vth : {c.v_on(), c.v_off()}) {
      const double v = vth / gain;
      const double eps = 1e-9;
      CHECK(std::abs(threshold_circuit_rate(c, x, v * (1 + eps))) < 1e-8);
      CHECK(std::abs(threshold_circuit_rate(c, x, v * (1 - eps))) < 1e-8);
    }
  }
}

TEST_CASE("above-threshold validation") {
  const ThresholdCircuit c = reference_circuit();
  const auto ok = validate_above_threshold(c, PulseTrain(1.0, 0.4, 0.25, 2.2, -2.2));
  CHECK(ok.above_threshold);
  CHECK(ok.margin_plus == Approx(0.1));
  CHECK(ok.margin_minus == Approx(-0.4));

  const auto weak = validate_above_threshold(c, PulseTrain(1.0, 0.4, 0.25, 1.0, -1.0));
  CHECK_FALSE(weak.above_threshold);
  CHECK(weak.margin_plus == Approx(-0.5));
  CHECK(weak.diagnostic.find("V_on") != std::string::npos);

  const ThresholdCircuit low(0.05, 1e-12, -0.7, 2000.0, 2000.0, 10000.0);
  const auto tiny = validate_above_threshold(low, PulseTrain(1.0, 0.4, 0.25, 0.01, -2.2));
  CHECK(tiny.above_threshold);
  CHECK(tiny.margin_plus > 0.0);

  // A pulse of zero width never has to switch.
  CHECK(validate_above_threshold(c, PulseTrain(1.0, 0.4, 0.0, 2.2, -1.0)).above_threshold);
}
