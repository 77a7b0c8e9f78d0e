#include "doctest.h"

#include <cmath>
#include <random>

#include "memrelax/errors.hpp"
#include "memrelax/exact_sim.hpp"
#include "oracles.hpp"

using namespace memrelax;
using doctest::Approx;

namespace {

const ThresholdCircuit kCircuit(0.05, 1.0, -0.7, 2000.0, 2000.0, 10000.0);
const PulseTrain kCircuitTrain(1.0, 0.4, 0.25, 2.2, -2.2);

}  // namespace

TEST_CASE("sample grid") {
  const BiolekModel m(0.05, -0.05);
  const PulseTrain train(1.0, 0.2, 0.2, 1.0, -1.0);
  const auto one = simulate(m, train, 0.3, 1.0, {16, 8});
  REQUIRE(one.samples.size() == 9);
  for (std::size_t j = 0; j < one.samples.size(); ++j) CHECK(one.samples[j].t == Approx(j / 8.0));
  CHECK(one.samples.front().x == 0.3);

  const auto many = simulate(m, train, 0.3, 12.0, {4, 5});
  CHECK(many.samples.size() == 61);
  CHECK(many.samples.back().t == Approx(12.0));
  CHECK(many.model == "biolek");
  CHECK(many.x0 == 0.3);
}

TEST_CASE("simulate rejects bad input") {
  const BiolekModel m(0.05, -0.05);
  const PulseTrain train(1.0, 0.2, 0.2, 1.0, -1.0);
  CHECK_THROWS_AS(simulate(m, train, 1.5, 2.0), DomainError);
  CHECK_THROWS_AS(simulate(m, train, -0.1, 2.0), DomainError);
  CHECK_THROWS_AS(simulate(m, train, 0.5, -1.0), DomainError);
  CHECK_THROWS_AS(simulate(m, train, 0.5, 2.0, {0, 8}), DomainError);
  CHECK_THROWS_AS(simulate(m, train, 0.5, 2.0, {8, 0}), DomainError);
}

TEST_CASE("one Biolek pulse matches the analytic logistic solution") {
  // During a positive pulse x' = h (1 - x^2) with p = 1, so x = tanh(h t + atanh x0).
  const double h = 0.8;
  const BiolekModel m(h, -h);
  const PulseTrain train(1.0, 0.5, 0.5, 1.0, -1.0);
  const double x0 = 0.2;
  const auto traj = simulate(m, train, x0, 1.0, {64, 2});
  CHECK(traj.samples[1].x == Approx(std::tanh(h * 0.5 + std::atanh(x0))).epsilon(1e-10));
  // The negative pulse obeys x' = -h (1 - (x - 1)^2) = -h x (2 - x); u = 1 - x gives u' = h(1 - u^2).
  const double x_mid = std::tanh(h * 0.5 + std::atanh(x0));
  const double u_end = std::tanh(h * 0.5 + std::atanh(1.0 - x_mid));
  CHECK(traj.samples[2].x == Approx(1.0 - u_end).epsilon(1e-10));
}

TEST_CASE("fourth-order convergence with the substep count") {
  const BiolekModel m(2.0, -1.5);
  const PulseTrain train(1.0, 0.3, 0.45, 1.0, -1.0);
  const double t_end = 5.0;
  const double ref = simulate(m, train, 0.1, t_end, {1024, 1}).samples.back().x;
  const double e4 = std::abs(simulate(m, train, 0.1, t_end, {4, 1}).samples.back().x - ref);
  const double e8 = std::abs(simulate(m, train, 0.1, t_end, {8, 1}).samples.back().x - ref);
  const double ratio = e4 / e8;
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("samples inside a step do not perturb the integration") {
  const BiolekModel m(0.3, -0.2);
  const PulseTrain train(1.0, 0.3, 0.3, 1.0, -1.0);
  const auto coarse = simulate(m, train, 0.4, 20.0, {8, 1});
  const auto fine = simulate(m, train, 0.4, 20.0, {8, 7});
  for (std::size_t k = 0; k < coarse.samples.size(); ++k)
    CHECK(fine.samples[7 * k].x == coarse.samples[k].x);
}

TEST_CASE("circuit states stay pinned at the boundary") {
  const ThresholdCircuit strong(5.0, 1.0, -0.7, 2000.0, 2000.0, 10000.0);
  const PulseTrain train(1.0, 0.6, 0.05, 2.2, -2.2);
  const auto traj = simulate(strong, train, 0.5, 30.0, {4, 16});
  bool reached = false;
  for (const auto& s : traj.samples) {
    CHECK(s.x >= 0.0);
    CHECK(s.x <= 1.0);
    if (s.x == 1.0) reached = true;
  }
  CHECK(reached);
}

TEST_CASE("confinement for a large Biolek step") {
  const BiolekModel m(50.0, -50.0, 2);
  const PulseTrain train(1.0, 0.4, 0.4, 1.0, -1.0);
  for (double x0 : {0.0, 0.5, 1.0}) {
    const auto traj = simulate(m, train, x0, 5.0, {2, 32});
    for (const auto& s : traj.samples) {
      CHECK(s.x >= 0.0);
      CHECK(s.x <= 1.0);
    }
  }
}

TEST_CASE("time average of a linear function") {
  std::vector<Sample> s;
  for (int i = 0; i <= 100; ++i) s.push_back({i * 0.1, 3.0 * i * 0.1 + 1.0});
  const auto avg = time_average(std::span<const Sample>(s), 1.0);
  REQUIRE(avg.size() == 91);
  for (const auto& a : avg) CHECK(a.x == Approx(3.0 * (a.t + 0.5) + 1.0).epsilon(1e-12));
}

TEST_CASE("time average with a window off the sample grid") {
  std::vector<Sample> s;
  for (int i = 0; i <= 40; ++i) s.push_back({i * 0.25, 2.0 * i * 0.25});
  const auto avg = time_average(std::span<const Sample>(s), 0.6);
  REQUIRE_FALSE(avg.empty());
  for (const auto& a : avg) CHECK(a.x == Approx(2.0 * (a.t + 0.3)).epsilon(1e-12));
  CHECK(avg.back().t + 0.6 <= 10.0);
}

TEST_CASE("time average of a periodic signal is its mean") {
  std::vector<Sample> s;
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    const double t = 10.0 * i / n;
    s.push_back({t, 0.5 + 0.3 * std::sin(2.0 * M_PI * t)});
  }
  for (const auto& a : time_average(std::span<const Sample>(s), 1.0)) CHECK(a.x == Approx(0.5).epsilon(1e-6));
}

TEST_CASE("stroboscopic samples") {
  const auto traj = simulate(kCircuit, kCircuitTrain, 0.0, 10.0, {8, 4});
  const auto strobe = stroboscopic(traj);
  REQUIRE(strobe.size() == 11);
  for (std::size_t k = 0; k < strobe.size(); ++k) {
    CHECK(strobe[k].t == Approx(static_cast<double>(k)));
    CHECK(strobe[k].x == traj.samples[4 * k].x);
  }
}

TEST_CASE("exact circuit trajectory converges near the averaged fixed point") {
  const auto traj = simulate(kCircuit, kCircuitTrain, 0.0, 1500.0, {16, 1});
  const double x_a = (30000.0 / 7.0 - 10000.0) / (2000.0 - 10000.0);
  CHECK(std::abs(traj.samples.back().x - x_a) < 0.02);
}

TEST_CASE("determinism") {
  const BiolekModel m(0.05, -0.1);
  const PulseTrain train(1.0, 0.2, 0.2, 1.0, -1.0);
  const auto a = simulate(m, train, 0.7, 50.0);
  const auto b = simulate(m, train, 0.7, 50.0);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].x == b.samples[i].x);
}
