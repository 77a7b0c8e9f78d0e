#include "memrelax/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "memrelax/errors.hpp"

namespace memrelax {

namespace {

// Max over windows [t, t + w] of (max x - min x), monotone deques over the samples.
double max_window_swing(std::span<const Sample> samples, double window) {
  std::deque<std::size_t> hi;
  std::deque<std::size_t> lo;
  double swing = 0.0;
  std::size_t left = 0;
  const double slack = 1e-9 * window;
  for (std::size_t right = 0; right < samples.size(); ++right) {
    while (!hi.empty() && samples[hi.back()].x <= samples[right].x) hi.pop_back();
    while (!lo.empty() && samples[lo.back()].x >= samples[right].x) lo.pop_back();
    hi.push_back(right);
    lo.push_back(right);
    while (samples[right].t - samples[left].t > window + slack) {
      ++left;
      if (hi.front() < left) hi.pop_front();
      if (lo.front() < left) lo.pop_front();
    }
    swing = std::max(swing, samples[hi.front()].x - samples[lo.front()].x);
  }
  return swing;
}

}  // namespace

ComparisonReport compare(const Trajectory& exact, const std::function<double(double)>& closed_form,
                         double window, const std::optional<RelaxationTarget>& relaxation) {
  if (exact.samples.size() < 2) throw DomainError("compare: trajectory has fewer than two samples");
  const double span = exact.samples.back().t - exact.samples.front().t;
  if (span < kMinComparePeriods * window * (1.0 - 1e-9))
    throw DomainError("compare: trajectory shorter than ten averaging windows");

  const std::vector<Sample> averaged = time_average(std::span<const Sample>(exact.samples), window);
  ComparisonReport rep;
  double sum_sq = 0.0;
  for (const Sample& s : averaged) {
    const double d = std::abs(s.x - closed_form(s.t));
    rep.sup_deviation = std::max(rep.sup_deviation, d);
    sum_sq += d * d;
  }
  rep.rms_deviation = std::sqrt(sum_sq / static_cast<double>(averaged.size()));
  rep.per_pulse_increment = max_window_swing(exact.samples, window);

  if (relaxation) {
    rep.analytic_relaxation_time = relaxation->analytic_relaxation_time;
    rep.fitted_relaxation_time =
        fit_relaxation_time(averaged, relaxation->fixed_point, relaxation->t_begin, relaxation->t_end);
  }
  return rep;
}

double fit_relaxation_time(std::span<const Sample> samples, double fixed_point, double t_begin,
                           double t_end) {
  if (!(t_end > t_begin)) throw DomainError("fit_relaxation_time: empty window");
  std::vector<double> ts;
  std::vector<double> logs;
  int side = 0;
  for (const Sample& s : samples) {
    if (s.t < t_begin || s.t > t_end) continue;
    const double d = s.x - fixed_point;
    const int this_side = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (this_side == 0 || (side != 0 && this_side != side))
      throw FitError("fit_relaxation_time: samples reach or cross the fixed point");
    side = this_side;
    const double l = std::log(std::abs(d));
    if (!logs.empty() && l > logs.back())
      throw FitError("fit_relaxation_time: distance to the fixed point is not monotone");
    ts.push_back(s.t);
    logs.push_back(l);
  }
  if (ts.size() < 2) throw FitError("fit_relaxation_time: fewer than two samples in window");

  const double n = static_cast<double>(ts.size());
  double mt = 0.0;
  double ml = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    ml += logs[i];
  }
  mt /= n;
  ml /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - mt) * (logs[i] - ml);
    sxx += (ts[i] - mt) * (ts[i] - mt);
  }
  const double slope = sxy / sxx;
  if (!(slope < 0.0)) throw FitError("fit_relaxation_time: distance does not decay");
  return -1.0 / slope;
}

double fit_relaxation_time(const Trajectory& traj, double fixed_point, double t_begin, double t_end) {
  return fit_relaxation_time(std::span<const Sample>(traj.samples), fixed_point, t_begin, t_end);
}

}  // namespace memrelax
