#include "asymtun/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "asymtun/dynamics.hpp"
#include "asymtun/errors.hpp"

namespace asymtun {

namespace {

constexpr double kMaxStepFraction = 1.0 / 50.0;
constexpr int kMinEquilibriumPeriods = 5;

double slope_n_a(double n_a, double n_b, const ModelParams& params,
                 double tau) {
  const double wt = params.omega() * tau / std::abs(params.g());
  const double p_ab = closed_form::prob_a_to_b(params.beta(), wt);
  const double p_ba = closed_form::prob_b_to_a(params.beta(), wt);
  return -n_a * p_ab + n_b * p_ba;
}

}  // namespace

std::pair<double, double> rate_rhs(const RatePopulations& populations,
                                   const ModelParams& params, double tau) {
  const double d = slope_n_a(populations.n_a, populations.n_b, params, tau);
  return {d, -d};
}

double driving_period_tau(const ModelParams& params) {
  return std::numbers::pi * std::abs(params.g()) / params.omega();
}

RateTrajectory integrate(const RatePopulations& initial,
                         const ModelParams& params, double tau_end,
                         double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("integration step must be positive and finite");
  }
  if (!std::isfinite(tau_end) || !(tau_end > initial.tau)) {
    throw DomainError("tau_end must exceed the initial tau");
  }
  const double period = driving_period_tau(params);
  if (step > kMaxStepFraction * period) {
    throw StepTooLargeError(
        "step exceeds 1/50 of the driving period; the probability "
        "oscillation would be undersampled");
  }

  const auto n_steps =
      static_cast<std::size_t>(std::floor((tau_end - initial.tau) / step + 1e-9));

  RateTrajectory trajectory{{}, step, params};
  trajectory.samples.reserve(n_steps + 1);
  trajectory.samples.push_back(initial);

  double n_a = initial.n_a;
  double n_b = initial.n_b;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double tau = initial.tau + static_cast<double>(k) * step;
    const double k1 = slope_n_a(n_a, n_b, params, tau);
    const double k2 = slope_n_a(n_a + 0.5 * step * k1, n_b - 0.5 * step * k1,
                                params, tau + 0.5 * step);
    const double k3 = slope_n_a(n_a + 0.5 * step * k2, n_b - 0.5 * step * k2,
                                params, tau + 0.5 * step);
    const double k4 =
        slope_n_a(n_a + step * k3, n_b - step * k3, params, tau + step);
    const double delta = step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    n_a += delta;
    n_b -= delta;
    trajectory.samples.push_back(
        {n_a, n_b, initial.tau + static_cast<double>(k + 1) * step});
  }
  return trajectory;
}

EquilibriumStats equilibrium_stats(const RateTrajectory& trajectory,
                                   double tau_from) {
  if (trajectory.samples.empty()) {
    throw WindowTooShortError("trajectory is empty");
  }
  const double tau_begin = trajectory.samples.front().tau;
  const double tau_end = trajectory.samples.back().tau;
  if (!(tau_from >= tau_begin) || !(tau_from < tau_end)) {
    throw WindowTooShortError("averaging start lies outside the trajectory");
  }
  const double window = tau_end - tau_from;
  const double period = driving_period_tau(trajectory.params);
  if (window < kMinEquilibriumPeriods * period) {
    throw WindowTooShortError(
        "averaging window shorter than five driving periods");
  }

  EquilibriumStats stats;
  double min_n_a = std::numeric_limits<double>::infinity();
  double max_n_a = -std::numeric_limits<double>::infinity();
  std::size_t count = 0;
  for (const auto& sample : trajectory.samples) {
    if (sample.tau < tau_from) continue;
    stats.mean_n_a += sample.n_a;
    stats.mean_n_b += sample.n_b;
    min_n_a = std::min(min_n_a, sample.n_a);
    max_n_a = std::max(max_n_a, sample.n_a);
    ++count;
  }
  stats.mean_n_a /= static_cast<double>(count);
  stats.mean_n_b /= static_cast<double>(count);
  stats.amplitude_n_a = max_n_a - min_n_a;
  return stats;
}

}  // namespace asymtun
