#pragma once

#include <utility>
#include <vector>

#include "asymtun/model.hpp"

namespace asymtun {

/// Site populations at dimensionless time tau = |g| t.
struct RatePopulations {
  double n_a = 1.0;
  double n_b = 0.0;
  double tau = 0.0;
};

/// Fixed-step trajectory of the rate equation; tau is strictly increasing
/// with uniform spacing `step`.
struct RateTrajectory {
  std::vector<RatePopulations> samples;
  double step;
  ModelParams params;
};

/// Right-hand side of the rate equation, with the renormalized transition
/// probabilities as time-dependent exchange rates:
///   dn_a/dtau = -n_a P_{A->B}(tau) + n_b P_{B->A}(tau) = -dn_b/dtau.
/// The probabilities are evaluated at physical time t = tau/|g|. The pair
/// returned sums to zero identically.
std::pair<double, double> rate_rhs(const RatePopulations& populations,
                                   const ModelParams& params, double tau);

/// Oscillation period of the driving probabilities in tau units,
/// pi |g| / omega.
double driving_period_tau(const ModelParams& params);

/// Classical fixed-step fourth-order Runge-Kutta integration from
/// initial.tau to (at most) tau_end. Throws StepTooLargeError when the step
/// exceeds 1/50 of the driving period, DomainError for a non-positive step
/// or an empty integration interval.
RateTrajectory integrate(const RatePopulations& initial,
                         const ModelParams& params, double tau_end,
                         double step);

struct EquilibriumStats {
  double mean_n_a = 0.0;
  double mean_n_b = 0.0;
  double amplitude_n_a = 0.0;  // peak to peak over the window
};

/// Time averages and peak-to-peak amplitude over [tau_from, end of
/// trajectory]. Throws WindowTooShortError unless the window covers at
/// least five driving periods and tau_from lies within the trajectory.
EquilibriumStats equilibrium_stats(const RateTrajectory& trajectory,
                                   double tau_from);

}  // namespace asymtun
