#pragma once

#include <Eigen/Dense>

#include "asymtun/model.hpp"
#include "asymtun/spectral.hpp"

namespace asymtun {

/// A state of the single-excitation subspace in the (|10>, |01>) basis.
struct SiteState {
  Eigen::Vector2cd components;

  static SiteState at(Site site) {
    SiteState s{Eigen::Vector2cd::Zero()};
    s.components(site == Site::A ? 0 : 1) = 1.0;
    return s;
  }
  static SiteState a() { return at(Site::A); }
  static SiteState b() { return at(Site::B); }
};

/// Expansion coefficients of a state in the biorthogonal energy basis:
/// c_l for the ket (against left rows) and c_r for the bra (against right
/// columns). Index 0 is the +omega branch, index 1 the -omega branch.
struct CoefficientState {
  Eigen::Vector2cd c_l;
  Eigen::Vector2cd c_r;
  double time = 0.0;
};

enum class Normalization { Unnormalized, Renormalized };

/// c_l^s = <<E^s|psi>, c_r^s = <psi|E^s>>, at time 0.
/// Requires a 2x2 system (the model's single-excitation subspace).
CoefficientState decompose(const SiteState& state,
                           const BiorthogonalSystem& system);

/// Ket coefficients a time dt later: c_l^{+-}(t+dt) = c_l^{+-}(t) e^{-/+ i omega dt}.
Eigen::Vector2cd evolve_c_l(const CoefficientState& state,
                            const ModelParams& params, double dt);

/// Bra coefficients a time dt later, from the closed-form solution of the
/// coupled bra equations:
///   c_r^{+-}(t+dt) = +-(i/2beta)((1+beta^2) c_r^{+-} - (1-beta^2) c_r^{-+}) sin(omega dt)
///                    + c_r^{+-} cos(omega dt).
Eigen::Vector2cd evolve_c_r(const CoefficientState& state,
                            const ModelParams& params, double dt);

/// Both coefficient sets evolved by dt, with the timestamp advanced.
CoefficientState evolve(const CoefficientState& state,
                        const ModelParams& params, double dt);

/// Residuals of the coupled first-order equations for the bra coefficients,
///   d/dt(c_r^+ + c_r^-) = i|g|(1+alpha) beta^{-3/2} (c_r^+ - c_r^-)
///   d/dt(c_r^+ - c_r^-) = i|g|(1-alpha) beta^{+3/2} (c_r^+ + c_r^-),
/// evaluated at the state's own time with central differences (h = 1e-6)
/// of evolve_c_r. Self-test helper, not a production path.
Eigen::Vector2cd ode_residual_c_r(const CoefficientState& state,
                                  const ModelParams& params);

/// psi(t) = sum_s c_l^s |E^s>>.
Eigen::Vector2cd reconstruct_ket(const CoefficientState& state,
                                 const BiorthogonalSystem& system);

/// <psi(t)| = sum_s c_r^s <<E^s|; equals the adjoint of the reconstructed ket.
Eigen::RowVector2cd reconstruct_bra(const CoefficientState& state,
                                    const BiorthogonalSystem& system);

/// <psi|psi> = sum_s c_l^s c_r^s. Not conserved in general: for the state
/// evolved from |A> it equals cos^2(omega t) + beta sin^2(omega t).
Complex norm_factor(const CoefficientState& state);

/// Real positive norm factor used for renormalization; throws
/// NonPositiveNormError when the real part is <= 1e-12 or a significant
/// imaginary part signals an unphysical state.
double real_norm_factor(const CoefficientState& state);

/// Transition amplitude <to|psi_from(t)> = sum_s d_r^s c_l^s(t), optionally
/// renormalized by sqrt(<to|to>) sqrt(<psi_from(t)|psi_from(t)>).
Complex amplitude(const SiteState& from, const SiteState& to,
                  const ModelParams& params, double t, Normalization norm);

/// |amplitude|^2. The renormalized A->B probability equals
/// beta sin^2(omega t) / (cos^2(omega t) + beta sin^2(omega t)).
double transition_probability(const SiteState& from, const SiteState& to,
                              const ModelParams& params, double t,
                              Normalization norm);

/// Renormalized probability ratio (A->B over B->A) in its simplified,
/// globally finite closed form
///   beta^2 (cos^2 + beta^{-1} sin^2) / (cos^2 + beta sin^2),
/// which continuously extends the quotient through the zeros of sin.
double probability_ratio(const ModelParams& params, double t);

/// Expectation of the site number operator in the renormalized state
/// evolved from `from`; {N_A} + {N_B} = 1.
double occupation(const SiteState& from, Site site, const ModelParams& params,
                  double t);

/// rho = sum_{r,s} c_l^r c_r^s |E^r>><<E^s| assembled in the site basis.
/// The unnormalized trace equals the norm factor; renormalized trace is 1.
struct DensityMatrix {
  Eigen::Matrix2cd rho;
  bool normalized = false;

  double coherence() const { return std::abs(rho(0, 1)); }
};

DensityMatrix density_matrix(const CoefficientState& state,
                             const BiorthogonalSystem& system,
                             Normalization norm);

// ---- independent numeric propagator ----------------------------------------
//
// Matrix-exponential pipeline kept free of any eigendecomposition so it can
// serve as an oracle for the closed forms above.

/// exp(m) by scaling-and-squaring with a Taylor series summed to machine
/// precision; adequate and fast for the small matrices used here.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m);

/// exp(-iHt) psi. Accepts the 2x2 Hamiltonian or the 4x4 one (the state is
/// embedded in the single-excitation block and extracted again).
Eigen::Vector2cd propagate_ket(const Eigen::MatrixXcd& h,
                               const SiteState& initial, double t);

/// psi^dagger exp(+i H^dagger t), the row-vector evolution of the bra.
Eigen::RowVector2cd propagate_bra(const Eigen::MatrixXcd& h,
                                  const SiteState& initial, double t);

// ---- closed forms for the renormalized observables --------------------------
//
// All are functions of beta and the phase wt = omega t; they back the sweep
// grids and give the test suites their analytic anchors.

namespace closed_form {

/// cos^2(wt) + beta sin^2(wt), the norm factor of the state evolved from |A>.
double norm_from_a(double beta, double wt);
/// cos^2(wt) + sin^2(wt)/beta, the norm factor of the state evolved from |B>.
double norm_from_b(double beta, double wt);
double prob_a_to_b(double beta, double wt);
double prob_b_to_a(double beta, double wt);
double prob_a_to_a(double beta, double wt);
double prob_b_to_b(double beta, double wt);
double ratio(double beta, double wt);
double occupation_a_from_a(double beta, double wt);
double occupation_b_from_a(double beta, double wt);

}  // namespace closed_form

}  // namespace asymtun
