#pragma once

#include <complex>

#include <Eigen/Dense>

#include "asymtun/errors.hpp"

namespace asymtun {

using Complex = std::complex<double>;

/// The two sites of the model.
enum class Site { A, B };

// Four-state basis order: |11>, |10>, |01>, |00>.
inline constexpr int kBothOccupied = 0;
inline constexpr int kOnlyA = 1;  // |10>, excitation at A
inline constexpr int kOnlyB = 2;  // |01>, excitation at B
inline constexpr int kVacuum = 3;

/// Model constants: coupling g, asymmetry alpha, and the derived
/// beta = (1+alpha)/(1-alpha) and omega = |g|*sqrt(1-alpha^2), with
/// hbar = 1 throughout (energies in angular-frequency units).
///
/// Construction rejects g = 0 and |alpha| >= 1; at |alpha| = 1 the
/// eigenvectors coalesce (exceptional point) and the biorthogonal
/// normalization diverges.
class ModelParams {
 public:
  static ModelParams from_alpha(double g, double alpha);
  /// Same model with alpha = (beta-1)/(beta+1); requires beta > 0.
  static ModelParams from_beta(double g, double beta);

  double g() const { return g_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double omega() const { return omega_; }

 private:
  ModelParams(double g, double alpha, double beta, double omega)
      : g_(g), alpha_(alpha), beta_(beta), omega_(omega) {}

  double g_, alpha_, beta_, omega_;
};

inline ModelParams make_params(double g, double alpha) {
  return ModelParams::from_alpha(g, alpha);
}

/// Interaction matrix in the four-state basis |11>, |10>, |01>, |00>:
/// the only nonzero entries are (|10>,|01>) = -g(1-alpha) and
/// (|01>,|10>) = -g(1+alpha).
Eigen::Matrix4cd hamiltonian_full(const ModelParams& params);

/// Single-excitation restriction in the (|10>, |01>) basis:
/// [[0, -g(1-alpha)], [-g(1+alpha), 0]].
Eigen::Matrix2cd hamiltonian_2x2(const ModelParams& params);

/// Occupation number operator on the single-excitation subspace:
/// N_A = diag(1, 0), N_B = diag(0, 1).
Eigen::Matrix2cd number_operator(Site site);

}  // namespace asymtun
