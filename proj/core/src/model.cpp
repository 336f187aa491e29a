#include "asymtun/model.hpp"

#include <cmath>

namespace asymtun {

ModelParams ModelParams::from_alpha(double g, double alpha) {
  if (!std::isfinite(g) || g == 0.0) {
    throw DomainError("coupling g must be finite and nonzero");
  }
  if (!(std::abs(alpha) < 1.0)) {  // also rejects NaN
    throw DomainError(
        "asymmetry alpha must satisfy |alpha| < 1; |alpha| = 1 is the "
        "exceptional point where the eigenvectors coalesce");
  }
  const double beta = (1.0 + alpha) / (1.0 - alpha);
  const double omega = std::abs(g) * std::sqrt(1.0 - alpha * alpha);
  return ModelParams(g, alpha, beta, omega);
}

ModelParams ModelParams::from_beta(double g, double beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw DomainError("beta must be finite and strictly positive");
  }
  return from_alpha(g, (beta - 1.0) / (beta + 1.0));
}

Eigen::Matrix4cd hamiltonian_full(const ModelParams& params) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(kOnlyA, kOnlyB) = -params.g() * (1.0 - params.alpha());
  h(kOnlyB, kOnlyA) = -params.g() * (1.0 + params.alpha());
  return h;
}

Eigen::Matrix2cd hamiltonian_2x2(const ModelParams& params) {
  Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
  h(0, 1) = -params.g() * (1.0 - params.alpha());
  h(1, 0) = -params.g() * (1.0 + params.alpha());
  return h;
}

Eigen::Matrix2cd number_operator(Site site) {
  Eigen::Matrix2cd n = Eigen::Matrix2cd::Zero();
  n(site == Site::A ? 0 : 1, site == Site::A ? 0 : 1) = 1.0;
  return n;
}

}  // namespace asymtun
