#pragma once

#include <Eigen/Dense>

#include "asymtun/model.hpp"

namespace asymtun {

/// Eigenvalues with paired right (column) and left (row) eigenvectors,
/// normalized so that left * right = I and sum_s right_s * left_s = I.
///
/// Ordering convention: eigenvalues sorted by real part descending,
/// ties broken by imaginary part descending. For the model this puts
/// E = +omega first.
struct BiorthogonalSystem {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd right;  // column s is |E^s>>
  Eigen::MatrixXcd left;   // row s is <<E^s|

  int dimension() const { return static_cast<int>(eigenvalues.size()); }

  /// max |left * right - I|
  double biorthogonality_residual() const;
  /// max |sum_s right_s left_s - I|  (same product, other association)
  double completeness_residual() const;
};

/// Closed-form eigensystem of the single-excitation Hamiltonian.
/// Eigenvalues (+omega, -omega); right vectors (1/sqrt2)[1/sqrt(beta), -/+ s]
/// and left rows (1/sqrt2)[sqrt(beta), -/+ s] with s = sign(g), so the
/// pairing satisfies H v = E v for either sign of the coupling.
BiorthogonalSystem eigensystem_analytic(const ModelParams& params);

/// Numeric biorthogonal eigensystem of a small complex matrix (dim <= 8).
///
/// Right eigenvectors are computed from H, left from the adjoint problem,
/// matched by eigenvalue and rescaled so left * right = I; the residual
/// phase is fixed by making the first nonzero component of each right
/// vector real positive.
///
/// Throws NonSquareError for non-square input, DomainError for dim > 8,
/// and DegenerateSpectrumError when the smallest eigenvalue gap falls
/// below 1e-9 relative to the spectral radius.
BiorthogonalSystem eigensystem_numeric(const Eigen::MatrixXcd& h);

/// Metric operator sum_s (left_s)^dagger (left_s). For the model this is
/// diag(beta, 1); it is Hermitian positive definite and intertwines H
/// with its adjoint.
Eigen::MatrixXcd metric_operator(const BiorthogonalSystem& system);

}  // namespace asymtun
