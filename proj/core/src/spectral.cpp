#include "asymtun/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

namespace asymtun {

namespace {

constexpr double kDegeneracyThreshold = 1e-9;  // relative to spectral radius

bool spectral_order(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

double BiorthogonalSystem::biorthogonality_residual() const {
  const Eigen::MatrixXcd prod = left * right;
  const int n = dimension();
  return (prod - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double BiorthogonalSystem::completeness_residual() const {
  const int n = dimension();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    sum += right.col(s) * left.row(s);
  }
  return (sum - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

BiorthogonalSystem eigensystem_analytic(const ModelParams& params) {
  const double s = params.g() > 0.0 ? 1.0 : -1.0;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const double sqrt_beta = std::sqrt(params.beta());

  BiorthogonalSystem sys;
  sys.eigenvalues.resize(2);
  sys.eigenvalues << Complex(params.omega()), Complex(-params.omega());

  sys.right.resize(2, 2);
  sys.right.col(0) << inv_sqrt2 / sqrt_beta, -s * inv_sqrt2;
  sys.right.col(1) << inv_sqrt2 / sqrt_beta, s * inv_sqrt2;

  sys.left.resize(2, 2);
  sys.left.row(0) << inv_sqrt2 * sqrt_beta, -s * inv_sqrt2;
  sys.left.row(1) << inv_sqrt2 * sqrt_beta, s * inv_sqrt2;
  return sys;
}

BiorthogonalSystem eigensystem_numeric(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) {
    throw NonSquareError("eigensystem requires a square matrix");
  }
  const int n = static_cast<int>(h.rows());
  if (n < 1 || n > 8) {
    throw DomainError("eigensystem supports dimensions 1..8");
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver_r(h, true);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver_l(h.adjoint(), true);
  if (solver_r.info() != Eigen::Success || solver_l.info() != Eigen::Success) {
    throw DegenerateSpectrumError("eigen decomposition did not converge");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return spectral_order(solver_r.eigenvalues()(a), solver_r.eigenvalues()(b));
  });

  BiorthogonalSystem sys;
  sys.eigenvalues.resize(n);
  sys.right.resize(n, n);
  sys.left.resize(n, n);
  for (int s = 0; s < n; ++s) {
    sys.eigenvalues(s) = solver_r.eigenvalues()(order[s]);
    sys.right.col(s) = solver_r.eigenvectors().col(order[s]);
  }

  const double radius = sys.eigenvalues.cwiseAbs().maxCoeff();
  if (radius == 0.0) {
    throw DegenerateSpectrumError("spectrum is identically zero");
  }
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) {
      const double gap = std::abs(sys.eigenvalues(r) - sys.eigenvalues(s));
      if (gap < kDegeneracyThreshold * radius) {
        throw DegenerateSpectrumError(
            "eigenvalue gap below threshold; exceptional-point proximity");
      }
    }
  }

  // Pair each eigenvalue E with the adjoint-problem eigenvalue closest to
  // conj(E); the adjoint eigenvector, conjugate-transposed, is the left row.
  std::vector<bool> used(n, false);
  for (int s = 0; s < n; ++s) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double dist =
          std::abs(solver_l.eigenvalues()(j) - std::conj(sys.eigenvalues(s)));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[best] = true;
    sys.left.row(s) = solver_l.eigenvectors().col(best).adjoint();
  }

  // Rescale: all magnitude correction goes into the left vectors, then the
  // residual phase is split so the first nonzero right component is real
  // positive.
  for (int s = 0; s < n; ++s) {
    const Complex pairing = sys.left.row(s) * sys.right.col(s);
    if (std::abs(pairing) < kDegeneracyThreshold) {
      throw DegenerateSpectrumError(
          "left/right eigenvector pairing nearly orthogonal");
    }
    sys.left.row(s) /= pairing;

    const double scale = sys.right.col(s).cwiseAbs().maxCoeff();
    for (int k = 0; k < n; ++k) {
      const Complex component = sys.right(k, s);
      if (std::abs(component) > 1e-12 * scale) {
        const Complex phase = component / std::abs(component);
        sys.right.col(s) /= phase;
        sys.left.row(s) *= phase;
        break;
      }
    }
  }
  return sys;
}

Eigen::MatrixXcd metric_operator(const BiorthogonalSystem& system) {
  const int n = system.dimension();
  Eigen::MatrixXcd eta = Eigen::MatrixXcd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    eta += system.left.row(s).adjoint() * system.left.row(s);
  }
  return eta;
}

}  // namespace asymtun
