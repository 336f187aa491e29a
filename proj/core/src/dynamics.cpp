#include "asymtun/dynamics.hpp"

#include <cmath>

namespace asymtun {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kNormTolerance = 1e-12;
constexpr double kFiniteDifferenceStep = 1e-6;

void require_model_system(const BiorthogonalSystem& system) {
  if (system.dimension() != 2) {
    throw DomainError("expected the 2x2 single-excitation eigensystem");
  }
}

}  // namespace

CoefficientState decompose(const SiteState& state,
                           const BiorthogonalSystem& system) {
  require_model_system(system);
  CoefficientState coeffs;
  coeffs.c_l = system.left * state.components;
  coeffs.c_r = (state.components.adjoint() * system.right).transpose();
  coeffs.time = 0.0;
  return coeffs;
}

Eigen::Vector2cd evolve_c_l(const CoefficientState& state,
                            const ModelParams& params, double dt) {
  const double wt = params.omega() * dt;
  Eigen::Vector2cd out;
  out(0) = state.c_l(0) * std::exp(-kI * wt);
  out(1) = state.c_l(1) * std::exp(kI * wt);
  return out;
}

Eigen::Vector2cd evolve_c_r(const CoefficientState& state,
                            const ModelParams& params, double dt) {
  const double beta = params.beta();
  const double wt = params.omega() * dt;
  const double sin_wt = std::sin(wt);
  const double cos_wt = std::cos(wt);
  const Complex mix = kI / (2.0 * beta) * sin_wt;
  const double plus = 1.0 + beta * beta;
  const double minus = 1.0 - beta * beta;

  Eigen::Vector2cd out;
  out(0) = mix * (plus * state.c_r(0) - minus * state.c_r(1)) +
           state.c_r(0) * cos_wt;
  out(1) = -mix * (plus * state.c_r(1) - minus * state.c_r(0)) +
           state.c_r(1) * cos_wt;
  return out;
}

CoefficientState evolve(const CoefficientState& state,
                        const ModelParams& params, double dt) {
  CoefficientState out;
  out.c_l = evolve_c_l(state, params, dt);
  out.c_r = evolve_c_r(state, params, dt);
  out.time = state.time + dt;
  return out;
}

Eigen::Vector2cd ode_residual_c_r(const CoefficientState& state,
                                  const ModelParams& params) {
  const double h = kFiniteDifferenceStep;
  const Eigen::Vector2cd forward = evolve_c_r(state, params, h);
  const Eigen::Vector2cd backward = evolve_c_r(state, params, -h);
  const Eigen::Vector2cd derivative = (forward - backward) / (2.0 * h);

  const double beta = params.beta();
  const double abs_g = std::abs(params.g());
  const Complex sum_rate =
      kI * abs_g * (1.0 + params.alpha()) * std::pow(beta, -1.5);
  const Complex diff_rate =
      kI * abs_g * (1.0 - params.alpha()) * std::pow(beta, 1.5);

  Eigen::Vector2cd residual;
  residual(0) = (derivative(0) + derivative(1)) -
                sum_rate * (state.c_r(0) - state.c_r(1));
  residual(1) = (derivative(0) - derivative(1)) -
                diff_rate * (state.c_r(0) + state.c_r(1));
  return residual;
}

Eigen::Vector2cd reconstruct_ket(const CoefficientState& state,
                                 const BiorthogonalSystem& system) {
  require_model_system(system);
  return system.right * state.c_l;
}

Eigen::RowVector2cd reconstruct_bra(const CoefficientState& state,
                                    const BiorthogonalSystem& system) {
  require_model_system(system);
  return state.c_r.transpose() * system.left;
}

Complex norm_factor(const CoefficientState& state) {
  // Plain bilinear sum, not the Hermitian inner product.
  return state.c_l.cwiseProduct(state.c_r).sum();
}

double real_norm_factor(const CoefficientState& state) {
  const Complex norm = norm_factor(state);
  if (std::abs(norm.imag()) > kNormTolerance * std::max(1.0, std::abs(norm))) {
    throw NonPositiveNormError("norm factor has a significant imaginary part");
  }
  if (norm.real() <= kNormTolerance) {
    throw NonPositiveNormError("norm factor is not positive");
  }
  return norm.real();
}

Complex amplitude(const SiteState& from, const SiteState& to,
                  const ModelParams& params, double t, Normalization norm) {
  const BiorthogonalSystem system = eigensystem_analytic(params);
  const CoefficientState start = decompose(from, system);
  const Eigen::Vector2cd target_c_r = decompose(to, system).c_r;
  const Eigen::Vector2cd c_l_t = evolve_c_l(start, params, t);
  const Complex raw = target_c_r(0) * c_l_t(0) + target_c_r(1) * c_l_t(1);
  if (norm == Normalization::Unnormalized) {
    return raw;
  }
  const CoefficientState evolved = evolve(start, params, t);
  return raw / (to.components.norm() * std::sqrt(real_norm_factor(evolved)));
}

double transition_probability(const SiteState& from, const SiteState& to,
                              const ModelParams& params, double t,
                              Normalization norm) {
  return std::norm(amplitude(from, to, params, t, norm));
}

double probability_ratio(const ModelParams& params, double t) {
  return closed_form::ratio(params.beta(), params.omega() * t);
}

double occupation(const SiteState& from, Site site, const ModelParams& params,
                  double t) {
  const BiorthogonalSystem system = eigensystem_analytic(params);
  const CoefficientState evolved = evolve(decompose(from, system), params, t);
  const Eigen::Vector2cd ket = reconstruct_ket(evolved, system);
  const Eigen::RowVector2cd bra = reconstruct_bra(evolved, system);
  const Complex expectation = bra * number_operator(site) * ket;
  return expectation.real() / real_norm_factor(evolved);
}

DensityMatrix density_matrix(const CoefficientState& state,
                             const BiorthogonalSystem& system,
                             Normalization norm) {
  DensityMatrix dm;
  dm.rho = reconstruct_ket(state, system) * reconstruct_bra(state, system);
  dm.normalized = norm == Normalization::Renormalized;
  if (dm.normalized) {
    dm.rho /= real_norm_factor(state);
  }
  return dm;
}

// ---- numeric propagator -----------------------------------------------------

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw NonSquareError("expm requires a square matrix");
  }
  const int n = static_cast<int>(m.rows());

  // Scale so the series converges quickly, then square back.
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Eigen::MatrixXcd scaled = m / std::pow(2.0, squarings);

  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 64; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * result.cwiseAbs().maxCoeff()) {
      break;
    }
  }
  for (int k = 0; k < squarings; ++k) {
    result = result * result;
  }
  return result;
}

namespace {

Eigen::VectorXcd embed_initial(const Eigen::MatrixXcd& h,
                               const SiteState& initial) {
  if (h.rows() != h.cols()) {
    throw NonSquareError("propagator requires a square Hamiltonian");
  }
  if (h.rows() == 2) {
    return initial.components;
  }
  if (h.rows() == 4) {
    Eigen::Vector4cd full = Eigen::Vector4cd::Zero();
    full(kOnlyA) = initial.components(0);
    full(kOnlyB) = initial.components(1);
    return full;
  }
  throw DomainError("propagator expects a 2x2 or 4x4 Hamiltonian");
}

Eigen::Vector2cd extract_pair(const Eigen::VectorXcd& full) {
  if (full.size() == 2) {
    return full.head<2>();
  }
  return Eigen::Vector2cd(full(kOnlyA), full(kOnlyB));
}

}  // namespace

Eigen::Vector2cd propagate_ket(const Eigen::MatrixXcd& h,
                               const SiteState& initial, double t) {
  const Eigen::VectorXcd psi0 = embed_initial(h, initial);
  const Eigen::VectorXcd psi_t = expm(-kI * t * h) * psi0;
  return extract_pair(psi_t);
}

Eigen::RowVector2cd propagate_bra(const Eigen::MatrixXcd& h,
                                  const SiteState& initial, double t) {
  const Eigen::VectorXcd psi0 = embed_initial(h, initial);
  const Eigen::RowVectorXcd bra_t =
      psi0.adjoint() * expm(kI * t * h.adjoint());
  Eigen::RowVector2cd out;
  if (bra_t.size() == 2) {
    out = bra_t;
  } else {
    out << bra_t(kOnlyA), bra_t(kOnlyB);
  }
  return out;
}

// ---- closed forms -----------------------------------------------------------

namespace closed_form {

double norm_from_a(double beta, double wt) {
  const double s = std::sin(wt);
  const double c = std::cos(wt);
  return c * c + beta * s * s;
}

double norm_from_b(double beta, double wt) {
  return norm_from_a(1.0 / beta, wt);
}

double prob_a_to_b(double beta, double wt) {
  const double s = std::sin(wt);
  return beta * s * s / norm_from_a(beta, wt);
}

double prob_b_to_a(double beta, double wt) {
  return prob_a_to_b(1.0 / beta, wt);
}

double prob_a_to_a(double beta, double wt) {
  const double c = std::cos(wt);
  return c * c / norm_from_a(beta, wt);
}

double prob_b_to_b(double beta, double wt) {
  return prob_a_to_a(1.0 / beta, wt);
}

double ratio(double beta, double wt) {
  return beta * beta * norm_from_b(beta, wt) / norm_from_a(beta, wt);
}

double occupation_a_from_a(double beta, double wt) {
  return prob_a_to_a(beta, wt);
}

double occupation_b_from_a(double beta, double wt) {
  return prob_a_to_b(beta, wt);
}

}  // namespace closed_form

}  // namespace asymtun
