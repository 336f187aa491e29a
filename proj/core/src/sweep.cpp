#include "asymtun/sweep.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "asymtun/dynamics.hpp"
#include "asymtun/errors.hpp"

namespace asymtun {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> nodes(static_cast<std::size_t>(n));
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (int k = 0; k < n; ++k) nodes[static_cast<std::size_t>(k)] = lo + k * step;
  nodes.front() = lo;
  nodes.back() = hi;
  return nodes;
}

double phase(double tau, double beta) {
  // omega t with t = tau/|g|: omega/|g| = sqrt(1 - alpha^2) = 2 sqrt(beta)/(beta+1).
  return tau * 2.0 * std::sqrt(beta) / (beta + 1.0);
}

double evaluate(GridQuantity quantity, double beta, double wt) {
  switch (quantity) {
    case GridQuantity::ProbAB:
      return closed_form::prob_a_to_b(beta, wt);
    case GridQuantity::ProbBA:
      return closed_form::prob_b_to_a(beta, wt);
    case GridQuantity::Ratio:
      return closed_form::ratio(beta, wt);
    case GridQuantity::NormA:
      return closed_form::norm_from_a(beta, wt);
    case GridQuantity::NormB:
      return closed_form::norm_from_b(beta, wt);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

void GridSpec::validate() const {
  if (!(std::isfinite(tau_min) && std::isfinite(tau_max) && tau_min < tau_max)) {
    throw DomainError("grid requires tau_min < tau_max");
  }
  if (tau_points < 2 || beta_points < 2) {
    throw DomainError("grid requires at least 2 points per axis");
  }
  if (!(std::isfinite(beta_min) && std::isfinite(beta_max) && beta_min > 0.0 &&
        beta_min < beta_max)) {
    throw DomainError("grid requires 0 < beta_min < beta_max");
  }
}

std::vector<double> GridSpec::tau_nodes() const {
  return linspace(tau_min, tau_max, tau_points);
}

std::vector<double> GridSpec::beta_nodes() const {
  if (beta_scale == BetaScale::Linear) {
    return linspace(beta_min, beta_max, beta_points);
  }
  auto nodes = linspace(std::log(beta_min), std::log(beta_max), beta_points);
  for (auto& b : nodes) b = std::exp(b);
  nodes.front() = beta_min;
  nodes.back() = beta_max;
  return nodes;
}

std::string to_string(GridQuantity quantity) {
  switch (quantity) {
    case GridQuantity::ProbAB: return "prob_AB";
    case GridQuantity::ProbBA: return "prob_BA";
    case GridQuantity::Ratio: return "ratio";
    case GridQuantity::NormA: return "norm_A";
    case GridQuantity::NormB: return "norm_B";
  }
  throw std::logic_error("unreachable");
}

GridQuantity grid_quantity_from_string(const std::string& name) {
  if (name == "prob_AB") return GridQuantity::ProbAB;
  if (name == "prob_BA") return GridQuantity::ProbBA;
  if (name == "ratio") return GridQuantity::Ratio;
  if (name == "norm_A") return GridQuantity::NormA;
  if (name == "norm_B") return GridQuantity::NormB;
  throw DomainError("unknown grid quantity '" + name +
                    "' (expected prob_AB, prob_BA, ratio, norm_A or norm_B)");
}

GridResult grid(const GridSpec& spec, GridQuantity quantity) {
  spec.validate();
  const auto taus = spec.tau_nodes();
  const auto betas = spec.beta_nodes();

  GridResult result{spec, quantity, {}};
  result.values.resize(taus.size() * betas.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    for (std::size_t j = 0; j < betas.size(); ++j) {
      result.values[i * betas.size() + j] =
          evaluate(quantity, betas[j], phase(taus[i], betas[j]));
    }
  }
  return result;
}

// ---- time series ------------------------------------------------------------

std::string to_string(SeriesColumn column) {
  switch (column) {
    case SeriesColumn::OccA: return "occ_A";
    case SeriesColumn::OccB: return "occ_B";
    case SeriesColumn::ProbAB: return "prob_AB";
    case SeriesColumn::ProbBA: return "prob_BA";
    case SeriesColumn::NormA: return "norm_A";
    case SeriesColumn::NormB: return "norm_B";
    case SeriesColumn::RateNA: return "rate_nA";
    case SeriesColumn::RateNB: return "rate_nB";
  }
  throw std::logic_error("unreachable");
}

void TimeSeriesSpec::validate() const {
  if (!(std::isfinite(tau_min) && std::isfinite(tau_max) && tau_min < tau_max)) {
    throw DomainError("time series requires tau_min < tau_max");
  }
  if (tau_points < 2) {
    throw DomainError("time series requires at least 2 tau points");
  }
  if (columns.empty()) {
    throw DomainError("time series requires at least one column");
  }
  if (!(rate_n_a0 >= 0.0 && rate_n_b0 >= 0.0 && rate_n_a0 + rate_n_b0 > 0.0)) {
    throw DomainError("rate populations must be nonnegative with positive sum");
  }
}

std::vector<double> TimeSeriesSpec::tau_nodes() const {
  return linspace(tau_min, tau_max, tau_points);
}

namespace {

bool is_rate_column(SeriesColumn c) {
  return c == SeriesColumn::RateNA || c == SeriesColumn::RateNB;
}

double closed_form_value(SeriesColumn column, const TimeSeriesSpec& spec,
                         double beta, double wt) {
  // Occupations from |B> map onto the from-|A> forms of the mirrored model
  // (A<->B swap sends beta to 1/beta at the same phase).
  switch (column) {
    case SeriesColumn::OccA:
      return spec.initial_site == Site::A
                 ? closed_form::occupation_a_from_a(beta, wt)
                 : closed_form::occupation_b_from_a(1.0 / beta, wt);
    case SeriesColumn::OccB:
      return spec.initial_site == Site::A
                 ? closed_form::occupation_b_from_a(beta, wt)
                 : closed_form::occupation_a_from_a(1.0 / beta, wt);
    case SeriesColumn::ProbAB:
      return closed_form::prob_a_to_b(beta, wt);
    case SeriesColumn::ProbBA:
      return closed_form::prob_b_to_a(beta, wt);
    case SeriesColumn::NormA:
      return closed_form::norm_from_a(beta, wt);
    case SeriesColumn::NormB:
      return closed_form::norm_from_b(beta, wt);
    default:
      throw std::logic_error("not a closed-form column");
  }
}

/// Matrix-exponential twin of closed_form_value; shares no code with the
/// eigendecomposition route.
class PropagatorOracle {
 public:
  PropagatorOracle(const ModelParams& params, const TimeSeriesSpec& spec)
      : h_(hamiltonian_2x2(params)),
        abs_g_(std::abs(params.g())),
        initial_site_(spec.initial_site) {}

  double value(SeriesColumn column, double tau) {
    const double t = tau / abs_g_;
    switch (column) {
      case SeriesColumn::OccA:
        return occupation(Site::A, t);
      case SeriesColumn::OccB:
        return occupation(Site::B, t);
      case SeriesColumn::ProbAB:
        return probability(Site::A, Site::B, t);
      case SeriesColumn::ProbBA:
        return probability(Site::B, Site::A, t);
      case SeriesColumn::NormA:
        return norm(Site::A, t);
      case SeriesColumn::NormB:
        return norm(Site::B, t);
      default:
        throw std::logic_error("not an oracle column");
    }
  }

 private:
  double norm(Site from, double t) const {
    const SiteState initial = SiteState::at(from);
    return (propagate_bra(h_, initial, t) * propagate_ket(h_, initial, t))
        .value()
        .real();
  }

  double probability(Site from, Site to, double t) const {
    const SiteState initial = SiteState::at(from);
    const Complex raw =
        propagate_ket(h_, initial, t)(to == Site::A ? 0 : 1);
    return std::norm(raw) / norm(from, t);
  }

  double occupation(Site site, double t) const {
    const SiteState initial = SiteState::at(initial_site_);
    const Eigen::Vector2cd ket = propagate_ket(h_, initial, t);
    const Eigen::RowVector2cd bra = propagate_bra(h_, initial, t);
    const Complex raw = (bra * number_operator(site) * ket).value();
    return raw.real() / (bra * ket).value().real();
  }

  Eigen::Matrix2cd h_;
  double abs_g_;
  Site initial_site_;
};

}  // namespace

TimeSeries timeseries(const ModelParams& params, const TimeSeriesSpec& spec) {
  spec.validate();
  const auto taus = spec.tau_nodes();
  const double beta = params.beta();

  bool wants_rates = false;
  for (auto c : spec.columns) wants_rates = wants_rates || is_rate_column(c);

  // Rate columns come from the real integrator. If the grid spacing is too
  // coarse for the resolution guard, integrate on an exact subdivision and
  // sample every substeps-th node.
  RateTrajectory trajectory{{}, 0.0, params};
  std::size_t substeps = 1;
  if (wants_rates) {
    const double spacing =
        (spec.tau_max - spec.tau_min) / static_cast<double>(spec.tau_points - 1);
    const double max_step = driving_period_tau(params) / 50.0;
    while (spacing / static_cast<double>(substeps) > max_step) ++substeps;
    trajectory =
        integrate({spec.rate_n_a0, spec.rate_n_b0, spec.tau_min}, params,
                  spec.tau_max, spacing / static_cast<double>(substeps));
  }

  TimeSeries series;
  series.spec = spec;
  series.tau = taus;
  for (auto c : spec.columns) {
    series.column_names.push_back(to_string(c));
    if (spec.with_oracle && !is_rate_column(c)) {
      series.column_names.push_back(to_string(c) + "_oracle");
    }
  }

  PropagatorOracle oracle(params, spec);
  series.values.reserve(taus.size() * series.column_names.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double wt = phase(taus[i], beta);
    for (auto c : spec.columns) {
      double value = 0.0;
      if (is_rate_column(c)) {
        const auto& sample = trajectory.samples.at(i * substeps);
        value = c == SeriesColumn::RateNA ? sample.n_a : sample.n_b;
        series.values.push_back(value);
        continue;
      }
      value = closed_form_value(c, spec, beta, wt);
      series.values.push_back(value);
      if (spec.with_oracle) {
        const double twin = oracle.value(c, taus[i]);
        series.values.push_back(twin);
        series.oracle_max_deviation =
            std::max(series.oracle_max_deviation, std::abs(value - twin));
      }
    }
  }
  return series;
}

}  // namespace asymtun
