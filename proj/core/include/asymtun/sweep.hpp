#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "asymtun/model.hpp"
#include "asymtun/semiclassical.hpp"

namespace asymtun {

enum class BetaScale { Linear, Log };

/// Rectangular (tau, beta) grid. Grids are parameterized by beta to match
/// the figure axes; the conversion alpha = (beta-1)/(beta+1) happens at
/// evaluation time. The phase omega t = tau 2 sqrt(beta)/(beta+1) depends
/// only on the node, so grid values are independent of g.
struct GridSpec {
  double tau_min = 0.0;
  double tau_max = 2.0 * std::numbers::pi;
  int tau_points = 201;
  double beta_min = 0.25;
  double beta_max = 4.0;
  int beta_points = 129;
  BetaScale beta_scale = BetaScale::Log;

  /// Throws DomainError unless mins < maxes, points >= 2 and the beta
  /// bounds are strictly positive.
  void validate() const;

  std::vector<double> tau_nodes() const;
  std::vector<double> beta_nodes() const;
};

enum class GridQuantity { ProbAB, ProbBA, Ratio, NormA, NormB };

/// Serialization names: prob_AB, prob_BA, ratio, norm_A, norm_B.
std::string to_string(GridQuantity quantity);
GridQuantity grid_quantity_from_string(const std::string& name);

struct GridResult {
  GridSpec spec;
  GridQuantity quantity = GridQuantity::ProbAB;
  std::vector<double> values;  // row-major, tau rows x beta cols

  double at(int tau_index, int beta_index) const {
    return values[static_cast<std::size_t>(tau_index) *
                      static_cast<std::size_t>(spec.beta_points) +
                  static_cast<std::size_t>(beta_index)];
  }
};

/// Evaluates the closed form of `quantity` at every (tau, beta) node.
/// Deterministic: repeated calls produce identical values.
GridResult grid(const GridSpec& spec, GridQuantity quantity);

// ---- time series ------------------------------------------------------------

enum class SeriesColumn {
  OccA,    // <N_A> in the renormalized state evolved from the initial site
  OccB,    // <N_B> likewise
  ProbAB,  // renormalized A->B transition probability
  ProbBA,  // renormalized B->A transition probability
  NormA,   // norm factor of the state evolved from |A>
  NormB,   // norm factor of the state evolved from |B>
  RateNA,  // semiclassical population n_A (RK4, shared integrator)
  RateNB,  // semiclassical population n_B
};

std::string to_string(SeriesColumn column);

struct TimeSeriesSpec {
  double tau_min = 0.0;
  double tau_max = 2.0 * std::numbers::pi;
  int tau_points = 201;
  std::vector<SeriesColumn> columns = {
      SeriesColumn::OccA,   SeriesColumn::OccB,  SeriesColumn::ProbAB,
      SeriesColumn::ProbBA, SeriesColumn::NormA, SeriesColumn::NormB,
  };
  Site initial_site = Site::A;  // applies to the occupation columns
  double rate_n_a0 = 1.0;       // initial populations for the rate columns
  double rate_n_b0 = 0.0;
  bool with_oracle = false;  // twin `<name>_oracle` matrix-exponential columns

  void validate() const;
  std::vector<double> tau_nodes() const;
};

struct TimeSeries {
  TimeSeriesSpec spec;
  std::vector<std::string> column_names;  // excludes the leading tau column
  std::vector<double> tau;
  std::vector<double> values;  // row-major, tau rows x column_names cols
  /// Largest |closed form - oracle| across all twinned cells; 0 when the
  /// oracle columns were not requested.
  double oracle_max_deviation = 0.0;

  double at(int row, int column) const {
    return values[static_cast<std::size_t>(row) * column_names.size() +
                  static_cast<std::size_t>(column)];
  }
};

/// Tabulates the requested columns on the tau grid. Rate columns come from
/// integrate() itself (sub-stepped only if the grid spacing violates the
/// resolution guard) so they reproduce a direct integrate() call exactly at
/// matching nodes.
TimeSeries timeseries(const ModelParams& params, const TimeSeriesSpec& spec);

}  // namespace asymtun
