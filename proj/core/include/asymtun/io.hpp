#pragma once

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "asymtun/semiclassical.hpp"
#include "asymtun/sweep.hpp"

namespace asymtun::io {

/// Decimal form with 17 significant digits — enough to reconstruct the
/// exact double on read-back.
std::string format_double(double value);

// Grid CSV layout: one comment header
//   # quantity=<name> tau_points=<n> beta_points=<m>
// followed by n*m data rows `tau,beta,value` in row-major order (tau outer,
// beta inner), LF line endings.
void write_grid_csv(std::ostream& out, const GridResult& result);
void write_grid_json(std::ostream& out, const GridResult& result);

/// What a grid CSV carries: the header names the quantity and the axis
/// sizes; the node coordinates come from the rows themselves.
struct GridData {
  std::string quantity;
  std::vector<double> tau;
  std::vector<double> beta;
  std::vector<double> values;  // row-major, tau rows x beta cols

  double at(int tau_index, int beta_index) const {
    return values[static_cast<std::size_t>(tau_index) * beta.size() +
                  static_cast<std::size_t>(beta_index)];
  }
};

/// Throws IoError on malformed input.
GridData read_grid_csv(std::istream& in);
/// Full round-trip of write_grid_json, spec included.
GridResult read_grid_json(std::istream& in);

// Time-series CSV: `# timeseries tau_points=<n>` comment, a column-name
// line `tau,<col>,...`, then data rows. A `# oracle_max_deviation=<v>`
// footer follows when oracle columns are present.
void write_timeseries_csv(std::ostream& out, const TimeSeries& series);
void write_timeseries_json(std::ostream& out, const TimeSeries& series);

// Rate-trajectory CSV: `# rates step=<s>` comment, `tau,n_A,n_B` rows, and
// when stats are given a footer
//   # equilibrium_from=<tau> mean_nA=<u> mean_nB=<v> amplitude_nA=<w>
struct EquilibriumFooter {
  double tau_from;
  EquilibriumStats stats;
};

void write_rates_csv(std::ostream& out, const RateTrajectory& trajectory,
                     const EquilibriumFooter* footer);
void write_rates_json(std::ostream& out, const RateTrajectory& trajectory,
                      const EquilibriumFooter* footer);

/// Runs `writer` against the file at `path`, or standard output when path
/// is "-". Throws IoError when the file cannot be opened or a write fails.
void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& writer);

}  // namespace asymtun::io
