#include "asymtun/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asymtun/errors.hpp"

namespace asymtun::io {

namespace {

using nlohmann::json;

json spec_to_json(const GridSpec& spec) {
  return json{
      {"tau_min", spec.tau_min},
      {"tau_max", spec.tau_max},
      {"tau_points", spec.tau_points},
      {"beta_min", spec.beta_min},
      {"beta_max", spec.beta_max},
      {"beta_points", spec.beta_points},
      {"beta_scale", spec.beta_scale == BetaScale::Log ? "log" : "linear"},
  };
}

GridSpec spec_from_json(const json& j) {
  GridSpec spec;
  spec.tau_min = j.at("tau_min").get<double>();
  spec.tau_max = j.at("tau_max").get<double>();
  spec.tau_points = j.at("tau_points").get<int>();
  spec.beta_min = j.at("beta_min").get<double>();
  spec.beta_max = j.at("beta_max").get<double>();
  spec.beta_points = j.at("beta_points").get<int>();
  const auto scale = j.at("beta_scale").get<std::string>();
  if (scale == "log") {
    spec.beta_scale = BetaScale::Log;
  } else if (scale == "linear") {
    spec.beta_scale = BetaScale::Linear;
  } else {
    throw IoError("unknown beta_scale '" + scale + "'");
  }
  return spec;
}

json rows_to_json(const std::vector<double>& values, std::size_t n_rows,
                  std::size_t n_cols) {
  json rows = json::array();
  for (std::size_t i = 0; i < n_rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n_cols; ++j) row.push_back(values[i * n_cols + j]);
    rows.push_back(std::move(row));
  }
  return rows;
}

void dump(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_grid_csv(std::ostream& out, const GridResult& result) {
  const auto taus = result.spec.tau_nodes();
  const auto betas = result.spec.beta_nodes();
  out << "# quantity=" << to_string(result.quantity)
      << " tau_points=" << result.spec.tau_points
      << " beta_points=" << result.spec.beta_points << '\n';
  for (std::size_t i = 0; i < taus.size(); ++i) {
    for (std::size_t j = 0; j < betas.size(); ++j) {
      out << format_double(taus[i]) << ',' << format_double(betas[j]) << ','
          << format_double(result.values[i * betas.size() + j]) << '\n';
    }
  }
}

void write_grid_json(std::ostream& out, const GridResult& result) {
  dump(out, json{
                {"quantity", to_string(result.quantity)},
                {"spec", spec_to_json(result.spec)},
                {"values",
                 rows_to_json(result.values,
                              static_cast<std::size_t>(result.spec.tau_points),
                              static_cast<std::size_t>(result.spec.beta_points))},
            });
}

GridData read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty grid CSV");
  char quantity[64] = {};
  int n_tau = 0;
  int n_beta = 0;
  if (std::sscanf(line.c_str(), "# quantity=%63s tau_points=%d beta_points=%d",
                  quantity, &n_tau, &n_beta) != 3 ||
      n_tau < 2 || n_beta < 2) {
    throw IoError("malformed grid CSV header: " + line);
  }

  GridData data;
  data.quantity = quantity;
  data.values.reserve(static_cast<std::size_t>(n_tau) *
                      static_cast<std::size_t>(n_beta));
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double tau = 0.0;
    double beta = 0.0;
    double value = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &tau, &beta, &value) != 3) {
      throw IoError("malformed grid CSV row: " + line);
    }
    const std::size_t i = row / static_cast<std::size_t>(n_beta);
    const std::size_t j = row % static_cast<std::size_t>(n_beta);
    if (j == 0) data.tau.push_back(tau);
    if (i == 0) data.beta.push_back(beta);
    data.values.push_back(value);
    ++row;
  }
  if (row != static_cast<std::size_t>(n_tau) * static_cast<std::size_t>(n_beta)) {
    throw IoError("grid CSV row count does not match header");
  }
  return data;
}

GridResult read_grid_json(std::istream& in) {
  try {
    const json j = json::parse(in);
    GridResult result;
    result.spec = spec_from_json(j.at("spec"));
    result.quantity = grid_quantity_from_string(j.at("quantity").get<std::string>());
    for (const auto& jrow : j.at("values")) {
      for (const auto& jv : jrow) result.values.push_back(jv.get<double>());
    }
    const auto expected = static_cast<std::size_t>(result.spec.tau_points) *
                          static_cast<std::size_t>(result.spec.beta_points);
    if (result.values.size() != expected) {
      throw IoError("grid JSON values do not match the declared dimensions");
    }
    return result;
  } catch (const json::exception& e) {
    throw IoError(std::string("grid JSON parse failure: ") + e.what());
  }
}

void write_timeseries_csv(std::ostream& out, const TimeSeries& series) {
  out << "# timeseries tau_points=" << series.tau.size() << '\n';
  out << "tau";
  for (const auto& name : series.column_names) out << ',' << name;
  out << '\n';
  const std::size_t n_cols = series.column_names.size();
  for (std::size_t i = 0; i < series.tau.size(); ++i) {
    out << format_double(series.tau[i]);
    for (std::size_t j = 0; j < n_cols; ++j) {
      out << ',' << format_double(series.values[i * n_cols + j]);
    }
    out << '\n';
  }
  if (series.spec.with_oracle) {
    out << "# oracle_max_deviation=" << format_double(series.oracle_max_deviation)
        << '\n';
  }
}

void write_timeseries_json(std::ostream& out, const TimeSeries& series) {
  json requested = json::array();
  for (auto c : series.spec.columns) requested.push_back(to_string(c));
  json j{
      {"spec",
       {
           {"tau_min", series.spec.tau_min},
           {"tau_max", series.spec.tau_max},
           {"tau_points", series.spec.tau_points},
           {"columns", std::move(requested)},
           {"initial_site", series.spec.initial_site == Site::A ? "A" : "B"},
           {"rate_n_a0", series.spec.rate_n_a0},
           {"rate_n_b0", series.spec.rate_n_b0},
           {"with_oracle", series.spec.with_oracle},
       }},
      {"columns", series.column_names},
      {"tau", series.tau},
      {"values",
       rows_to_json(series.values, series.tau.size(), series.column_names.size())},
  };
  if (series.spec.with_oracle) {
    j["oracle_max_deviation"] = series.oracle_max_deviation;
  }
  dump(out, j);
}

void write_rates_csv(std::ostream& out, const RateTrajectory& trajectory,
                     const EquilibriumFooter* footer) {
  out << "# rates step=" << format_double(trajectory.step) << '\n';
  for (const auto& sample : trajectory.samples) {
    out << format_double(sample.tau) << ',' << format_double(sample.n_a) << ','
        << format_double(sample.n_b) << '\n';
  }
  if (footer != nullptr) {
    out << "# equilibrium_from=" << format_double(footer->tau_from)
        << " mean_nA=" << format_double(footer->stats.mean_n_a)
        << " mean_nB=" << format_double(footer->stats.mean_n_b)
        << " amplitude_nA=" << format_double(footer->stats.amplitude_n_a) << '\n';
  }
}

void write_rates_json(std::ostream& out, const RateTrajectory& trajectory,
                      const EquilibriumFooter* footer) {
  std::vector<double> tau, n_a, n_b;
  tau.reserve(trajectory.samples.size());
  n_a.reserve(trajectory.samples.size());
  n_b.reserve(trajectory.samples.size());
  for (const auto& sample : trajectory.samples) {
    tau.push_back(sample.tau);
    n_a.push_back(sample.n_a);
    n_b.push_back(sample.n_b);
  }
  json j{
      {"step", trajectory.step},
      {"params",
       {
           {"g", trajectory.params.g()},
           {"alpha", trajectory.params.alpha()},
           {"beta", trajectory.params.beta()},
       }},
      {"tau", std::move(tau)},
      {"n_A", std::move(n_a)},
      {"n_B", std::move(n_b)},
  };
  if (footer != nullptr) {
    j["equilibrium"] = {
        {"from", footer->tau_from},
        {"mean_nA", footer->stats.mean_n_a},
        {"mean_nB", footer->stats.mean_n_b},
        {"amplitude_nA", footer->stats.amplitude_n_a},
    };
  }
  dump(out, j);
}

void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& writer) {
  if (path == "-") {
    writer(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("write to standard output failed");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  writer(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

}  // namespace asymtun::io
