// Command-line front end: spectrum inspection, time evolution, figure grids
// and rate-equation runs, all with deterministic CSV/JSON output.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asymtun/dynamics.hpp"
#include "asymtun/errors.hpp"
#include "asymtun/io.hpp"
#include "asymtun/model.hpp"
#include "asymtun/semiclassical.hpp"
#include "asymtun/spectral.hpp"
#include "asymtun/sweep.hpp"

namespace {

using namespace asymtun;

struct ParamOpts {
  double g = 1.0;
  double alpha = 0.6;  // beta = 4, the asymmetry used by the reference figures
  double beta = 4.0;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--g", g, "tunneling amplitude (nonzero)")
        ->capture_default_str();
    alpha_opt = cmd->add_option("--alpha", alpha, "asymmetry, |alpha| < 1")
                    ->capture_default_str();
    beta_opt = cmd->add_option("--beta", beta,
                               "asymmetry as beta = (1+alpha)/(1-alpha) > 0");
    alpha_opt->excludes(beta_opt);
    beta_opt->excludes(alpha_opt);
  }

  ModelParams resolve() const {
    if (beta_opt->count() > 0) return ModelParams::from_beta(g, beta);
    return ModelParams::from_alpha(g, alpha);
  }
};

struct OutputOpts {
  std::string path = "-";
  std::string format = "csv";

  void attach(CLI::App* cmd) {
    cmd->add_option("--output", path, "output file, '-' for standard output")
        ->capture_default_str();
    cmd->add_option("--format", format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
  }

  bool json() const { return format == "json"; }
};

nlohmann::json complex_to_json(const Complex& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

// ---- spectrum ---------------------------------------------------------------

struct SpectrumReport {
  ModelParams params;
  BiorthogonalSystem analytic;
  BiorthogonalSystem numeric;
  Eigen::MatrixXcd metric;
  double pseudo_hermiticity_residual = 0.0;
  double numeric_eigenvalue_deviation = 0.0;
};

SpectrumReport make_spectrum_report(const ModelParams& params) {
  SpectrumReport report{params, eigensystem_analytic(params),
                        eigensystem_numeric(hamiltonian_2x2(params)),
                        Eigen::MatrixXcd(), 0.0, 0.0};
  report.metric = metric_operator(report.analytic);
  const Eigen::Matrix2cd h = hamiltonian_2x2(params);
  report.pseudo_hermiticity_residual =
      (report.metric * h - h.adjoint() * report.metric).norm();
  report.numeric_eigenvalue_deviation =
      (report.analytic.eigenvalues - report.numeric.eigenvalues)
          .cwiseAbs()
          .maxCoeff();
  return report;
}

void write_spectrum_csv(std::ostream& out, const SpectrumReport& report) {
  const auto& p = report.params;
  out << "# spectrum g=" << io::format_double(p.g())
      << " alpha=" << io::format_double(p.alpha())
      << " beta=" << io::format_double(p.beta())
      << " omega=" << io::format_double(p.omega()) << '\n';
  out << "name,re,im\n";
  auto row = [&out](const std::string& name, const Complex& z) {
    out << name << ',' << io::format_double(z.real()) << ','
        << io::format_double(z.imag()) << '\n';
  };
  for (int s = 0; s < 2; ++s) {
    row("eigenvalue_" + std::to_string(s), report.analytic.eigenvalues(s));
  }
  for (int s = 0; s < 2; ++s) {
    for (int i = 0; i < 2; ++i) {
      row("right_" + std::to_string(s) + "_" + std::to_string(i),
          report.analytic.right(i, s));
    }
  }
  for (int s = 0; s < 2; ++s) {
    for (int i = 0; i < 2; ++i) {
      row("left_" + std::to_string(s) + "_" + std::to_string(i),
          report.analytic.left(s, i));
    }
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      row("metric_" + std::to_string(i) + "_" + std::to_string(j),
          report.metric(i, j));
    }
  }
  row("biorthogonality_residual", report.analytic.biorthogonality_residual());
  row("completeness_residual", report.analytic.completeness_residual());
  row("pseudo_hermiticity_residual", report.pseudo_hermiticity_residual);
  row("numeric_eigenvalue_deviation", report.numeric_eigenvalue_deviation);
  row("numeric_biorthogonality_residual",
      report.numeric.biorthogonality_residual());
}

void write_spectrum_json(std::ostream& out, const SpectrumReport& report) {
  auto matrix_to_json = [](const Eigen::MatrixXcd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        row.push_back(complex_to_json(m(i, j)));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  const auto& p = report.params;
  nlohmann::json j{
      {"params",
       {{"g", p.g()}, {"alpha", p.alpha()}, {"beta", p.beta()}, {"omega", p.omega()}}},
      {"eigenvalues",
       nlohmann::json::array({complex_to_json(report.analytic.eigenvalues(0)),
                              complex_to_json(report.analytic.eigenvalues(1))})},
      {"right", matrix_to_json(report.analytic.right)},
      {"left", matrix_to_json(report.analytic.left)},
      {"metric", matrix_to_json(report.metric)},
      {"biorthogonality_residual", report.analytic.biorthogonality_residual()},
      {"completeness_residual", report.analytic.completeness_residual()},
      {"pseudo_hermiticity_residual", report.pseudo_hermiticity_residual},
      {"numeric_eigenvalue_deviation", report.numeric_eigenvalue_deviation},
      {"numeric_biorthogonality_residual",
       report.numeric.biorthogonality_residual()},
  };
  out << j.dump(2) << '\n';
}

// ---- column names <-> SeriesColumn ------------------------------------------

SeriesColumn column_from_string(const std::string& name) {
  static const std::map<std::string, SeriesColumn> names{
      {"occ_A", SeriesColumn::OccA},     {"occ_B", SeriesColumn::OccB},
      {"prob_AB", SeriesColumn::ProbAB}, {"prob_BA", SeriesColumn::ProbBA},
      {"norm_A", SeriesColumn::NormA},   {"norm_B", SeriesColumn::NormB},
      {"rate_nA", SeriesColumn::RateNA}, {"rate_nB", SeriesColumn::RateNB},
  };
  const auto it = names.find(name);
  if (it == names.end()) {
    throw DomainError("unknown column '" + name +
                      "' (expected occ_A, occ_B, prob_AB, prob_BA, norm_A, "
                      "norm_B, rate_nA or rate_nB)");
  }
  return it->second;
}

int find_column(const std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-site asymmetric-tunneling model: biorthogonal spectra, exact time "
      "evolution, figure grids and semiclassical rates"};
  app.require_subcommand(1);
  // Let global flags such as --config be written after the subcommand name.
  app.fallthrough();
  app.set_config("--config")->description(
      "read options from an INI file with one section per subcommand; "
      "command-line flags take precedence");

  // spectrum ------------------------------------------------------------
  auto* spectrum = app.add_subcommand(
      "spectrum", "eigenvalues, biorthogonal eigenvectors and metric operator");
  ParamOpts spectrum_params;
  spectrum_params.attach(spectrum);
  OutputOpts spectrum_out;
  spectrum_out.attach(spectrum);
  spectrum->callback([&] {
    const auto report = make_spectrum_report(spectrum_params.resolve());
    io::write_output(spectrum_out.path, [&](std::ostream& os) {
      spectrum_out.json() ? write_spectrum_json(os, report)
                          : write_spectrum_csv(os, report);
    });
    std::cerr << "spectrum: numeric eigenvalue deviation "
              << io::format_double(report.numeric_eigenvalue_deviation) << '\n';
  });

  // evolve --------------------------------------------------------------
  auto* evolve = app.add_subcommand(
      "evolve", "time series of occupations, probabilities and norm factors");
  ParamOpts evolve_params;
  evolve_params.attach(evolve);
  OutputOpts evolve_out;
  evolve_out.attach(evolve);
  TimeSeriesSpec series_spec;
  std::vector<std::string> column_names;
  std::string site = "A";
  evolve->add_option("--tau-min", series_spec.tau_min, "first tau node")
      ->capture_default_str();
  evolve->add_option("--tau-max", series_spec.tau_max, "last tau node")
      ->capture_default_str();
  evolve->add_option("--tau-points", series_spec.tau_points, "number of tau nodes")
      ->capture_default_str();
  evolve
      ->add_option("--columns", column_names,
                   "comma-separated columns: occ_A, occ_B, prob_AB, prob_BA, "
                   "norm_A, norm_B, rate_nA, rate_nB")
      ->delimiter(',');
  evolve->add_option("--site", site, "initial site for the occupation columns")
      ->capture_default_str()
      ->check(CLI::IsMember({"A", "B"}));
  evolve
      ->add_option("--n-a0", series_spec.rate_n_a0,
                   "initial n_A for the rate columns")
      ->capture_default_str();
  evolve
      ->add_option("--n-b0", series_spec.rate_n_b0,
                   "initial n_B for the rate columns")
      ->capture_default_str();
  evolve->add_flag("--oracle", series_spec.with_oracle,
                   "add matrix-exponential twin columns and report the "
                   "largest deviation");
  evolve->callback([&] {
    series_spec.initial_site = site == "A" ? Site::A : Site::B;
    if (!column_names.empty()) {
      series_spec.columns.clear();
      for (const auto& name : column_names) {
        series_spec.columns.push_back(column_from_string(name));
      }
    }
    const auto series = timeseries(evolve_params.resolve(), series_spec);
    io::write_output(evolve_out.path, [&](std::ostream& os) {
      evolve_out.json() ? io::write_timeseries_json(os, series)
                        : io::write_timeseries_csv(os, series);
    });
    const int occ_a = find_column(series.column_names, "occ_A");
    const int occ_b = find_column(series.column_names, "occ_B");
    if (occ_a >= 0 && occ_b >= 0) {
      double drift = 0.0;
      for (std::size_t i = 0; i < series.tau.size(); ++i) {
        drift = std::max(drift,
                         std::abs(series.at(static_cast<int>(i), occ_a) +
                                  series.at(static_cast<int>(i), occ_b) - 1.0));
      }
      std::cerr << "evolve: occupation conservation max |occ_A + occ_B - 1| = "
                << io::format_double(drift) << '\n';
    }
    if (series_spec.with_oracle) {
      std::cerr << "evolve: oracle max deviation = "
                << io::format_double(series.oracle_max_deviation) << '\n';
    }
  });

  // grid ----------------------------------------------------------------
  auto* grid_cmd = app.add_subcommand(
      "grid", "2-D (tau, beta) grid of a closed-form quantity");
  OutputOpts grid_out;
  grid_out.attach(grid_cmd);
  GridSpec grid_spec;
  std::string quantity = "prob_AB";
  std::string scale = "log";
  grid_cmd
      ->add_option("--quantity", quantity,
                   "prob_AB, prob_BA, ratio, norm_A or norm_B")
      ->capture_default_str();
  grid_cmd->add_option("--tau-min", grid_spec.tau_min, "first tau node")
      ->capture_default_str();
  grid_cmd->add_option("--tau-max", grid_spec.tau_max, "last tau node")
      ->capture_default_str();
  grid_cmd->add_option("--tau-points", grid_spec.tau_points, "tau nodes")
      ->capture_default_str();
  grid_cmd->add_option("--beta-min", grid_spec.beta_min, "smallest beta")
      ->capture_default_str();
  grid_cmd->add_option("--beta-max", grid_spec.beta_max, "largest beta")
      ->capture_default_str();
  grid_cmd->add_option("--beta-points", grid_spec.beta_points, "beta nodes")
      ->capture_default_str();
  grid_cmd->add_option("--beta-scale", scale, "node spacing for beta")
      ->capture_default_str()
      ->check(CLI::IsMember({"linear", "log"}));
  grid_cmd->callback([&] {
    grid_spec.beta_scale = scale == "log" ? BetaScale::Log : BetaScale::Linear;
    const auto result = grid(grid_spec, grid_quantity_from_string(quantity));
    io::write_output(grid_out.path, [&](std::ostream& os) {
      grid_out.json() ? io::write_grid_json(os, result)
                      : io::write_grid_csv(os, result);
    });
    std::cerr << "grid: " << to_string(result.quantity) << ' '
              << grid_spec.tau_points << 'x' << grid_spec.beta_points
              << " nodes\n";
  });

  // rates ---------------------------------------------------------------
  auto* rates = app.add_subcommand(
      "rates", "semiclassical rate-equation trajectory with equilibrium stats");
  ParamOpts rates_params;
  rates_params.attach(rates);
  OutputOpts rates_out;
  rates_out.attach(rates);
  RatePopulations initial;
  double tau_end = 50.0;
  double step = 0.005;
  double equilibrium_from = 10.0;
  bool no_equilibrium = false;
  rates->add_option("--tau-min", initial.tau, "initial tau")
      ->capture_default_str();
  rates->add_option("--tau-max", tau_end, "integration horizon")
      ->capture_default_str();
  rates->add_option("--step", step, "RK4 step in tau")->capture_default_str();
  rates->add_option("--n-a0", initial.n_a, "initial n_A")->capture_default_str();
  rates->add_option("--n-b0", initial.n_b, "initial n_B")->capture_default_str();
  rates
      ->add_option("--equilibrium-from", equilibrium_from,
                   "start of the averaging window for the footer")
      ->capture_default_str();
  rates->add_flag("--no-equilibrium", no_equilibrium,
                  "skip the equilibrium footer");
  rates->callback([&] {
    const auto params = rates_params.resolve();
    const auto trajectory = integrate(initial, params, tau_end, step);
    io::EquilibriumFooter footer{equilibrium_from, {}};
    if (!no_equilibrium) {
      footer.stats = equilibrium_stats(trajectory, equilibrium_from);
    }
    io::write_output(rates_out.path, [&](std::ostream& os) {
      const auto* footer_ptr = no_equilibrium ? nullptr : &footer;
      rates_out.json() ? io::write_rates_json(os, trajectory, footer_ptr)
                       : io::write_rates_csv(os, trajectory, footer_ptr);
    });
    const double total = initial.n_a + initial.n_b;
    double drift = 0.0;
    for (const auto& sample : trajectory.samples) {
      drift = std::max(drift, std::abs(sample.n_a + sample.n_b - total));
    }
    std::cerr << "rates: conservation max |n_A + n_B - total| = "
              << io::format_double(drift) << '\n';
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const asymtun::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
