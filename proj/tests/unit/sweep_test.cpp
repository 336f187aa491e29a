#include <cmath>
#include <numbers>

#include <doctest.h>

#include "asymtun/dynamics.hpp"
#include "asymtun/errors.hpp"
#include "asymtun/model.hpp"
#include "asymtun/semiclassical.hpp"
#include "asymtun/sweep.hpp"

using namespace asymtun;

TEST_CASE("grid spec validation") {
  CHECK_NOTHROW(GridSpec{}.validate());

  GridSpec bad_tau;
  bad_tau.tau_min = 1.0;
  bad_tau.tau_max = 1.0;
  CHECK_THROWS_AS(bad_tau.validate(), DomainError);

  GridSpec few_points;
  few_points.tau_points = 1;
  CHECK_THROWS_AS(few_points.validate(), DomainError);
  few_points.tau_points = 201;
  few_points.beta_points = 0;
  CHECK_THROWS_AS(few_points.validate(), DomainError);

  GridSpec bad_beta;
  bad_beta.beta_min = 0.0;
  CHECK_THROWS_AS(bad_beta.validate(), DomainError);
  bad_beta.beta_min = -1.0;
  CHECK_THROWS_AS(bad_beta.validate(), DomainError);
  bad_beta.beta_min = 5.0;  // above beta_max
  CHECK_THROWS_AS(bad_beta.validate(), DomainError);
}

TEST_CASE("grid nodes") {
  GridSpec spec;
  spec.tau_min = 0.0;
  spec.tau_max = 1.0;
  spec.tau_points = 5;
  const auto taus = spec.tau_nodes();
  REQUIRE(taus.size() == 5);
  CHECK(taus.front() == 0.0);
  CHECK(taus.back() == 1.0);
  CHECK(taus[2] == doctest::Approx(0.5).epsilon(1e-15));

  // Default beta grid: log-spaced, endpoints exact, symmetric about 1.
  const auto betas = GridSpec{}.beta_nodes();
  REQUIRE(betas.size() == 129);
  CHECK(betas.front() == 0.25);
  CHECK(betas.back() == 4.0);
  CHECK(betas[64] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t k = 0; k < betas.size(); ++k) {
    CHECK(betas[k] * betas[betas.size() - 1 - k] ==
          doctest::Approx(1.0).epsilon(1e-13));
  }

  GridSpec linear;
  linear.beta_scale = BetaScale::Linear;
  linear.beta_min = 1.0;
  linear.beta_max = 3.0;
  linear.beta_points = 3;
  const auto lin = linear.beta_nodes();
  CHECK(lin[0] == 1.0);
  CHECK(lin[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lin[2] == 3.0);
}

TEST_CASE("quantity names round-trip") {
  for (auto q : {GridQuantity::ProbAB, GridQuantity::ProbBA, GridQuantity::Ratio,
                 GridQuantity::NormA, GridQuantity::NormB}) {
    CHECK(grid_quantity_from_string(to_string(q)) == q);
  }
  CHECK_THROWS_AS(grid_quantity_from_string("bogus"), DomainError);
}

TEST_CASE("grid values at the symmetric slice follow sin^2") {
  GridSpec spec;
  spec.tau_min = 0.0;
  spec.tau_max = 2.0 * std::numbers::pi;
  spec.tau_points = 41;
  spec.beta_min = 1.0;
  spec.beta_max = 2.0;
  spec.beta_points = 2;
  spec.beta_scale = BetaScale::Linear;
  const auto result = grid(spec, GridQuantity::ProbAB);
  const auto taus = spec.tau_nodes();
  for (int i = 0; i < spec.tau_points; ++i) {
    const double s = std::sin(taus[static_cast<std::size_t>(i)]);
    CHECK(result.at(i, 0) == doctest::Approx(s * s).scale(1.0).epsilon(1e-14));
  }
}

TEST_CASE("grid anchors at the quarter phase") {
  // tau such that omega t = pi/4 at beta = 4 (phase factor 0.8).
  GridSpec spec;
  spec.tau_min = 0.0;
  spec.tau_max = std::numbers::pi / 4.0 / 0.8;
  spec.tau_points = 2;
  spec.beta_min = 2.0;
  spec.beta_max = 4.0;
  spec.beta_points = 2;
  spec.beta_scale = BetaScale::Linear;
  CHECK(grid(spec, GridQuantity::ProbAB).at(1, 1) ==
        doctest::Approx(0.8).epsilon(1e-12));
  CHECK(grid(spec, GridQuantity::ProbBA).at(1, 1) ==
        doctest::Approx(0.2).epsilon(1e-12));
  CHECK(grid(spec, GridQuantity::Ratio).at(1, 1) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(grid(spec, GridQuantity::NormA).at(1, 1) ==
        doctest::Approx(2.5).epsilon(1e-12));
  CHECK(grid(spec, GridQuantity::NormB).at(1, 1) ==
        doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("ratio grid starts at beta squared") {
  const GridSpec spec;
  const auto result = grid(spec, GridQuantity::Ratio);
  const auto betas = spec.beta_nodes();
  for (int j = 0; j < spec.beta_points; ++j) {
    const double beta = betas[static_cast<std::size_t>(j)];
    CHECK(result.at(0, j) == doctest::Approx(beta * beta).epsilon(1e-12));
  }
}

TEST_CASE("grid evaluation is deterministic and reciprocal") {
  const GridSpec spec;
  const auto ab1 = grid(spec, GridQuantity::ProbAB);
  const auto ab2 = grid(spec, GridQuantity::ProbAB);
  REQUIRE(ab1.values.size() == ab2.values.size());
  for (std::size_t k = 0; k < ab1.values.size(); ++k) {
    CHECK(ab1.values[k] == ab2.values[k]);  // bitwise
  }

  // prob_AB(tau, beta) = prob_BA(tau, 1/beta) on the log-symmetric grid.
  const auto ba = grid(spec, GridQuantity::ProbBA);
  for (int i = 0; i < spec.tau_points; i += 7) {
    for (int j = 0; j < spec.beta_points; ++j) {
      CHECK(std::abs(ab1.at(i, j) - ba.at(i, spec.beta_points - 1 - j)) < 1e-12);
    }
  }

  // All probabilities within [0, 1], ratios positive and finite.
  const auto ratio = grid(spec, GridQuantity::Ratio);
  for (std::size_t k = 0; k < ab1.values.size(); ++k) {
    CHECK(ab1.values[k] >= 0.0);
    CHECK(ab1.values[k] <= 1.0);
    CHECK(ratio.values[k] > 0.0);
    CHECK(std::isfinite(ratio.values[k]));
  }
}

TEST_CASE("time series columns at beta = 4") {
  const auto params = ModelParams::from_alpha(1.0, 0.6);
  const TimeSeriesSpec spec;
  const auto series = timeseries(params, spec);
  REQUIRE(series.column_names.size() == 6);
  REQUIRE(series.tau.size() == 201);
  CHECK(series.column_names[0] == "occ_A");
  CHECK(series.column_names[5] == "norm_B");

  CHECK(series.at(0, 0) == 1.0);  // occ_A at tau = 0
  CHECK(series.at(0, 1) == 0.0);  // occ_B at tau = 0
  for (int i = 0; i < 201; i += 13) {
    CHECK(std::abs(series.at(i, 0) + series.at(i, 1) - 1.0) < 1e-12);
    const double wt = series.tau[static_cast<std::size_t>(i)] * 0.8;
    CHECK(series.at(i, 2) ==
          doctest::Approx(closed_form::prob_a_to_b(4.0, wt)).epsilon(1e-12));
  }
}

TEST_CASE("time series rate columns reproduce the integrator bitwise") {
  const auto params = ModelParams::from_alpha(1.0, 0.6);
  TimeSeriesSpec spec;
  spec.tau_max = 2.0;
  spec.tau_points = 201;  // spacing 0.01, well under the guard
  spec.columns = {SeriesColumn::RateNA, SeriesColumn::RateNB};
  const auto series = timeseries(params, spec);

  const auto trajectory = integrate({1.0, 0.0, 0.0}, params, 2.0, 0.01);
  REQUIRE(trajectory.samples.size() >= 201);
  for (int i = 0; i < 201; ++i) {
    const auto& sample = trajectory.samples[static_cast<std::size_t>(i)];
    CHECK(series.at(i, 0) == sample.n_a);  // bitwise
    CHECK(series.at(i, 1) == sample.n_b);
  }
}

TEST_CASE("time series rate columns honor the resolution guard by substepping") {
  const auto params = ModelParams::from_alpha(1.0, 0.6);
  TimeSeriesSpec spec;
  spec.tau_max = 40.0;
  spec.tau_points = 41;  // spacing 1.0 would violate step <= period/50
  spec.columns = {SeriesColumn::RateNA, SeriesColumn::RateNB};
  const auto series = timeseries(params, spec);
  for (int i = 0; i < 41; ++i) {
    CHECK(std::abs(series.at(i, 0) + series.at(i, 1) - 1.0) < 1e-9);
  }
  CHECK(series.at(40, 0) < series.at(40, 1));  // site B favored at beta = 4
}

TEST_CASE("time series oracle columns") {
  const auto params = ModelParams::from_alpha(1.0, 0.6);
  TimeSeriesSpec spec;
  spec.tau_points = 51;
  spec.with_oracle = true;
  const auto series = timeseries(params, spec);
  REQUIRE(series.column_names.size() == 12);
  CHECK(series.column_names[0] == "occ_A");
  CHECK(series.column_names[1] == "occ_A_oracle");
  CHECK(series.oracle_max_deviation < 1e-10);
  for (int i = 0; i < 51; i += 5) {
    CHECK(std::abs(series.at(i, 0) - series.at(i, 1)) < 1e-10);
  }
}

TEST_CASE("time series from site B") {
  const auto params = ModelParams::from_alpha(1.0, 0.6);
  TimeSeriesSpec spec;
  spec.tau_points = 21;
  spec.initial_site = Site::B;
  spec.columns = {SeriesColumn::OccA, SeriesColumn::OccB};
  const auto series = timeseries(params, spec);
  CHECK(series.at(0, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(series.at(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  for (int i = 0; i < 21; i += 4) {
    const double t = series.tau[static_cast<std::size_t>(i)];  // g = 1
    CHECK(series.at(i, 0) ==
          doctest::Approx(occupation(SiteState::b(), Site::A, params, t))
              .scale(1.0)
              .epsilon(1e-11));
    CHECK(std::abs(series.at(i, 0) + series.at(i, 1) - 1.0) < 1e-12);
  }
}

TEST_CASE("time series spec validation") {
  const auto params = ModelParams::from_alpha(1.0, 0.6);
  TimeSeriesSpec bad;
  bad.tau_points = 1;
  CHECK_THROWS_AS(timeseries(params, bad), DomainError);
  TimeSeriesSpec empty;
  empty.columns.clear();
  CHECK_THROWS_AS(timeseries(params, empty), DomainError);
  TimeSeriesSpec negative;
  negative.rate_n_a0 = -0.5;
  CHECK_THROWS_AS(timeseries(params, negative), DomainError);
}
