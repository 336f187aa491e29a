#include <benchmark/benchmark.h>

#include "asymtun/dynamics.hpp"
#include "asymtun/model.hpp"
#include "asymtun/semiclassical.hpp"
#include "asymtun/spectral.hpp"
#include "asymtun/sweep.hpp"

namespace {

using namespace asymtun;

const ModelParams kParams = ModelParams::from_alpha(1.0, 0.6);

void BM_EigensystemAnalytic(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigensystem_analytic(kParams));
  }
}
BENCHMARK(BM_EigensystemAnalytic);

void BM_EigensystemNumeric(benchmark::State& state) {
  const Eigen::Matrix2cd h = hamiltonian_2x2(kParams);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigensystem_numeric(h));
  }
}
BENCHMARK(BM_EigensystemNumeric);

void BM_ProbabilityClosedForm(benchmark::State& state) {
  double wt = 0.0;
  for (auto _ : state) {
    wt += 1e-3;
    benchmark::DoNotOptimize(closed_form::prob_a_to_b(4.0, wt));
  }
}
BENCHMARK(BM_ProbabilityClosedForm);

void BM_ProbabilityBiorthogonal(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(transition_probability(
        SiteState::a(), SiteState::b(), kParams, t, Normalization::Renormalized));
  }
}
BENCHMARK(BM_ProbabilityBiorthogonal);

void BM_ProbabilityPropagator(benchmark::State& state) {
  const Eigen::Matrix2cd h = hamiltonian_2x2(kParams);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    const Eigen::Vector2cd ket = propagate_ket(h, SiteState::a(), t);
    const double norm =
        (propagate_bra(h, SiteState::a(), t) * ket).value().real();
    benchmark::DoNotOptimize(std::norm(ket(1)) / norm);
  }
}
BENCHMARK(BM_ProbabilityPropagator);

void BM_DefaultGrid(benchmark::State& state) {
  const GridSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid(spec, GridQuantity::ProbAB));
  }
}
BENCHMARK(BM_DefaultGrid);

void BM_RateIntegration(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate({1.0, 0.0, 0.0}, kParams, 50.0, 0.005));
  }
}
BENCHMARK(BM_RateIntegration);

}  // namespace

BENCHMARK_MAIN();
