#include <benchmark/benchmark.h>

#include "edlab/calculus.hpp"
#include "edlab/catalog.hpp"
#include "edlab/explorer.hpp"
#include "edlab/observables.hpp"
#include "edlab/propagate.hpp"

using namespace edlab;

namespace {

Grid cube(std::size_t n, bool periodic) {
  return Grid({Axis{n, -8.0, 8.0, periodic}, Axis{n, -8.0, 8.0, periodic}, Axis{n, -8.0, 8.0, periodic}});
}

SpinorField packet(const Grid& g) {
  std::vector<cplx> psi(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto p = g.point(i);
    const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    psi[i] = std::exp(-r2 / 3.0) * std::polar(1.0, 0.7 * p[0] - 0.3 * p[2]);
  }
  return make_spinor(g, psi, {cplx{0.6}, cplx{0.0, 0.8}}, PhysConstants{});
}

void BM_DerivativeSpectral(benchmark::State& st) {
  const Grid g = cube(static_cast<std::size_t>(st.range(0)), true);
  const auto phi = packet(g);
  for (auto _ : st) benchmark::DoNotOptimize(derivative(g, std::span<const cplx>(phi.comp[0]), 1, 1));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_DerivativeSpectral)->Arg(32)->Arg(64);

void BM_DerivativeFiniteDifference(benchmark::State& st) {
  const Grid g = cube(static_cast<std::size_t>(st.range(0)), false);
  const auto phi = packet(g);
  for (auto _ : st) benchmark::DoNotOptimize(derivative(g, std::span<const cplx>(phi.comp[0]), 1, 1));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_DerivativeFiniteDifference)->Arg(32)->Arg(64);

void BM_Rho(benchmark::State& st) {
  const Grid g = cube(static_cast<std::size_t>(st.range(0)), true);
  const auto phi = packet(g);
  const auto U = PotentialSpec::harmonic(0.5);
  for (auto _ : st) benchmark::DoNotOptimize(rho(phi, U));
}
BENCHMARK(BM_Rho)->Arg(32)->Arg(48);

void BM_RhoS(benchmark::State& st) {
  const Grid g = cube(static_cast<std::size_t>(st.range(0)), true);
  const auto phi = packet(g);
  for (auto _ : st) benchmark::DoNotOptimize(rho_s(phi));
}
BENCHMARK(BM_RhoS)->Arg(32)->Arg(48);

void BM_EvolveStep(benchmark::State& st) {
  const Grid g = cube(static_cast<std::size_t>(st.range(0)), true);
  const auto phi = packet(g);
  const auto U = PotentialSpec::harmonic(0.5);
  for (auto _ : st) benchmark::DoNotOptimize(evolve(phi, U, 1e-3, 10, 10));
  st.SetItemsProcessed(st.iterations() * 10);
}
BENCHMARK(BM_EvolveStep)->Arg(32)->Arg(48);

void BM_SearchObjective(benchmark::State& st) {
  SuperpositionSpec s;
  for (int k = 0; k < st.range(0); ++k)
    s.components.push_back(GaussianComponent{std::polar(1.0, 0.4 * k), 0.5 * k - 1.0, 0.3 * k, 0.6 + 0.1 * k});
  const Lattice l;
  for (auto _ : st) benchmark::DoNotOptimize(lattice_minimum(s, l));
}
BENCHMARK(BM_SearchObjective)->Arg(1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
