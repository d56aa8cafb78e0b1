#include "confnet/connmass.hpp"
#include "confnet/geometry.hpp"
#include "confnet/linkmodels.hpp"
#include "confnet/mc_sim.hpp"
#include "confnet/pfc_analytic.hpp"
#include "confnet/specfun.hpp"

#include <benchmark/benchmark.h>

using namespace confnet;

static void BM_RegularizedLowerGamma(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0));
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::regularized_lower_gamma(a, x));
        x = x > 3.0 * a ? 0.1 : x * 1.07;
    }
}
BENCHMARK(BM_RegularizedLowerGamma)->Arg(2)->Arg(16)->Arg(128);

static void BM_Gauss2F1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(specfun::gauss_2f1(2.5, 9.0, 3.0, -1.0));
}
BENCHMARK(BM_Gauss2F1);

static void BM_MimoH(benchmark::State& state) {
    const auto model = ConnectionModel::mimo(2, static_cast<int>(state.range(0)), {1.0, 2.0, 3});
    double r = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pair_connectedness(model, r));
        r = r > 5.0 ? 0.0 : r + 0.01;
    }
}
BENCHMARK(BM_MimoH)->Arg(2)->Arg(8)->Arg(64);

static void BM_MassQuadrature(benchmark::State& state) {
    const auto model = ConnectionModel::mimo(2, static_cast<int>(state.range(0)), {1.0, 2.0, 3});
    for (auto _ : state) benchmark::DoNotOptimize(mass_quadrature(model).value);
}
BENCHMARK(BM_MassQuadrature)->Arg(2)->Arg(16)->Arg(64);

static void BM_AssembleHouse(benchmark::State& state) {
    const auto model = ConnectionModel::mimo(2, 2, {1.0, 2.0, 3});
    const RightPrism house = house_prism(7.0);
    std::vector<double> rhos;
    for (int i = 0; i <= 55; ++i) rhos.push_back(0.1 + 0.02 * i);
    for (auto _ : state) benchmark::DoNotOptimize(assemble(house, model, rhos).points.size());
}
BENCHMARK(BM_AssembleHouse);

static void BM_ExactOracle(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto pts = sample_uniform(cube_prism(3.0), n, 1);
    const auto model = ConnectionModel::mimo(2, 2, {1.0, 2.0, 3});
    for (auto _ : state) benchmark::DoNotOptimize(exact_connectivity_probability(pts, model));
}
BENCHMARK(BM_ExactOracle)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_RunTrials(benchmark::State& state) {
    McConfig cfg = McConfig::from_density(static_cast<double>(state.range(0)) / 10.0,
                                          ConnectionModel::mimo(2, 2, {1.0, 2.0, 3}), house_prism(7.0), 100, 1);
    for (auto _ : state) benchmark::DoNotOptimize(run_trials(cfg).connected);
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_RunTrials)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_ConnectionField(benchmark::State& state) {
    Engine eng(3);
    const auto pts = sample_polygon({{0, 0}, {10, 0}, {10, 10}, {0, 10}}, 150, eng);
    const auto model = ConnectionModel::siso({1.0, 2.0, 2});
    const auto g = static_cast<std::size_t>(state.range(0));
    const GridSpec grid{{0, 0, 0}, {10, 10, 0}, g, g, 1};
    for (auto _ : state) benchmark::DoNotOptimize(connection_field(pts, model, grid).values.size());
}
BENCHMARK(BM_ConnectionField)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
