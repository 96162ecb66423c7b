#include <benchmark/benchmark.h>

#include <random>

#include "mpd/bound.hpp"
#include "mpd/mechanics.hpp"
#include "mpd/multipole.hpp"

namespace {

using namespace mpd;

Tet reference_tet() {
    return Tet(Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1});
}

PolyScalarField dense_poly(int degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PolyScalarField f;
    for (int e0 = 0; e0 <= degree; ++e0) {
        for (int e1 = 0; e1 + e0 <= degree; ++e1) {
            for (int e2 = 0; e2 + e1 + e0 <= degree; ++e2) f.addTerm({{e0, e1, e2}}, u(rng));
        }
    }
    return f;
}

void BM_IntegrateTet(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    const Tet t = reference_tet();
    const PolyScalarField f = dense_poly(degree, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_tet(f, t));
    }
}
BENCHMARK(BM_IntegrateTet)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_QuadBoundBuild(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    std::vector<PolyScalarField> comps;
    for (int m = 0; m < 9; ++m) comps.push_back(dense_poly(degree, 100 + m));
    const DensityPatch rho(reference_tet(), 2, std::move(comps));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bound_quadrupole(rho));
    }
}
BENCHMARK(BM_QuadBoundBuild)->Arg(1)->Arg(2)->Arg(3);

void BM_QuadBoundEvaluate(benchmark::State& state) {
    std::vector<PolyScalarField> comps;
    for (int m = 0; m < 9; ++m) comps.push_back(dense_poly(2, 200 + m));
    const QuadBound bound = bound_quadrupole(DensityPatch(reference_tet(), 2, std::move(comps)));
    const PolyScalarField phi = dense_poly(4, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_quad_bound(bound, phi));
    }
}
BENCHMARK(BM_QuadBoundEvaluate);

void BM_PowerPatch(benchmark::State& state) {
    MultipoleDistribution Q(2);
    std::vector<PolyScalarField> comps;
    for (int m = 0; m < 9; ++m) comps.push_back(dense_poly(2, 300 + m));
    Q.addPatch(DensityPatch(reference_tet(), 2, std::move(comps)));
    const PolyScalarField phi = dense_poly(4, 11);
    const PolyVectorField v{{dense_poly(2, 21), dense_poly(2, 22), dense_poly(2, 23)}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(power(Q, phi, v));
    }
}
BENCHMARK(BM_PowerPatch);

void BM_ComposeFlow(benchmark::State& state) {
    const PolyScalarField phi = dense_poly(static_cast<int>(state.range(0)), 31);
    const PolyVectorField v{{dense_poly(2, 41), dense_poly(2, 42), dense_poly(2, 43)}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose_flow(phi, v, 0.125));
    }
}
BENCHMARK(BM_ComposeFlow)->Arg(3)->Arg(5);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
