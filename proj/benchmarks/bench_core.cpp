#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bilem/blowdown.hpp"
#include "bilem/energy.hpp"
#include "bilem/exponents.hpp"
#include "bilem/navier.hpp"
#include "bilem/radial_ode.hpp"

using namespace bilem;

namespace {

std::vector<double> log_grid(double a, double b, int m) {
    std::vector<double> g(m);
    for (int i = 0; i < m; ++i) g[i] = a * std::pow(b / a, static_cast<double>(i) / (m - 1));
    return g;
}

const RadialField& shooting_field() {
    static const ShootingResult sr = [] {
        ShootingConfig cfg;
        cfg.integration.relTol = 1e-12;
        cfg.integration.absTol = 1e-14;
        return shoot_entire({13, 3.0}, 1.0, cfg);
    }();
    return sr.field;
}

}  // namespace

static void BM_DeriveConstants(benchmark::State& state) {
    for (auto _ : state) {
        DerivedConstants c = derive_constants({13, 3.0});
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_DeriveConstants);

static void BM_MinStableDimension(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(min_stable_dimension(3.0));
}
BENCHMARK(BM_MinStableDimension);

static void BM_Integrate(benchmark::State& state) {
    IntegrationConfig cfg;
    cfg.rMax = static_cast<double>(state.range(0));
    for (auto _ : state) {
        IntegrationResult run = integrate({13, 3.0}, 1.0, -0.7, cfg);
        benchmark::DoNotOptimize(run.field.u.back());
    }
}
BENCHMARK(BM_Integrate)->Arg(10)->Arg(100);

static void BM_ShootEntire(benchmark::State& state) {
    for (auto _ : state) {
        ShootingResult sr = shoot_entire({13, 3.0}, 1.0, {});
        benchmark::DoNotOptimize(sr.bStar);
    }
}
BENCHMARK(BM_ShootEntire)->Unit(benchmark::kMillisecond);

static void BM_EnergyRadial(benchmark::State& state) {
    const RadialField& f = shooting_field();
    double r = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy_radial(f, r));
        r = (r > 40.0) ? 0.5 : r * 1.01;
    }
}
BENCHMARK(BM_EnergyRadial);

static void BM_EnergyProfile(benchmark::State& state) {
    const RadialField& f = shooting_field();
    const std::vector<double> radii = log_grid(0.1, 20.0, state.range(0));
    for (auto _ : state) {
        EnergyProfile prof = energy_profile(f, radii);
        benchmark::DoNotOptimize(prof.minDefect);
    }
}
BENCHMARK(BM_EnergyProfile)->Arg(100)->Arg(400);

static void BM_PohozaevSplit(benchmark::State& state) {
    const RadialField& f = shooting_field();
    for (auto _ : state) {
        PohozaevSplit s = pohozaev_split(f, 20.0);
        benchmark::DoNotOptimize(s.lhs);
    }
}
BENCHMARK(BM_PohozaevSplit);

static void BM_NavierSolve(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state) {
        BranchPoint pt = solve_at({6, 3.0}, 20.0, {}, NavierConfig{N});
        benchmark::DoNotOptimize(pt.supNorm);
    }
}
BENCHMARK(BM_NavierSolve)->Arg(80)->Arg(320)->Unit(benchmark::kMillisecond);

static void BM_TraceBranch(benchmark::State& state) {
    BranchConfig bc;
    bc.solver.gridSize = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Branch br = trace_branch({6, 3.0}, bc);
        benchmark::DoNotOptimize(br.lambdaStar);
    }
}
BENCHMARK(BM_TraceBranch)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
