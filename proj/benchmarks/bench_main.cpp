#include <benchmark/benchmark.h>

#include <map>

#include "pharmonic/harmonic.hpp"
#include "pharmonic/inequalities.hpp"
#include "pharmonic/markov.hpp"
#include "pharmonic/solver.hpp"

using namespace pharmonic;

static void BM_BuildBallFree2(benchmark::State& state) {
    Group group(GroupSpec::parse("free:2"));
    const int radius = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_ball(group, radius));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildBallFree2)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

static void BM_BuildBallZ2(benchmark::State& state) {
    Group group(GroupSpec::parse("z^2"));
    const int radius = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_ball(group, radius));
}
BENCHMARK(BM_BuildBallZ2)->Arg(20)->Arg(50)->Arg(100);

static void BM_MarkovApply(benchmark::State& state) {
    Group group(GroupSpec::parse("free:2"));
    auto ball = build_ball(group, static_cast<int>(state.range(0)));
    MarkovOperator op(ball);
    GraphFunction f = make_delta(ball, 0);
    for (auto _ : state) {
        f = op.apply(f);
        benchmark::DoNotOptimize(f.values.data());
    }
}
BENCHMARK(BM_MarkovApply)->Arg(6)->Arg(8)->Arg(10);

static void BM_DpSeminorm(benchmark::State& state) {
    Group group(GroupSpec::parse("z^1"));
    auto ball = build_ball(group, static_cast<int>(state.range(0)), 3'000'000);
    Rng rng(1);
    const GraphFunction f = make_random(ball, rng);
    for (auto _ : state) benchmark::DoNotOptimize(dp_seminorm(f, 2.0));
}
BENCHMARK(BM_DpSeminorm)->Arg(10'000)->Arg(100'000);

static void BM_DirichletSolve(benchmark::State& state) {
    Group group(GroupSpec::parse("z^2"));
    auto ball = build_ball(group, static_cast<int>(state.range(0)));
    Rng rng(7);
    std::map<std::int32_t, double> bvals;
    for (std::int32_t v : ball->boundary) bvals[v] = rng.uniform(-1.0, 1.0);
    const double p = static_cast<double>(state.range(1)) / 10.0;
    for (auto _ : state) {
        auto [h, report] = solve_dirichlet(ball, bvals, p);
        benchmark::DoNotOptimize(report.iterations);
    }
}
BENCHMARK(BM_DirichletSolve)->Args({6, 15})->Args({6, 20})->Args({6, 30})->Args({10, 20});

static void BM_RoydenDecompose(benchmark::State& state) {
    Group group(GroupSpec::parse("z^1"));
    auto ball = build_ball(group, 20);
    GraphFunction f;
    f.ball = ball;
    f.values.resize(ball->size());
    for (std::size_t v = 0; v < ball->size(); ++v) {
        const double n = static_cast<double>(group.z_coordinate(ball->vertices[v]));
        f.values[v] = std::clamp(n, -10.0, 10.0);
    }
    const double p = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) {
        Decomposition d = royden_decompose(f, p);
        benchmark::DoNotOptimize(d.report.iterations);
    }
}
BENCHMARK(BM_RoydenDecompose)->Arg(15)->Arg(20)->Arg(30);

static void BM_HarmonicConstruction(benchmark::State& state) {
    Group group(GroupSpec::parse("free:2"));
    const int terms = static_cast<int>(state.range(0));
    for (auto _ : state) {
        HarmonicConstruction hc = construct_harmonic(group, 2.0, terms + 5, 0, terms, 400);
        benchmark::DoNotOptimize(hc.report.residual_norm);
    }
}
BENCHMARK(BM_HarmonicConstruction)->Arg(10)->Arg(40)->Arg(100);

static void BM_NormEstimateRadial(benchmark::State& state) {
    const int iters = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(free_growth_norm_estimate(2, 2.0, iters));
}
BENCHMARK(BM_NormEstimateRadial)->Arg(200)->Arg(1000);

static void BM_FolnerProfile(benchmark::State& state) {
    Group group(GroupSpec::parse("z^2"));
    const int kmax = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(folner_profile(group, kmax, 2.0));
}
BENCHMARK(BM_FolnerProfile)->Arg(10)->Arg(30);

BENCHMARK_MAIN();
