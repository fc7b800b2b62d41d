#include <benchmark/benchmark.h>

#include "posred/cli/generator.hpp"
#include "posred/posred.hpp"

using namespace posred;

namespace {

PositiveLtiSystem planted(Index n, Index q, cli::LiftKind lift, std::uint64_t seed) {
    cli::GeneratorSpec spec;
    spec.n = n;
    spec.reachable_dim = q;
    spec.lift = lift;
    spec.inputs = 1;
    spec.seed = seed;
    return cli::generate_system(spec);
}

void BM_FactorizationSearch(benchmark::State& state) {
    const Index n = state.range(0);
    const PositiveLtiSystem s = planted(n, n / 2, cli::LiftKind::Monotone, 1);
    const SubspaceBasis v = reachable_subspace(s, Tolerances{});
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_nonneg_factorization(v, Tolerances{}));
    }
    state.counters["dim"] = static_cast<double>(v.dim());
}
BENCHMARK(BM_FactorizationSearch)->DenseRange(4, 16, 4);

void BM_FactorizationSearchGeneric(benchmark::State& state) {
    const Index n = state.range(0);
    const PositiveLtiSystem s = planted(n, n / 2, cli::LiftKind::Generic, 2);
    const SubspaceBasis v = reachable_subspace(s, Tolerances{});
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_nonneg_factorization(v, Tolerances{}));
    }
    state.counters["subsets"] = static_cast<double>(binomial(static_cast<std::uint64_t>(n),
                                                             static_cast<std::uint64_t>(v.dim())));
}
BENCHMARK(BM_FactorizationSearchGeneric)->DenseRange(4, 16, 4);

void BM_Closure(benchmark::State& state) {
    const Index n = state.range(0);
    const PositiveLtiSystem s = planted(n, n / 2, cli::LiftKind::Generic, 3);
    const Tolerances tol;
    const SubspaceBasis v = reachable_subspace(s, tol);
    const ReferenceVector p = choose_p(v, std::nullopt, tol);
    for (auto _ : state) {
        benchmark::DoNotOptimize(closure(v, p, tol));
    }
}
BENCHMARK(BM_Closure)->RangeMultiplier(2)->Range(4, 64);

void BM_MonotoneGeneral(benchmark::State& state) {
    const Index n = state.range(0);
    const PositiveLtiSystem s = planted(2 * n, n, cli::LiftKind::Generic, 4);
    const Matrix x = s.A();
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_monotone_general(x, Tolerances{}));
    }
}
BENCHMARK(BM_MonotoneGeneral)->RangeMultiplier(2)->Range(2, 16);

void BM_Pipeline(benchmark::State& state) {
    const Index n = state.range(0);
    const PositiveLtiSystem s = planted(n, n / 2, cli::LiftKind::Random, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rpmr_reachable(s));
    }
}
BENCHMARK(BM_Pipeline)->DenseRange(4, 12, 4);

}  // namespace
BENCHMARK_MAIN();
