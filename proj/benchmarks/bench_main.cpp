#include "cohomoforge/depth.hpp"
#include "cohomoforge/row_space.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cohomoforge;

namespace {

void bm_build_gr(benchmark::State& state) {
    const FamilyParams fp{7, static_cast<std::size_t>(state.range(0)), false};
    for (auto _ : state)
        benchmark::DoNotOptimize(build_gr(fp));
}
BENCHMARK(bm_build_gr)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_collect(benchmark::State& state) {
    GroupOptions none;
    none.cache_ceiling = 1;
    GroupPtr g = build_gr({7, 5, false}, none);
    std::mt19937_64 rng(1);
    Elem acc = 0;
    for (auto _ : state) {
        acc = g->multiply(acc, static_cast<Elem>(rng() % g->order()));
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(bm_collect);

void bm_row_space(benchmark::State& state) {
    const std::size_t cols = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    std::vector<FpVector> rows(2 * cols, FpVector(cols));
    for (auto& r : rows)
        for (auto& v : r)
            v = static_cast<residue_t>(rng() % 5);
    for (auto _ : state) {
        StreamingRowSpace rs(cols, 5);
        for (const auto& r : rows)
            rs.insert(r);
        benchmark::DoNotOptimize(rs.rank());
    }
}
BENCHMARK(bm_row_space)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_cohomology_dim(benchmark::State& state) {
    GroupPtr g = make_group(PcPresentation(5, 2));
    for (auto _ : state)
        benchmark::DoNotOptimize(cohomology_dim(g, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(bm_cohomology_dim)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void bm_construct_eta(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(construct_eta({5, 2, false}));
}
BENCHMARK(bm_construct_eta)->Unit(benchmark::kMillisecond);

void bm_theta_solve(benchmark::State& state) {
    EtaCertificate eta = construct_eta({5, 2, false});
    Cochain theta = cup(coordinate_cochain(eta.base, 0), eta.cocycle);
    for (auto _ : state)
        benchmark::DoNotOptimize(is_coboundary(theta));
}
BENCHMARK(bm_theta_solve)->Unit(benchmark::kMillisecond);

void bm_verify_depth(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_depth_one({5, 2, false}));
}
BENCHMARK(bm_verify_depth)->Unit(benchmark::kSecond)->Iterations(1);

} // namespace

BENCHMARK_MAIN();
