#include "orecalc/contraction.hpp"
#include "orecalc/dfinite.hpp"
#include "orecalc/groebner.hpp"
#include "orecalc/parse.hpp"

#include "fixtures.hpp"
#include "helpers.hpp"

#include <benchmark/benchmark.h>

using namespace testing;

namespace {

void BM_multiply(benchmark::State &state) {
    std::mt19937_64 rng(7);
    auto s = fixtures::shift_zz();
    unsigned d = static_cast<unsigned>(state.range(0));
    auto P = random_operator(rng, s, d, d, 4 * static_cast<int>(d), 50);
    auto Q = random_operator(rng, s, d, d, 4 * static_cast<int>(d), 50);
    for (auto _ : state) benchmark::DoNotOptimize(P * Q);
}
BENCHMARK(BM_multiply)->Arg(4)->Arg(8)->Arg(16);

void BM_multiply_parallel(benchmark::State &state) {
    std::mt19937_64 rng(7);
    auto s = fixtures::shift_zz();
    unsigned d = static_cast<unsigned>(state.range(0));
    auto P = random_operator(rng, s, d, d, 4 * static_cast<int>(d), 50);
    auto Q = random_operator(rng, s, d, d, 4 * static_cast<int>(d), 50);
    for (auto _ : state) benchmark::DoNotOptimize(multiply_parallel(P, Q));
}
BENCHMARK(BM_multiply_parallel)->Arg(4)->Arg(8)->Arg(16);

void BM_buchberger_shift(benchmark::State &state) {
    std::mt19937_64 rng(11);
    auto s = fixtures::shift_zz();
    std::vector<OreOperator> P{random_operator(rng, s, 2, 2, 4, 6), random_operator(rng, s, 2, 2, 4, 6)};
    auto ord = TermOrder::ore_default(1);
    for (auto _ : state) benchmark::DoNotOptimize(buchberger(P, ord));
}
BENCHMARK(BM_buchberger_shift);

void BM_contraction(benchmark::State &state) {
    auto L = fixtures::parse(fixtures::EX1_L, fixtures::shift_zz());
    std::size_t k = order_bound_shift(L);
    for (auto _ : state) benchmark::DoNotOptimize(contraction_basis(L, k));
}
BENCHMARK(BM_contraction)->Unit(benchmark::kMillisecond);

void BM_completely_desingularized(benchmark::State &state) {
    auto L = fixtures::parse(fixtures::AH_L, fixtures::shift_zz());
    for (auto _ : state) benchmark::DoNotOptimize(completely_desingularized(L, 3));
}
BENCHMARK(BM_completely_desingularized)->Unit(benchmark::kMillisecond);

WeylGB det2() {
    auto sig = weyl_signature({"x1", "x2"});
    return weyl_gb({parse_operator("(x1 - x2)*Dx1^2 - x1*x2*Dx2 + x1*x2*Dx1 + (x1 - x2)", sig),
                    parse_operator("(x1 - x2)*Dx1*Dx2 + (-1 - x1*x2)*Dx2 + (1 + x1*x2)*Dx1 + (x1 - x2)", sig),
                    parse_operator("(x1 - x2)*Dx2^2 - x1*x2*Dx2 + x1*x2*Dx1 + (x1 - x2)", sig)});
}

void BM_detect_apparent(benchmark::State &state) {
    auto G = det2();
    bool parallel = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(detect_apparent(G, parallel));
}
BENCHMARK(BM_detect_apparent)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_series(benchmark::State &state) {
    auto sig = weyl_signature({"x1", "x2"});
    auto G = weyl_gb({parse_operator("Dx2 - Dx1", sig), parse_operator("Dx1^2 + 1", sig)});
    unsigned cap = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(series_solutions(G, cap));
}
BENCHMARK(BM_series)->Arg(8)->Arg(16);

} // namespace

BENCHMARK_MAIN();
