// Serial reference vs OpenMP kernels on the dimension-9 extension of
// psl(3)_alpha over GF(3).

#include <benchmark/benchmark.h>

#include "homext/fixtures.hpp"

using namespace homext;

namespace {

struct Psl3Ext {
    DoubleExtension L;
    PStructure P;
};

const Psl3Ext& fixture() {
    static const Psl3Ext f = [] {
        TwistedPsl3 t = build_twisted_psl3();
        auto [d, pe] = psl3_extension_data(t, 2);
        DoubleExtension L = double_extend(t.V, t.B, d);
        PStructure P = extend_pstructure(L, t.P, pe);
        return Psl3Ext{std::move(L), std::move(P)};
    }();
    return f;
}

void BM_HomLie(benchmark::State& state) {
    const Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
    const Psl3Ext& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(verify_hom_lie(f.L.algebra, exec));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_Quadratic(benchmark::State& state) {
    const Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
    const Psl3Ext& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(verify_quadratic(f.L.algebra, f.L.form, exec));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_PStructure(benchmark::State& state) {
    const Exec exec = state.range(0) ? Exec::Parallel : Exec::Serial;
    const Psl3Ext& f = fixture();
    const VerifyMode mode = VerifyMode::sampled(kDefaultSeed, static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_pstructure(f.L.algebra, f.P, mode, exec));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

} // namespace

BENCHMARK(BM_HomLie)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Quadratic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PStructure)->Args({0, 200})->Args({1, 200})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
