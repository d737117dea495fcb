#include <cmath>

#include <benchmark/benchmark.h>

#include "shiftreal/hankel.hpp"
#include "shiftreal/realization.hpp"
#include "shiftreal/stability.hpp"

using namespace shiftreal;

namespace {

GridConfig grid_of(benchmark::State& state)
{
    GridConfig g;
    g.n = int(state.range(0));
    return g;
}

TimeSignal decay(const GridConfig& g)
{
    return TimeSignal::sample(g, Support::causal, [](double t) { return cplx(std::exp(-t)); });
}

void BM_ToFrequency(benchmark::State& state)
{
    GridConfig g = grid_of(state);
    TimeSignal x = decay(g);
    for (auto _ : state) benchmark::DoNotOptimize(to_frequency(x));
}
BENCHMARK(BM_ToFrequency)->RangeMultiplier(4)->Range(4096, 65536);

void BM_ControlMap(benchmark::State& state)
{
    GridConfig g = grid_of(state);
    auto ctx = RealizationContext::make(g, make_blaschke({cplx(1.0)}));
    TimeSignal u = decay(g);
    for (auto _ : state) benchmark::DoNotOptimize(control_map(ctx, u));
}
BENCHMARK(BM_ControlMap)->RangeMultiplier(4)->Range(4096, 65536);

void BM_HankelSvd(benchmark::State& state)
{
    auto ctx = RealizationContext::make(GridConfig{}, make_rational({1.0}, {1.0, 1.0}));
    int dim = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hankel_svd(ctx, dim));
}
BENCHMARK(BM_HankelSvd)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state)
{
    GridConfig g = grid_of(state);
    auto ctx = RealizationContext::make(g, make_rational({3.0, 1.0}, {2.0, 3.0, 1.0}));
    TimeSignal u = TimeSignal::sample(g, Support::causal, [](double t) { return cplx(t < 1.0 ? 1.0 : 0.0); });
    for (auto _ : state) benchmark::DoNotOptimize(simulate(ctx, StateVector::zero(g), u, 1.0));
}
BENCHMARK(BM_Simulate)->RangeMultiplier(4)->Range(4096, 65536)->Unit(benchmark::kMillisecond);

void BM_StabilityVerdict(benchmark::State& state)
{
    TransferSymbol g = make_product({make_delay(1.0), make_blaschke({cplx(2.0)})});
    for (auto _ : state) benchmark::DoNotOptimize(stability_verdict(g, 0.5, 1.0));
}
BENCHMARK(BM_StabilityVerdict)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
