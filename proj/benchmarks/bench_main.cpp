#include <benchmark/benchmark.h>

#include <vector>

#include "greedysum/errors.hpp"
#include "greedysum/props.hpp"
#include "greedysum/sampling.hpp"
#include "greedysum/spaces.hpp"
#include "greedysum/tga.hpp"

using namespace greedysum;

namespace {

SpaceSpec space_for(int which) {
    switch (which) {
        case 0: return SpaceSpec::xpg(xpg_preset());
        case 1: return SpaceSpec::xw();
        case 2: return SpaceSpec::xiso(Rational(3));
        default: return SpaceSpec::xs();
    }
}

std::vector<SparseVector> corpus(const SpaceSpec& spec, std::size_t n) {
    const VectorSampler sampler = default_sampler(spec);
    std::vector<SparseVector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto rng = instance_rng(7, i);
        out.push_back(sample_vector(rng, sampler));
    }
    return out;
}

void BM_Norm(benchmark::State& state) {
    const SpaceSpec spec = space_for(static_cast<int>(state.range(0)));
    const auto xs = corpus(spec, 256);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(norm(xs[i++ % xs.size()], spec));
    }
    state.SetLabel(std::string(spec.name()));
}
BENCHMARK(BM_Norm)->DenseRange(0, 3);

void BM_NormOracle(benchmark::State& state) {
    const SpaceSpec spec = space_for(static_cast<int>(state.range(0)));
    // Only vectors inside the oracle budget.
    std::vector<SparseVector> xs;
    for (auto& x : corpus(spec, 256)) {
        try {
            (void)norm_oracle(x, spec);
            xs.push_back(std::move(x));
        } catch (const BudgetExceeded&) {
        }
    }
    if (xs.empty()) {
        state.SkipWithError("no vector within the oracle budget");
        return;
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(norm_oracle(xs[i++ % xs.size()], spec));
    }
    state.SetLabel(std::string(spec.name()));
}
BENCHMARK(BM_NormOracle)->DenseRange(0, 3);

void BM_XwIndicator(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(xw_indicator_norm(n, n));
}
BENCHMARK(BM_XwIndicator)->RangeMultiplier(10)->Range(10, 100000);

void BM_GreedySets(benchmark::State& state) {
    const SpaceSpec spec = SpaceSpec::xs();
    const auto xs = corpus(spec, 256);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& x = xs[i++ % xs.size()];
        if (x.support().size() < 2) continue;
        benchmark::DoNotOptimize(greedy_sets(x, x.support().size() / 2));
    }
}
BENCHMARK(BM_GreedySets);

void BM_ResidualRatio(benchmark::State& state) {
    const SpaceSpec spec = SpaceSpec::xiso(Rational(3));
    const auto family = static_cast<Family>(state.range(0));
    const auto xs = corpus(spec, 256);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(residual_ratio(spec, xs[i++ % xs.size()], 1, Rational(3), family));
    }
    state.SetLabel(std::string(to_string(family)));
}
BENCHMARK(BM_ResidualRatio)->DenseRange(0, 4);

void BM_SetPairSweep(benchmark::State& state) {
    const SpaceSpec spec = SpaceSpec::xpg(xpg_preset());
    const auto radius = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            set_pair_sweep(spec, Rational(2), PairFlavor::max_conservative, radius));
    }
}
BENCHMARK(BM_SetPairSweep)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
