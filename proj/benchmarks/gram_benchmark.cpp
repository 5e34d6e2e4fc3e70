#include <benchmark/benchmark.h>

#include "treek/kernel_ops.hpp"
#include "treek/synthetic.hpp"

namespace {

treek::Dataset corpus(int graphs, int max_nodes) {
    treek::Dataset ds;
    ds.name = "bench";
    treek::Rng rng(4242);
    const auto alphabet = treek::letter_alphabet(4);
    for (int i = 0; i < graphs; ++i) {
        ds.graphs.push_back(treek::random_molecule_graph(rng, 6, max_nodes, 4, alphabet));
        ds.labels.push_back(i % 2 == 0 ? 1 : -1);
    }
    return ds;
}

void BM_Gram(benchmark::State& state, treek::FeatureSpaceTag space) {
    const auto ds = corpus(60, 24);
    const treek::KernelTag tag{space, static_cast<int>(state.range(0)), 1.0, false, false};
    for (auto _ : state) {
        auto g = treek::gram(ds, tag, 1);
        benchmark::DoNotOptimize(g.data());
    }
}

void BM_GramImplicit(benchmark::State& state) {
    const auto ds = corpus(60, 24);
    const treek::KernelTag tag{treek::FeatureSpaceTag::Tck, static_cast<int>(state.range(0)), 1.0,
                               true, false};
    for (auto _ : state) {
        auto g = treek::gram(ds, tag, 1);
        benchmark::DoNotOptimize(g.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Gram, tck, treek::FeatureSpaceTag::Tck)->Arg(2)->Arg(5)->Arg(8);
BENCHMARK_CAPTURE(BM_Gram, odd, treek::FeatureSpaceTag::Odd)->Arg(2)->Arg(5)->Arg(8);
BENCHMARK_CAPTURE(BM_Gram, tck_odd, treek::FeatureSpaceTag::TckOdd)->Arg(2)->Arg(5)->Arg(8);
BENCHMARK_CAPTURE(BM_Gram, wl, treek::FeatureSpaceTag::Wl)->Arg(2)->Arg(5)->Arg(8);
BENCHMARK(BM_GramImplicit)->Arg(2)->Arg(5);

BENCHMARK_MAIN();
