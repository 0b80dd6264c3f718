// Serial vs OpenMP batch kernels. Run: build/bench/qgamble_bench

#include <benchmark/benchmark.h>

#include "qgamble/kernels.hpp"
#include "qgamble/random.hpp"

namespace {

using namespace qgamble;

struct Inputs {
    ProbabilityMeasure p;
    DensityMatrix rho;
    std::vector<Frame> frames;
    std::vector<HermitianMatrix> projectors;
    std::vector<HermitianMatrix> gambles;
};

Inputs make_inputs(Index n, int count) {
    Rng rng(7);
    DensityMatrix rho = random_density(n, rng);
    Inputs in{ProbabilityMeasure::born(rho), rho, {}, {}, {}};
    for (int k = 0; k < count; ++k) {
        in.frames.push_back(random_frame(n, rng));
        in.projectors.push_back(random_rank1_projector(n, rng));
        in.gambles.push_back(random_hermitian(n, rng));
    }
    return in;
}

template <bool Parallel>
void BM_AdditivityDefects(benchmark::State& state) {
    const auto in = make_inputs(state.range(0), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        auto r = Parallel ? kernels::additivity_defects(in.p, in.frames)
                          : kernels::serial::additivity_defects(in.p, in.frames);
        benchmark::DoNotOptimize(r.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <bool Parallel>
void BM_BornDisagreements(benchmark::State& state) {
    const auto in = make_inputs(state.range(0), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        auto r = Parallel ? kernels::born_disagreements(in.p, in.rho, in.projectors)
                          : kernels::serial::born_disagreements(in.p, in.rho, in.projectors);
        benchmark::DoNotOptimize(r.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <bool Parallel>
void BM_PayoffTable(benchmark::State& state) {
    const auto in = make_inputs(state.range(0), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        auto r = Parallel ? kernels::payoff_table(in.gambles, in.frames.front())
                          : kernels::serial::payoff_table(in.gambles, in.frames.front());
        benchmark::DoNotOptimize(r.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void sizes(benchmark::internal::Benchmark* b) {
    for (long n : {2, 4, 8}) b->Args({n, 1000});
}

} // namespace

BENCHMARK(BM_AdditivityDefects<false>)->Apply(sizes);
BENCHMARK(BM_AdditivityDefects<true>)->Apply(sizes);
BENCHMARK(BM_BornDisagreements<false>)->Apply(sizes);
BENCHMARK(BM_BornDisagreements<true>)->Apply(sizes);
BENCHMARK(BM_PayoffTable<false>)->Apply(sizes);
BENCHMARK(BM_PayoffTable<true>)->Apply(sizes);

BENCHMARK_MAIN();
