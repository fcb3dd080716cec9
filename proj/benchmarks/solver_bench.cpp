#include <benchmark/benchmark.h>

#include <random>

#include "confsample/solver.hpp"

using namespace confsample;

namespace {

// Random implication clauses over `k` options; always satisfiable (all-true).
ConstraintModel implicationModel(int k, int clauses, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i)
        names.push_back("O" + std::to_string(i));
    PropFormula f = PropFormula::constant(true);
    for (int i = 0; i < clauses; ++i) {
        const auto &a = names[rng() % names.size()];
        const auto &b = names[rng() % names.size()];
        f = PropFormula::conjoinReduced(
            f, PropFormula::disjunction(PropFormula::negation(PropFormula::var(a)),
                                        PropFormula::var(b)));
    }
    return {VariabilitySpace::of(names), f, "bench"};
}

void BM_SolveImplications(benchmark::State &state) {
    const auto m = implicationModel(static_cast<int>(state.range(0)),
                                    static_cast<int>(state.range(0)) * 3, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(satisfiable(m));
}
BENCHMARK(BM_SolveImplications)->Arg(32)->Arg(128)->Arg(512);

void BM_MaxDisabled(benchmark::State &state) {
    const auto m = implicationModel(static_cast<int>(state.range(0)),
                                    static_cast<int>(state.range(0)) * 2, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(maxPolarityModel(m, Polarity::Disabled));
}
BENCHMARK(BM_MaxDisabled)->Arg(12)->Arg(24);

void BM_Enumerate64(benchmark::State &state) {
    const auto m = implicationModel(40, 80, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(countOrEnumerate(m, 64));
}
BENCHMARK(BM_Enumerate64);

} // namespace
