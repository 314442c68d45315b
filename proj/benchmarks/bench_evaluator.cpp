#include <mwb/evaluator.hpp>
#include <mwb/generators.hpp>
#include <mwb/parser.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_SolutionSetTriangles(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    mwb::FiniteStructure g = mwb::make_random_graph(n, 0.3, 7);
    mwb::Formula f = mwb::parse_formula("E(x,y) & (exists z. (E(y,z) & E(z,x)))");
    for (auto _ : state) benchmark::DoNotOptimize(mwb::solution_set(g, f, {"x", "y"}));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolutionSetTriangles)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_EvaluatorPointQueries(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    mwb::FiniteStructure g = mwb::make_random_graph(n, 0.5, 11);
    mwb::Formula f = mwb::parse_formula("forall z. (E(x,z) -> (exists w. (E(z,w) & !(w = y))))");
    mwb::Evaluator ev(g, f, {"x", "y"});
    mwb::Element x = 0, y = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev({x, y}));
        if (++y == n) {
            y = 0;
            x = (x + 1) % static_cast<mwb::Element>(n);
        }
    }
}
BENCHMARK(BM_EvaluatorPointQueries)->Arg(16)->Arg(64);

} // namespace
BENCHMARK_MAIN();
