#include <mwb/config_family.hpp>
#include <mwb/detectors.hpp>
#include <mwb/generators.hpp>
#include <mwb/parser.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_OrderWitnessLinearOrder(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    mwb::FiniteStructure s = mwb::make_linear_order(2 * n);
    mwb::PartitionedFormula pf(mwb::parse_formula("LE(x,y)"), {"x"}, {"y"});
    for (auto _ : state) benchmark::DoNotOptimize(mwb::find_order_witness(s, pf, n));
}
BENCHMARK(BM_OrderWitnessLinearOrder)->DenseRange(2, 10, 2);

void BM_OrderAbsentEquivalence(benchmark::State& state) {
    mwb::FiniteStructure s = mwb::make_equiv(5, 5);
    mwb::PartitionedFormula pf(mwb::parse_formula("E(x,y)"), {"x"}, {"y"});
    for (auto _ : state) benchmark::DoNotOptimize(mwb::find_order_witness(s, pf, 3));
}
BENCHMARK(BM_OrderAbsentEquivalence);

void BM_IndependencePowerset(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    mwb::FiniteStructure s = mwb::make_powerset(n);
    mwb::PartitionedFormula pf(mwb::parse_formula("IN(y,x)"), {"x"}, {"y"});
    for (auto _ : state) benchmark::DoNotOptimize(mwb::find_independence_witness(s, pf, n));
}
BENCHMARK(BM_IndependencePowerset)->DenseRange(2, 5);

void BM_FcpExpansion(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    mwb::FiniteStructure s = mwb::make_fcp_expansion(n);
    mwb::PartitionedFormula pf(mwb::parse_formula("E(x,y) & P(x) & !(x = y)"), {"x"}, {"y"});
    for (auto _ : state) benchmark::DoNotOptimize(mwb::find_fcp_witness(s, pf, n));
}
BENCHMARK(BM_FcpExpansion)->DenseRange(2, 5);

void BM_UnstableConfigLinearOrder(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    mwb::FiniteStructure s = mwb::make_linear_order(60);
    mwb::PartitionedFormula pf(mwb::parse_formula("LE(x,y)"), {"x"}, {"y"});
    mwb::ConfigSearchOptions o;
    o.kind = mwb::ConfigKind::Unstable;
    o.levels = {n};
    for (auto _ : state) benchmark::DoNotOptimize(mwb::find_config_family(s, pf, o));
}
BENCHMARK(BM_UnstableConfigLinearOrder)->DenseRange(2, 6, 2);

} // namespace
