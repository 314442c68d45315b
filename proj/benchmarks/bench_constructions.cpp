#include <mwb/generators.hpp>
#include <mwb/mutual_algebraicity.hpp>
#include <mwb/pipelines.hpp>

#include <benchmark/benchmark.h>

#include <random>

namespace {

void BM_GraphCoding(benchmark::State& state) {
    const auto a = static_cast<mwb::Element>(state.range(0));
    std::mt19937_64 rng(3);
    mwb::Graph g;
    for (mwb::Element v = 0; v < a; ++v) g.vertices.push_back(v);
    for (mwb::Element u = 0; u < a; ++u)
        for (mwb::Element v = u + 1; v < a; ++v)
            if (rng() & 1) g.edges.emplace_back(u, v);
    for (auto _ : state) benchmark::DoNotOptimize(mwb::pipeline_t321(g));
}
BENCHMARK(BM_GraphCoding)->DenseRange(3, 7, 2);

void BM_OverlayOrder(benchmark::State& state) {
    mwb::T54Options o;
    o.level = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mwb::pipeline_t54_1(o));
}
BENCHMARK(BM_OverlayOrder)->DenseRange(1, 4);

void BM_OverlayMatching(benchmark::State& state) {
    mwb::T54Options o;
    o.level = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mwb::pipeline_t54_2(o));
}
BENCHMARK(BM_OverlayMatching)->DenseRange(1, 4);

void BM_DisjointFamily(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    mwb::FiniteStructure m = mwb::make_matching(n / 2, n);
    const mwb::Relation& y = m.relation(mwb::kMatchingRelation);
    for (auto _ : state) benchmark::DoNotOptimize(mwb::extract_disjoint_family(y));
}
BENCHMARK(BM_DisjointFamily)->Range(16, 1024);

} // namespace
