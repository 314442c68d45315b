#pragma once

#include <mwb/overlay.hpp>

#include <optional>

namespace mwb {

/// Graph coding over a fresh triple: the graph's vertices (in increasing
/// order) become A, B has one element per vertex pair unless `b_size` asks
/// for more, and the defined edge relation is compared with the graph.
struct T321Result {
    CodingInstance instance;
    Graph graph;
    /// Graph vertex -> element of A.
    std::map<Element, Element> vertex_map;
    GraphEncoding encoding;
    std::vector<ElementPair> defined;
    std::map<ElementPair, std::size_t> witness_counts;
    bool verdict = false;
    std::string diagnosis;
};

T321Result pipeline_t321(const Graph& g, std::optional<std::size_t> b_size = {});

struct T54Options {
    std::size_t level = 3;
    std::size_t classes = 4;
    std::size_t class_size = 5;
    /// Size of the linear order in the first case.
    std::size_t order_size = 60;
    /// Matching pairs in the second case; the matching lives on the
    /// equivalence structure's universe.
    std::size_t pairs = 10;
    std::optional<std::size_t> split;
    std::uint64_t budget = kUnlimitedBudget;
};

struct T54Result {
    std::size_t level = 0;
    bool found = false;
    std::optional<OverlayPlan> plan;
    Verdict families;
    Verdict sigma;
    std::optional<ThetaReport> theta;
    std::optional<RoundTrip> roundtrip;
    bool verdict = false;
    /// First failing step, empty when verified.
    std::string diagnosis;
};

/// Equivalence relation (stable rows of E) overlaid with a linear order
/// (unstable rows of LE).
T54Result pipeline_t54_1(const T54Options& opts = {});

/// Equivalence relation overlaid with a perfect matching Y.
T54Result pipeline_t54_2(const T54Options& opts = {});

} // namespace mwb
