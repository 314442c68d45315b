#include <mwb/coding.hpp>
#include <mwb/generators.hpp>
#include <mwb/parser.hpp>

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace mwb;

namespace {

// Universe 8, A = {0,1}, B = {2,3}, C = {4..7}, F the stored function graph.
std::pair<FiniteStructure, CodingTriple> explicit_coding(bool drop_last) {
    std::vector<Tuple> f{{0, 2, 4}, {0, 3, 5}, {1, 2, 6}, {1, 3, 7}};
    if (drop_last) f.pop_back();
    RelationMap m;
    m.emplace("F", Relation(8, 3, f));
    FiniteStructure s(8, std::move(m));
    CodingTriple t{NamedSubset("A", {0, 1}), NamedSubset("B", {2, 3}), NamedSubset("C", {4, 5, 6, 7}),
                   PartitionedFormula(parse_formula("F(x,y,z)"), {"x", "y", "z"}, {}), {}};
    return {s, t};
}

// Brute-force edge relation of an encoding over A x A with the naive oracle.
std::set<ElementPair> decode(const GraphEncoding& enc, const CodingTriple& t) {
    oracle::NaiveModel m(enc.expanded);
    std::set<ElementPair> out;
    for (Element a : t.A.members)
        for (Element b : t.A.members) {
            Assignment as{{enc.edge_vars[0], a}, {enc.edge_vars[1], b}};
            if (m.holds(enc.edge_formula, as)) out.emplace(a, b);
        }
    return out;
}

std::set<ElementPair> symmetric(const Graph& g) {
    std::set<ElementPair> out;
    for (const auto& [u, v] : g.edges) {
        out.emplace(u, v);
        out.emplace(v, u);
    }
    return out;
}

} // namespace

TEST(VerifyCoding, ExplicitBijection) {
    auto [s, t] = explicit_coding(false);
    BijectionCheck r = verify_coding(s, t);
    EXPECT_TRUE(r.ok) << r.diagnosis;
    EXPECT_EQ(r.function.size(), 4u);
    EXPECT_EQ(r.function.at({1, 3}), 7u);
}

TEST(VerifyCoding, MissingImage) {
    auto [s, t] = explicit_coding(true);
    BijectionCheck r = verify_coding(s, t);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.diagnosis, "pair (1,3) has no image");
}

TEST(VerifyCoding, CardinalityFirst) {
    auto [s, t] = explicit_coding(false);
    t.C.members.pop_back();
    BijectionCheck r = verify_coding(s, t);
    EXPECT_FALSE(r.ok);
    EXPECT_NE(r.diagnosis.find("domain has"), std::string::npos);
}

TEST(VerifyCoding, OverlapRejected) {
    auto [s, t] = explicit_coding(false);
    t.B.members = {1, 2};
    EXPECT_THROW(verify_coding(s, t), Error);
}

TEST(CheckBijectionGraph, Diagnoses) {
    std::vector<Element> a{0, 1}, b{2}, c{3, 4};
    EXPECT_TRUE(check_bijection_graph(a, b, c, {{0, 2, 3}, {1, 2, 4}}).ok);
    EXPECT_NE(check_bijection_graph(a, b, c, {{0, 2, 3}, {0, 2, 4}, {1, 2, 4}}).diagnosis.find("has images"),
              std::string::npos);
    EXPECT_NE(check_bijection_graph(a, b, c, {{0, 2, 3}, {1, 2, 3}}).diagnosis.find("share image"),
              std::string::npos);
    // Tuples outside the box are ignored.
    EXPECT_TRUE(check_bijection_graph(a, b, c, {{0, 2, 3}, {1, 2, 4}, {5, 5, 5}}).ok);
}

TEST(CodingInstance, IsACoding) {
    for (std::size_t a = 1; a <= 4; ++a)
        for (std::size_t b = 1; b <= 4; ++b) {
            CodingInstance inst = make_coding_instance(a, b);
            EXPECT_TRUE(verify_coding(inst.structure, inst.triple).ok);
            EXPECT_EQ(inst.triple.C.size(), a * b);
        }
}

TEST(EncodeGraph, Path) {
    CodingInstance inst = make_coding_instance(3, 3);
    const auto& A = inst.triple.A.members;
    Graph g{A, {{A[0], A[1]}, {A[1], A[2]}}};
    GraphEncoding enc = encode_graph(inst.structure, inst.triple, g);
    EXPECT_EQ(enc.D.size(), 6u);
    EXPECT_EQ(enc.E.size(), 4u);
    EXPECT_EQ(decode(enc, inst.triple), symmetric(g));
    auto defined = defined_edges(enc, inst.triple);
    EXPECT_EQ(std::set<ElementPair>(defined.begin(), defined.end()), symmetric(g));
}

TEST(EncodeGraph, EmptyAndComplete) {
    CodingInstance inst = make_coding_instance(4, 6);
    const auto& A = inst.triple.A.members;
    GraphEncoding none = encode_graph(inst.structure, inst.triple, Graph{A, {}});
    EXPECT_TRUE(none.E.members.empty());
    EXPECT_TRUE(decode(none, inst.triple).empty());

    Graph k4{A, {}};
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j) k4.edges.emplace_back(A[i], A[j]);
    GraphEncoding all = encode_graph(inst.structure, inst.triple, k4);
    EXPECT_EQ(all.E.members, all.D.members);
    EXPECT_EQ(decode(all, inst.triple).size(), 12u);
}

TEST(EncodeGraph, UniqueWitnessPerPair) {
    CodingInstance inst = make_coding_instance(5, 10);
    GraphEncoding enc = encode_graph(inst.structure, inst.triple, Graph{inst.triple.A.members, {}});
    auto counts = witness_counts(enc, inst.triple);
    EXPECT_EQ(counts.size(), 10u);
    for (const auto& [pair, c] : counts) EXPECT_EQ(c, 1u);
    // Counted directly: b with f(a1,b), f(a2,b) both in D.
    auto fn = verify_coding(inst.structure, inst.triple).function;
    for (const auto& [pair, c] : counts) {
        std::size_t direct = 0;
        for (Element b : inst.triple.B.members)
            direct += enc.D.contains(fn.at({pair.first, b})) && enc.D.contains(fn.at({pair.second, b}));
        EXPECT_EQ(direct, 1u);
    }
}

TEST(EncodeGraph, RandomGraphsOnSixVertices) {
    CodingInstance inst = make_coding_instance(6, 15);
    EXPECT_EQ(inst.triple.C.size(), 90u);
    const auto& A = inst.triple.A.members;
    std::mt19937_64 rng(31);
    for (int round = 0; round < 40; ++round) {
        Graph g{A, {}};
        for (std::size_t i = 0; i < A.size(); ++i)
            for (std::size_t j = i + 1; j < A.size(); ++j)
                if (rng() & 1) g.edges.emplace_back(A[i], A[j]);
        GraphEncoding enc = encode_graph(inst.structure, inst.triple, g);
        EXPECT_EQ(decode(enc, inst.triple), symmetric(g));
    }
}

TEST(EncodeGraph, Errors) {
    CodingInstance inst = make_coding_instance(4, 5);
    const auto& A = inst.triple.A.members;
    EXPECT_THROW(encode_graph(inst.structure, inst.triple, Graph{A, {}}), Error);
    CodingInstance ok = make_coding_instance(3, 3);
    const auto& A3 = ok.triple.A.members;
    EXPECT_THROW(encode_graph(ok.structure, ok.triple, Graph{A3, {{A3[0], A3[0]}}}), Error);
    EXPECT_THROW(encode_graph(ok.structure, ok.triple, Graph{A3, {{A3[0], 50}}}), Error);
}

TEST(DefinableOrder, HalfGraphs) {
    for (std::size_t n = 1; n <= 8; ++n) {
        FiniteStructure h = make_half_graph(n);
        PartitionedFormula psi(parse_formula("H(x,y)"), {"x", "y"}, {});
        DefinableOrder o = definable_order(h, "A", "B", psi);
        EXPECT_TRUE(o.total) << n;
        std::vector<Element> want(n);
        for (std::size_t i = 0; i < n; ++i) want[i] = Element(i);
        EXPECT_EQ(o.chain, want);
        std::vector<ElementPair> pairs;
        for (Element i = 0; i < n; ++i)
            for (Element j = i; j < n; ++j) pairs.emplace_back(i, j);
        EXPECT_EQ(std::set<ElementPair>(o.relation.begin(), o.relation.end()),
                  std::set<ElementPair>(pairs.begin(), pairs.end()));
    }
}

TEST(DefinableOrder, EmptyBAndSingleton) {
    FiniteStructure s = expand(expand(make_linear_order(4), NamedSubset("A", {0, 1, 2})), NamedSubset("B", {}));
    PartitionedFormula psi(parse_formula("LE(x,y)"), {"x", "y"}, {});
    DefinableOrder o = definable_order(s, "A", "B", psi);
    EXPECT_EQ(o.relation.size(), 9u);
    EXPECT_FALSE(o.total);
    FiniteStructure one = expand(expand(make_linear_order(4), NamedSubset("A", {2})), NamedSubset("B", {}));
    EXPECT_TRUE(definable_order(one, "A", "B", psi).total);
}

TEST(DefinableOrder, IsomorphismInvariant) {
    FiniteStructure h = make_half_graph(5);
    PartitionedFormula psi(parse_formula("H(x,y)"), {"x", "y"}, {});
    DefinableOrder o = definable_order(h, "A", "B", psi);
    std::mt19937_64 rng(32);
    Permutation p = oracle::random_permutation(rng, h.universe_size());
    DefinableOrder q = definable_order(apply_permutation(h, p), "A", "B", psi);
    std::set<ElementPair> moved;
    for (const auto& [a, b] : o.relation) moved.emplace(p(a), p(b));
    EXPECT_EQ(std::set<ElementPair>(q.relation.begin(), q.relation.end()), moved);
}

TEST(DefinableEquivalence, ClassesOfE) {
    FiniteStructure s = expand(expand(make_equiv(3, 3), NamedSubset("A", {1, 2, 4, 5, 7, 8})),
                               NamedSubset("B", {0, 3, 6}));
    PartitionedFormula phi(parse_formula("E(x,y)"), {"x", "y"}, {});
    DefinableEquivalence e = definable_equivalence(s, "A", "B", phi);
    EXPECT_TRUE(e.equivalence);
    EXPECT_EQ(e.classes, (std::vector<std::vector<Element>>{{1, 2}, {4, 5}, {7, 8}}));
}

TEST(DefinableEquivalence, Degenerate) {
    FiniteStructure s = expand(expand(make_equiv(2, 2), NamedSubset("A", {0, 1})), NamedSubset("B", {2, 3}));
    PartitionedFormula phi(parse_formula("E(x,y)"), {"x", "y"}, {});
    DefinableEquivalence none = definable_equivalence(s, "A", "B", phi);
    EXPECT_TRUE(none.relation.empty());
    EXPECT_FALSE(none.equivalence);
    FiniteStructure one = expand(expand(make_equiv(2, 2), NamedSubset("A", {0, 1})), NamedSubset("B", {0}));
    DefinableEquivalence all = definable_equivalence(one, "A", "B", phi);
    EXPECT_TRUE(all.equivalence);
    EXPECT_EQ(all.relation.size(), 4u);
}

TEST(EmbedEquiv, TwoByThree) {
    EquivEmbedding e = embed_equiv_in_order(2, 3);
    EXPECT_EQ(e.order.universe_size(), 7u);
    EXPECT_EQ(subset_of(e.order, "A").members, (std::vector<Element>{0, 1, 2, 4, 5, 6}));
    oracle::NaiveModel m(e.order);
    std::set<ElementPair> defined;
    for (Element a : subset_of(e.order, "A").members)
        for (Element b : subset_of(e.order, "A").members) {
            Assignment as{{e.vars[0], a}, {e.vars[1], b}};
            if (m.holds(e.formula, as)) defined.emplace(a, b);
        }
    std::set<ElementPair> want;
    for (Element c : {0u, 4u})
        for (Element i = 0; i < 3; ++i)
            for (Element j = 0; j < 3; ++j) want.emplace(c + i, c + j);
    EXPECT_EQ(defined, want);
    EXPECT_TRUE(verify_equiv_embedding(e));
}

TEST(EmbedEquiv, CarriesEOntoE) {
    for (std::size_t c = 1; c <= 4; ++c)
        for (std::size_t s = 1; s <= 4; ++s) {
            EquivEmbedding e = embed_equiv_in_order(c, s);
            EXPECT_TRUE(verify_equiv_embedding(e)) << c << "x" << s;
            EXPECT_EQ(e.isomorphism.size(), c * s);
        }
}
