#include <mwb/detectors.hpp>
#include <mwb/generators.hpp>
#include <mwb/parser.hpp>

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace mwb;

namespace {

PartitionedFormula pf(const char* text, std::vector<std::string> obj = {"x"}, std::vector<std::string> par = {"y"}) {
    return PartitionedFormula(parse_formula(text), std::move(obj), std::move(par));
}

// Re-checks the order pattern with the naive oracle only.
bool order_pattern_holds(const FiniteStructure& s, const PartitionedFormula& p, const WitnessReport& r) {
    oracle::NaiveModel m(s);
    for (std::size_t k = 0; k < r.level; ++k) {
        bool found = false;
        for (Element x = 0; x < s.universe_size() && !found; ++x) {
            bool ok = true;
            for (std::size_t i = 0; i < r.level && ok; ++i) {
                Assignment a{{p.object_vars[0], x}, {p.param_vars[0], r.parameter_tuples[i][0]}};
                ok = m.holds(p.formula, a) == (i < k);
            }
            found = ok;
        }
        if (!found) return false;
    }
    return true;
}

const FiniteStructure kEdgeless = FiniteStructure(4, [] {
    RelationMap m;
    m.emplace("E", Relation(4, 2, {}));
    return m;
}());

} // namespace

TEST(OrderWitness, LinearOrderEveryLevel) {
    for (std::size_t n = 1; n <= 10; ++n) {
        FiniteStructure s = make_linear_order(2 * n);
        auto p = pf("LE(y,x) & !(x = y)");
        SearchOutcome out = find_order_witness(s, p, n);
        ASSERT_TRUE(out.witness) << n;
        EXPECT_TRUE(certify(s, p, *out.witness)) << n;
        EXPECT_TRUE(order_pattern_holds(s, p, *out.witness)) << n;
        EXPECT_EQ(out.witness->certificates.size(), n);
    }
}

TEST(OrderWitness, EvenParametersCertify) {
    // a_i = 2i, x_k = 2k - 1 and x_0 = 0.
    const std::size_t n = 5;
    FiniteStructure s = make_linear_order(2 * n);
    auto p = pf("LE(y,x) & !(x = y)");
    WitnessReport r{WitnessKind::Order, n, {}, {}};
    for (std::size_t i = 0; i < n; ++i) r.parameter_tuples.push_back({Element(2 * i)});
    for (std::size_t k = 0; k < n; ++k) r.certificates.push_back({k, {k == 0 ? 0 : Element(2 * k - 1)}});
    EXPECT_TRUE(certify(s, p, r)) << certify(s, p, r).reason;
}

TEST(OrderWitness, EquivalenceHasNoneAtLevelThree) {
    SearchOutcome out = find_order_witness(make_equiv(5, 5), pf("E(x,y)"), 3);
    EXPECT_FALSE(out.witness);
    EXPECT_TRUE(out.exhaustive);
}

TEST(OrderWitness, EdgelessNone) {
    SearchOutcome out = find_order_witness(kEdgeless, pf("E(x,y)"), 2);
    EXPECT_FALSE(out.witness);
    EXPECT_TRUE(out.exhaustive);
}

TEST(OrderWitness, LevelOne) {
    FiniteStructure s = make_linear_order(2);
    auto p = pf("LE(y,x)");
    SearchOutcome out = find_order_witness(s, p, 1);
    ASSERT_TRUE(out.witness);
    EXPECT_TRUE(certify(s, p, *out.witness));
    // Some a_0 must have a non-solution: a_0 = 1, x = 0.
    EXPECT_EQ(out.witness->parameter_tuples, (std::vector<Tuple>{{1}}));
}

TEST(OrderWitness, BudgetIsReported) {
    SearchOutcome out = find_order_witness(make_equiv(5, 5), pf("E(x,y)"), 3, 50);
    EXPECT_FALSE(out.witness);
    EXPECT_FALSE(out.exhaustive);
}

TEST(OrderWitness, Deterministic) {
    FiniteStructure s = make_random_graph(12, 0.5, 3);
    auto p = pf("E(x,y)");
    SearchOutcome a = find_order_witness(s, p, 3);
    SearchOutcome b = find_order_witness(s, p, 3);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.work, b.work);
}

TEST(OrderWitness, TupleParameters) {
    // Two object variables and two parameters over a linear order.
    FiniteStructure s = make_linear_order(6);
    auto p = pf("LE(y1,x1) & LE(y2,x2) & !(x1 = y1)", {"x1", "x2"}, {"y1", "y2"});
    SearchOutcome out = find_order_witness(s, p, 3);
    ASSERT_TRUE(out.witness);
    EXPECT_TRUE(certify(s, p, *out.witness));
    for (const auto& t : out.witness->parameter_tuples) EXPECT_EQ(t.size(), 2u);
}

TEST(OrderWitness, TruncationCertifies) {
    FiniteStructure s = make_linear_order(16);
    auto p = pf("LE(y,x) & !(x = y)");
    SearchOutcome out = find_order_witness(s, p, 8);
    ASSERT_TRUE(out.witness);
    for (std::size_t m = 0; m <= 8; ++m) {
        WitnessReport t = truncate(*out.witness, m);
        EXPECT_EQ(t.level, m);
        EXPECT_TRUE(certify(s, p, t)) << m << ": " << certify(s, p, t).reason;
    }
}

TEST(Certify, RejectsTamperedReports) {
    FiniteStructure s = make_linear_order(8);
    auto p = pf("LE(y,x) & !(x = y)");
    WitnessReport good = *find_order_witness(s, p, 4).witness;
    ASSERT_TRUE(certify(s, p, good));

    WitnessReport bad = good;
    bad.certificates[1].solution[0] = bad.certificates[2].solution[0];
    EXPECT_FALSE(certify(s, p, bad));

    bad = good;
    bad.parameter_tuples[1] = bad.parameter_tuples[0];
    EXPECT_FALSE(certify(s, p, bad));

    bad = good;
    bad.certificates.pop_back();
    EXPECT_FALSE(certify(s, p, bad));

    bad = good;
    bad.parameter_tuples[0] = {99};
    EXPECT_FALSE(certify(s, p, bad));
}

TEST(IndependenceWitness, PowersetEveryLevel) {
    for (std::size_t n = 1; n <= 4; ++n) {
        FiniteStructure s = make_powerset(n);
        auto p = pf("IN(y,x)");
        SearchOutcome out = find_independence_witness(s, p, n);
        ASSERT_TRUE(out.witness) << n;
        EXPECT_TRUE(certify(s, p, *out.witness));
        EXPECT_EQ(out.witness->certificates.size(), std::size_t{1} << n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(out.witness->parameter_tuples[i], (Tuple{Element(i)}));
    }
}

TEST(IndependenceWitness, IndependentCheckOfPowersetCertificates) {
    const std::size_t n = 3;
    FiniteStructure s = make_powerset(n);
    auto p = pf("IN(y,x)");
    WitnessReport r = *find_independence_witness(s, p, n).witness;
    oracle::NaiveModel m(s);
    for (const auto& c : r.certificates)
        for (std::size_t i = 0; i < n; ++i) {
            Assignment a{{"x", c.solution[0]}, {"y", r.parameter_tuples[i][0]}};
            EXPECT_EQ(m.holds(p.formula, a), bool(c.label >> i & 1));
        }
}

TEST(IndependenceWitness, EquivalenceNoneAtTwo) {
    SearchOutcome out = find_independence_witness(make_equiv(2, 2), pf("E(x,y)"), 2);
    EXPECT_FALSE(out.witness);
    EXPECT_TRUE(out.exhaustive);
}

TEST(IndependenceWitness, LinearOrderNoneAtTwo) {
    SearchOutcome out = find_independence_witness(make_linear_order(20), pf("LE(x,y)"), 2);
    EXPECT_FALSE(out.witness);
    EXPECT_TRUE(out.exhaustive);
}

TEST(IndependenceWitness, LevelZeroIsVacuous) {
    SearchOutcome out = find_independence_witness(make_equiv(2, 2), pf("E(x,y)"), 0);
    ASSERT_TRUE(out.witness);
    EXPECT_TRUE(out.witness->parameter_tuples.empty());
    EXPECT_EQ(out.witness->certificates.size(), 1u);
}

TEST(IndependenceWitness, TruncationCertifies) {
    FiniteStructure s = make_powerset(4);
    auto p = pf("IN(y,x)");
    WitnessReport r = *find_independence_witness(s, p, 4).witness;
    for (std::size_t m = 0; m <= 4; ++m) EXPECT_TRUE(certify(s, p, truncate(r, m))) << m;
}

TEST(FcpWitness, ExpansionLevels) {
    FiniteStructure s = make_fcp_expansion(5);
    auto p = pf("E(x,y) & P(x) & !(x = y)");
    for (std::size_t n = 2; n <= 5; ++n) {
        SearchOutcome out = find_fcp_witness(s, p, n);
        ASSERT_TRUE(out.witness) << n;
        EXPECT_TRUE(certify(s, p, *out.witness)) << n;
        // Independently: the full conjunction has no solution.
        oracle::NaiveModel m(s);
        for (Element x = 0; x < s.universe_size(); ++x) {
            bool all = true;
            for (const auto& t : out.witness->parameter_tuples) {
                Assignment a{{"x", x}, {"y", t[0]}};
                all = all && m.holds(p.formula, a);
            }
            EXPECT_FALSE(all);
        }
    }
}

TEST(FcpWitness, MarkedElementsOfClassWork) {
    // The n marked elements of class n-1, n = 3.
    FiniteStructure s = make_fcp_expansion(5);
    auto p = pf("E(x,y) & P(x) & !(x = y)");
    WitnessReport r{WitnessKind::Fcp, 3, {{12}, {13}, {14}}, {}};
    // class 2 starts at 2 * 6 = 12 and holds 3 marked elements
    for (std::size_t l = 0; l < 3; ++l) r.certificates.push_back({l, {Element(12 + l)}});
    EXPECT_TRUE(certify(s, p, r)) << certify(s, p, r).reason;
}

TEST(FcpWitness, LinearOrderNone) {
    for (std::size_t n : {2, 3}) {
        SearchOutcome out = find_fcp_witness(make_linear_order(10), pf("LE(x,y)"), n);
        EXPECT_FALSE(out.witness);
        EXPECT_TRUE(out.exhaustive);
    }
}

TEST(FcpWitness, LevelOneOnEquivalence) {
    SearchOutcome out = find_fcp_witness(make_equiv(2, 2), pf("E(x,y)"), 1);
    EXPECT_FALSE(out.witness);
    EXPECT_TRUE(out.exhaustive);
}

TEST(FcpWitness, TruncateRejected) {
    FiniteStructure s = make_fcp_expansion(3);
    auto p = pf("E(x,y) & P(x) & !(x = y)");
    WitnessReport r = *find_fcp_witness(s, p, 2).witness;
    EXPECT_THROW(truncate(r, 1), Error);
}

TEST(WitnessKind, Names) {
    EXPECT_EQ(to_string(WitnessKind::Order), "ORDER");
    EXPECT_EQ(witness_kind_from_string("ip"), WitnessKind::Independence);
    EXPECT_EQ(witness_kind_from_string("FCP"), WitnessKind::Fcp);
    EXPECT_THROW(witness_kind_from_string("nope"), Error);
}
