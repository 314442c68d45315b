#include <mwb/evaluator.hpp>
#include <mwb/generators.hpp>
#include <mwb/parser.hpp>

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace mwb;

namespace {

std::set<Tuple> as_set(const std::vector<Tuple>& v) { return {v.begin(), v.end()}; }

Assignment random_assignment(std::mt19937_64& rng, std::size_t n, const std::vector<std::string>& vars) {
    Assignment a;
    for (const auto& v : vars) a[v] = static_cast<Element>(rng() % n);
    return a;
}

} // namespace

TEST(Evaluate, Examples) {
    EXPECT_TRUE(evaluate(make_linear_order(3), parse_formula("LE(x,y)"), {{"x", 0}, {"y", 2}}));
    EXPECT_FALSE(evaluate(make_linear_order(3), parse_formula("LE(x,y)"), {{"x", 2}, {"y", 0}}));
    EXPECT_FALSE(evaluate(make_equiv(2, 2), parse_formula("forall y. E(x,y)"), {{"x", 0}}));
    EXPECT_TRUE(evaluate(make_equiv(1, 3), parse_formula("forall y. E(x,y)"), {{"x", 0}}));
}

TEST(Evaluate, Errors) {
    FiniteStructure s = make_equiv(2, 2);
    EXPECT_THROW(evaluate(s, parse_formula("E(x,y)"), {{"x", 0}}), EvalError);
    EXPECT_THROW(evaluate(s, parse_formula("F(x,y)"), {{"x", 0}, {"y", 1}}), EvalError);
    EXPECT_THROW(evaluate(s, parse_formula("E(x)"), {{"x", 0}}), EvalError);
    EXPECT_THROW(evaluate(s, parse_formula("E(x,x)"), {{"x", 4}}), EvalError);
}

TEST(SolutionSet, Examples) {
    EXPECT_EQ(solution_set(make_linear_order(4), parse_formula("LE(x,y)"), {"x"}, {{"y", 1}}),
              (std::vector<Tuple>{{0}, {1}}));
    EXPECT_TRUE(solution_set(make_linear_order(4), parse_formula("false"), {"x", "y"}).empty());
    EXPECT_EQ(solution_set(make_linear_order(3), parse_formula("true"), {"x", "y"}).size(), 9u);
}

TEST(SolutionSet, LexicographicOrder) {
    auto sols = solution_set(make_equiv(2, 2), parse_formula("E(x,y)"), {"y", "x"});
    EXPECT_TRUE(std::is_sorted(sols.begin(), sols.end()));
    EXPECT_EQ(sols.size(), 8u);
}

TEST(Evaluator, AgreesWithNaiveOracle) {
    std::mt19937_64 rng(7);
    const std::vector<std::string> vars{"x", "y", "z"};
    for (int round = 0; round < 300; ++round) {
        std::size_t n = 1 + rng() % 4;
        FiniteStructure s = oracle::random_structure(rng, n, {{"R", 2}}, 0.4);
        Formula f = oracle::random_formula(rng, 3, 7);
        oracle::NaiveModel naive(s);
        Evaluator ev(s, f, vars);
        for (int k = 0; k < 10; ++k) {
            Assignment a = random_assignment(rng, n, vars);
            Tuple values{a["x"], a["y"], a["z"]};
            Assignment copy = a;
            ASSERT_EQ(ev(values), naive.holds(f, copy)) << f.to_string();
        }
    }
}

TEST(Evaluator, GuardedQuantifiersAgreeWithOracle) {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 200; ++round) {
        std::size_t n = 2 + rng() % 5;
        FiniteStructure s = oracle::random_structure(rng, n, {{"R", 2}, {"B", 1}}, 0.4);
        Formula body = oracle::random_formula(rng, 2, 5);
        Formula f = rng() % 2 ? exists_in("y", "B", body) : forall_in("y", "B", body);
        std::vector<std::string> vars{"x", "z"};
        std::set<Tuple> want = oracle::NaiveModel(s).solutions(f, vars);
        EXPECT_EQ(as_set(solution_set(s, f, vars)), want) << f.to_string();
    }
}

TEST(Evaluator, NegationAndDualities) {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 200; ++round) {
        std::size_t n = 1 + rng() % 6;
        FiniteStructure s = oracle::random_structure(rng, n, {{"R", 2}}, 0.5);
        Formula f = oracle::random_formula(rng, 2, 5);
        Formula g = oracle::random_formula(rng, 2, 5);
        Assignment a = random_assignment(rng, n, {"x", "y", "z"});
        bool fv = evaluate(s, f, a), gv = evaluate(s, g, a);
        EXPECT_EQ(evaluate(s, neg(f), a), !fv);
        EXPECT_EQ(evaluate(s, neg(conj(f, g)), a), evaluate(s, disj(neg(f), neg(g)), a));
        EXPECT_EQ(evaluate(s, neg(disj(f, g)), a), evaluate(s, conj(neg(f), neg(g)), a));
        EXPECT_EQ(evaluate(s, exists("x", f), a), evaluate(s, neg(forall("x", neg(f))), a));
        EXPECT_EQ(evaluate(s, forall("y", f), a), evaluate(s, neg(exists("y", neg(f))), a));
        EXPECT_EQ(evaluate(s, implies(f, g), a), !fv || gv);
        EXPECT_EQ(evaluate(s, iff(f, g), a), fv == gv);
    }
}

TEST(Evaluator, ConjunctionIsIntersectionAndMonotone) {
    std::mt19937_64 rng(10);
    const std::vector<std::string> vars{"x", "y", "z"};
    for (int round = 0; round < 100; ++round) {
        std::size_t n = 1 + rng() % 5;
        FiniteStructure s = oracle::random_structure(rng, n, {{"R", 2}}, 0.5);
        Formula f = oracle::random_formula(rng, 2, 5);
        Formula g = oracle::random_formula(rng, 2, 5);
        auto sf = as_set(solution_set(s, f, vars));
        auto sg = as_set(solution_set(s, g, vars));
        auto sfg = as_set(solution_set(s, conj(f, g), vars));
        std::set<Tuple> inter;
        std::set_intersection(sf.begin(), sf.end(), sg.begin(), sg.end(), std::inserter(inter, inter.end()));
        EXPECT_EQ(sfg, inter);
        EXPECT_TRUE(std::includes(sf.begin(), sf.end(), sfg.begin(), sfg.end()));
    }
}

TEST(Evaluator, AlphaRenamingInvariance) {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 100; ++round) {
        std::size_t n = 1 + rng() % 5;
        FiniteStructure s = oracle::random_structure(rng, n, {{"R", 2}}, 0.5);
        Formula body = oracle::random_formula(rng, 2, 5);
        Formula f = exists("z", body);
        Formula g = exists("w", rename_free(body, {{"z", "w"}}));
        Assignment a = random_assignment(rng, n, {"x", "y"});
        EXPECT_EQ(evaluate(s, f, a), evaluate(s, g, a)) << f.to_string() << " vs " << g.to_string();
    }
}

TEST(Evaluator, IsomorphismInvariance) {
    std::mt19937_64 rng(12);
    for (int round = 0; round < 100; ++round) {
        std::size_t n = 1 + rng() % 12;
        FiniteStructure s = oracle::random_structure(rng, n, {{"R", 2}}, 0.3);
        Permutation p = oracle::random_permutation(rng, n);
        FiniteStructure t = apply_permutation(s, p);
        Formula f = oracle::random_formula(rng, 3, 6);
        Assignment a = random_assignment(rng, n, {"x", "y", "z"});
        Assignment pa;
        for (const auto& [v, e] : a) pa[v] = p(e);
        EXPECT_EQ(evaluate(s, f, a), evaluate(t, f, pa)) << f.to_string();
    }
}

TEST(Evaluator, CountsInvocations) {
    FiniteStructure s = make_linear_order(3);
    Evaluator ev(s, parse_formula("LE(x,y)"), {"x", "y"});
    EXPECT_EQ(ev.invocations(), 0u);
    EXPECT_TRUE(ev({0, 1}));
    EXPECT_FALSE(ev.evaluate({{"x", 2}, {"y", 1}}));
    EXPECT_EQ(ev.invocations(), 2u);
}
