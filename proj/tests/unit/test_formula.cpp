#include <mwb/parser.hpp>

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace mwb;

TEST(Parser, ExistsWithFreeVariable) {
    Formula f = parse_formula("exists y. (A(y) & E(x,y))");
    EXPECT_EQ(f.kind(), FormulaKind::Exists);
    EXPECT_EQ(f.name(), "y");
    EXPECT_EQ(f.free_variables(), (std::set<std::string>{"x"}));
    EXPECT_EQ(f.relation_symbols(), (std::set<std::string>{"A", "E"}));
}

TEST(Parser, ImplicationWithNegatedEquality) {
    Formula f = parse_formula("!(x = y) -> E(x,y)");
    ASSERT_EQ(f.kind(), FormulaKind::Implies);
    EXPECT_EQ(f.lhs().kind(), FormulaKind::Not);
    EXPECT_EQ(f.lhs().child(0).kind(), FormulaKind::Equal);
    EXPECT_EQ(f.rhs().kind(), FormulaKind::Atom);
}

TEST(Parser, SyntaxErrorsCarryPosition) {
    EXPECT_THROW(parse_formula("exists y. E(x,"), ParseError);
    try {
        parse_formula("E(x,y) &\n  & F(x)");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 3u);
    }
    EXPECT_THROW(parse_formula(""), ParseError);
    EXPECT_THROW(parse_formula("E(x,y) E(y,x)"), ParseError);
    EXPECT_THROW(parse_formula("exists . E(x)"), ParseError);
    EXPECT_THROW(parse_formula("x = "), ParseError);
}

TEST(Parser, Precedence) {
    Formula f = parse_formula("a(x) | b(x) & c(x) -> d(x) -> e(x) <-> g(x)");
    ASSERT_EQ(f.kind(), FormulaKind::Iff);
    const Formula& imp = f.lhs();
    ASSERT_EQ(imp.kind(), FormulaKind::Implies);
    EXPECT_EQ(imp.lhs().kind(), FormulaKind::Or);
    EXPECT_EQ(imp.lhs().rhs().kind(), FormulaKind::And);
    EXPECT_EQ(imp.rhs().kind(), FormulaKind::Implies);
}

TEST(Parser, QuantifierScopeExtendsRight) {
    Formula f = parse_formula("exists y. A(y) & B(x)");
    ASSERT_EQ(f.kind(), FormulaKind::Exists);
    EXPECT_EQ(f.body().kind(), FormulaKind::And);
}

TEST(Parser, BoundedQuantifierSugar) {
    EXPECT_EQ(parse_formula("exists y in B. E(x,y)"), parse_formula("exists y. (B(y) & E(x,y))"));
    EXPECT_EQ(parse_formula("forall y in B. E(x,y)"), parse_formula("forall y. (B(y) -> E(x,y))"));
}

TEST(Parser, Constants) {
    EXPECT_EQ(parse_formula("true").kind(), FormulaKind::Constant);
    EXPECT_FALSE(parse_formula("false").value());
    EXPECT_TRUE(parse_formula("!false & true").free_variables().empty());
}

TEST(Parser, PrintParseFixpointRandom) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 2000; ++i) {
        Formula f = oracle::random_formula(rng, 3, 8);
        Formula g = parse_formula(f.to_string());
        EXPECT_EQ(f, g) << f.to_string();
        EXPECT_EQ(g.to_string(), f.to_string());
    }
}

TEST(Formula, FreeVariablesAndDepth) {
    Formula f = parse_formula("E(x,y) & (forall x. exists z. E(x,z) & E(z,w))");
    EXPECT_EQ(f.free_variables(), (std::set<std::string>{"x", "y", "w"}));
    EXPECT_EQ(f.quantifier_depth(), 2u);
    EXPECT_EQ(f.all_variables(), (std::set<std::string>{"w", "x", "y", "z"}));
}

TEST(Formula, RenameFreeAvoidsCapture) {
    Formula f = parse_formula("exists y. E(x,y)");
    Formula g = rename_free(f, {{"x", "y"}});
    EXPECT_EQ(g.free_variables(), (std::set<std::string>{"y"}));
    EXPECT_NE(g.name(), "y");
    // Simultaneous: x and y swap.
    Formula h = rename_free(parse_formula("E(x,y)"), {{"x", "y"}, {"y", "x"}});
    EXPECT_EQ(h, parse_formula("E(y,x)"));
    // Bound occurrences are untouched.
    EXPECT_EQ(rename_free(parse_formula("forall x. E(x,x)"), {{"x", "z"}}), parse_formula("forall x. E(x,x)"));
}

TEST(Formula, Helpers) {
    EXPECT_EQ(conj(std::vector<Formula>{}), top());
    EXPECT_EQ(disj(std::vector<Formula>{}), bottom());
    EXPECT_EQ(exists_in("y", "B", atom("E", {"x", "y"})), parse_formula("exists y. (B(y) & E(x,y))"));
    EXPECT_EQ(fresh_variable("x", {"x", "x_1"}), "x_2");
}

TEST(PartitionedFormula, ChecksBlocks) {
    Formula f = parse_formula("E(x,y) & E(y,z)");
    EXPECT_NO_THROW(PartitionedFormula(f, {"x"}, {"y", "z"}));
    EXPECT_THROW(PartitionedFormula(f, {"x"}, {"y"}), Error);
    EXPECT_THROW(PartitionedFormula(f, {"x", "y"}, {"y", "z"}), Error);
    EXPECT_THROW(PartitionedFormula(f, {"x", "x"}, {"y", "z"}), Error);
    // Extra variables that do not occur are allowed.
    EXPECT_NO_THROW(PartitionedFormula(f, {"x", "u"}, {"y", "z"}));
}
