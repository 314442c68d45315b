#include <mwb/generators.hpp>
#include <mwb/overlay.hpp>
#include <mwb/parser.hpp>

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace mwb;

namespace {

ConfigLevel level2(Element b0, Element b1, Element a00, Element a01, Element a10, Element a11) {
    return ConfigLevel{2, {}, {b0, b1}, {a00, a01, a10, a11}};
}

ConfigFamily with_complement(ConfigKind kind, std::vector<ConfigLevel> levels, std::size_t universe) {
    ConfigFamily f{kind, std::move(levels), {}};
    std::set<Element> used;
    for (const auto& l : f.levels)
        for (Element e : l.elements()) used.insert(e);
    for (Element e = 0; e < universe; ++e)
        if (!used.count(e)) f.exceptional.push_back(e);
    return f;
}

ConfigFamily search(const FiniteStructure& s, const PartitionedFormula& p, ConfigKind kind, std::size_t n,
                    std::size_t reserve = 0) {
    ConfigSearchOptions o;
    o.kind = kind;
    o.levels = {n};
    o.exceptional_reserve = reserve;
    return *find_config_family(s, p, o).family;
}

PartitionedFormula xy(const char* text) { return PartitionedFormula(parse_formula(text), {"x"}, {"y"}); }

} // namespace

TEST(SigmaProp1, SingleLevelExplicit) {
    ConfigFamily left = with_complement(ConfigKind::Stable, {level2(0, 1, 2, 3, 4, 5)}, 16);
    ConfigFamily right = with_complement(ConfigKind::Unstable, {level2(6, 7, 8, 9, 10, 11)}, 16);
    Permutation sigma = build_sigma_prop1(left, right, 16);
    EXPECT_EQ(sigma(8), 2u);
    EXPECT_EQ(sigma(9), 4u);
    EXPECT_EQ(sigma(10), 3u);
    EXPECT_EQ(sigma(11), 5u);
    for (Element d : {6u, 7u})
        EXPECT_TRUE(std::binary_search(left.exceptional.begin(), left.exceptional.end(), sigma(d)));
    EXPECT_TRUE(check_sigma_prop1(left, right, sigma));
    Permutation broken = Permutation::identity(16);
    EXPECT_FALSE(check_sigma_prop1(left, right, broken));
}

TEST(SigmaProp1, EmptyFamiliesGiveIdentity) {
    ConfigFamily left = with_complement(ConfigKind::Stable, {}, 6);
    ConfigFamily right = with_complement(ConfigKind::Stable, {}, 6);
    EXPECT_TRUE(build_sigma_prop1(left, right, 6).is_identity());
}

TEST(SigmaProp1, Errors) {
    ConfigFamily left = with_complement(ConfigKind::Stable, {level2(0, 1, 2, 3, 4, 5)}, 7);
    ConfigFamily right = with_complement(ConfigKind::Stable, {level2(1, 2, 3, 4, 5, 6)}, 7);
    EXPECT_THROW(build_sigma_prop1(left, right, 7), Error);
    ConfigFamily big = with_complement(ConfigKind::Stable, {level2(0, 1, 2, 3, 4, 5)}, 16);
    ConfigFamily three = with_complement(ConfigKind::Stable, {ConfigLevel{3, {}, {0, 1, 2}, {3, 4, 5, 6, 7, 8, 9, 10, 11}}}, 16);
    EXPECT_THROW(build_sigma_prop1(big, three, 16), Error);
}

TEST(SigmaProp2, LevelTwoUsesFirstMember) {
    ConfigFamily left = with_complement(ConfigKind::Stable, {level2(0, 1, 2, 3, 4, 5)}, 12);
    FiniteStructure m = make_matching(3, 12);
    DisjointFamily fam = extract_disjoint_family(m.relation("Y"));
    Permutation sigma = build_sigma_prop2(left, fam, 12);
    EXPECT_EQ(sigma(fam.members[0][0]), 3u);
    EXPECT_EQ(sigma(fam.members[0][1]), 4u);
    EXPECT_TRUE(check_sigma_prop2(left, fam, sigma));
}

TEST(SigmaProp2, LevelOneAndErrors) {
    ConfigFamily one = with_complement(ConfigKind::Stable, {ConfigLevel{1, {}, {0}, {1}}}, 6);
    DisjointFamily empty;
    empty.coordinate_permutation = {0, 1};
    EXPECT_TRUE(build_sigma_prop2(one, empty, 6).is_identity());
    ConfigFamily two = with_complement(ConfigKind::Stable, {level2(0, 1, 2, 3, 4, 5)}, 6);
    EXPECT_THROW(build_sigma_prop2(two, empty, 6), Error);
}

TEST(PhiStar, StableRows) {
    FiniteStructure base = make_equiv(5, 5);
    auto phi = xy("E(x,y)");
    ConfigFamily f = search(base, phi, ConfigKind::Stable, 3);
    const ConfigLevel& l = f.level(3);
    FiniteStructure s = expand(expand(base, NamedSubset("S", l.spine)), NamedSubset("M", l.matrix));
    Formula star = synthesize_phi_star(s, "S", "M", phi, {}, ConfigKind::Stable, "u", "v");
    for (std::size_t i = 0; i < 3; ++i) {
        auto row = solution_set(s, star, {"v"}, {{"u", l.b(i)}});
        std::vector<Tuple> want;
        for (std::size_t j = 0; j < 3; ++j) want.push_back({l.a(i, j)});
        std::sort(want.begin(), want.end());
        EXPECT_EQ(row, want) << i;
    }
    // Elements off the spine have empty rows.
    EXPECT_TRUE(solution_set(s, star, {"v"}, {{"u", 24}}).empty());
}

TEST(PhiStar, UnstableRowsIncludingTop) {
    FiniteStructure base = make_linear_order(40);
    auto psi = xy("LE(x,y)");
    ConfigFamily f = search(base, psi, ConfigKind::Unstable, 3);
    const ConfigLevel& l = f.level(3);
    FiniteStructure s = expand(expand(base, NamedSubset("S", l.spine)), NamedSubset("M", l.matrix));
    Formula star = synthesize_phi_star(s, "S", "M", psi, {}, ConfigKind::Unstable, "u", "v");
    oracle::NaiveModel m(s);
    for (std::size_t i = 0; i < 3; ++i) {
        std::set<Tuple> want;
        for (std::size_t j = 0; j < 3; ++j) want.insert({l.a(i, j)});
        EXPECT_EQ(m.solutions(star, {"v"}, {{"u", l.b(i)}}), want) << i;
    }
}

TEST(PhiStar, SingleRow) {
    FiniteStructure base = make_linear_order(10);
    auto psi = xy("LE(x,y)");
    ConfigFamily f = search(base, psi, ConfigKind::Unstable, 1);
    const ConfigLevel& l = f.level(1);
    FiniteStructure s = expand(expand(base, NamedSubset("S", l.spine)), NamedSubset("M", l.matrix));
    Formula star = synthesize_phi_star(s, "S", "M", psi, {}, ConfigKind::Unstable, "u", "v");
    EXPECT_EQ(solution_set(s, star, {"v"}, {{"u", l.b(0)}}), (std::vector<Tuple>{{l.a(0, 0)}}));
}

TEST(PhiStar, NonTotalOrderRejected) {
    // Two spine elements with identical rows cannot be ordered.
    FiniteStructure base = make_equiv(2, 3);
    FiniteStructure s = expand(expand(base, NamedSubset("S", {0, 1})), NamedSubset("M", {2}));
    EXPECT_THROW(synthesize_phi_star(s, "S", "M", xy("E(x,y)"), {}, ConfigKind::Unstable, "u", "v"), Error);
}

TEST(Overlay, Prop1EquivalenceWithOrder) {
    FiniteStructure left = pad_universe(make_equiv(4, 5), 60);
    FiniteStructure right = make_linear_order(60);
    auto phi = xy("E(x,y)");
    auto psi = xy("LE(x,y)");
    ConfigFamily lf = search(left, phi, ConfigKind::Stable, 3, 3);
    ConfigFamily rf = search(right, psi, ConfigKind::Unstable, 3);
    OverlayPlan plan = plan_prop1(left, phi, lf, right, psi, rf);
    EXPECT_EQ(plan.combined, overlay_union(left, apply_permutation(right, plan.sigma)));
    ThetaReport t = run_overlay(plan, 3);
    EXPECT_TRUE(t.verdict) << t.diagnosis;
    EXPECT_EQ(t.solution.size(), 9u);
    EXPECT_EQ(t.target.size(), 9u);
    // Independent recount of the solution set with the naive oracle.
    std::set<Tuple> naive = oracle::NaiveModel(t.expanded).solutions(t.theta, t.vars, t.params);
    EXPECT_EQ(naive, std::set<Tuple>(t.solution.begin(), t.solution.end()));
    RoundTrip rt = roundtrip_inverse(plan);
    EXPECT_TRUE(rt.verdict) << rt.verdict.reason;
    EXPECT_EQ(rt.restored.relation("LE"), right.relation("LE"));
}

TEST(Overlay, Prop2EquivalenceWithMatching) {
    FiniteStructure left = make_equiv(4, 5);
    FiniteStructure right = make_matching(10, 20);
    auto phi = xy("E(x,y)");
    ConfigFamily lf = search(left, phi, ConfigKind::Stable, 4);
    DisjointFamily fam = extract_disjoint_family(right.relation("Y"), true);
    OverlayPlan plan = plan_prop2(left, phi, lf, right, "Y", fam);
    ThetaReport t = run_overlay(plan, 4);
    EXPECT_TRUE(t.verdict) << t.diagnosis;
    EXPECT_EQ(t.solution.size(), 4u);
    EXPECT_EQ(t.domain_left.size(), 2u);
    EXPECT_EQ(t.domain_right.size(), 2u);
    std::set<Tuple> naive = oracle::NaiveModel(t.expanded).solutions(t.theta, t.vars, t.params);
    EXPECT_EQ(naive, std::set<Tuple>(t.solution.begin(), t.solution.end()));
    RoundTrip rt = roundtrip_inverse(plan);
    EXPECT_TRUE(rt.verdict);
    EXPECT_EQ(rt.restored.relation("Y"), right.relation("Y"));
}

TEST(Overlay, Prop2SplitsAndLevelOne) {
    FiniteStructure left = make_equiv(6, 6);
    FiniteStructure right = make_matching(18, 36);
    auto phi = xy("E(x,y)");
    ConfigFamily lf = search(left, phi, ConfigKind::Stable, 5);
    DisjointFamily fam = extract_disjoint_family(right.relation("Y"), true);
    OverlayPlan plan = plan_prop2(left, phi, lf, right, "Y", fam);
    for (std::size_t h = 0; h <= 5; ++h) {
        ThetaReport t = run_overlay(plan, 5, h);
        EXPECT_TRUE(t.verdict) << h << ": " << t.diagnosis;
        EXPECT_EQ(t.solution.size(), h * (5 - h));
    }
    EXPECT_THROW(run_overlay(plan, 5, 6), Error);

    ConfigFamily l1 = search(left, phi, ConfigKind::Stable, 1);
    OverlayPlan p1 = plan_prop2(left, phi, l1, right, "Y", fam);
    ThetaReport t1 = run_overlay(p1, 1);
    EXPECT_TRUE(t1.verdict);
    EXPECT_TRUE(t1.solution.empty());
    EXPECT_TRUE(t1.target.members.empty());
}

TEST(Overlay, Prop2RequiresIsolation) {
    FiniteStructure left = make_equiv(4, 5);
    RelationMap m;
    m.emplace("Y", Relation(20, 2, {{0, 1}, {1, 2}, {2, 3}, {6, 7}, {8, 9}, {10, 11}}));
    FiniteStructure right(20, std::move(m));
    auto phi = xy("E(x,y)");
    ConfigFamily lf = search(left, phi, ConfigKind::Stable, 2);
    DisjointFamily weak = extract_disjoint_family(right.relation("Y"));
    EXPECT_THROW(plan_prop2(left, phi, lf, right, "Y", weak), Error);
    DisjointFamily iso = extract_disjoint_family(right.relation("Y"), true);
    EXPECT_NO_THROW(plan_prop2(left, phi, lf, right, "Y", iso));
}

TEST(Overlay, IdentityRoundTripIsNoOp) {
    FiniteStructure left = make_equiv(2, 3);
    FiniteStructure right = make_matching(3, 6);
    Permutation id = Permutation::identity(6);
    OverlayPlan plan{OverlayVariant::Prop1, left, xy("E(x,y)"), ConfigFamily{}, right, std::nullopt,
                     std::nullopt, "", std::nullopt, id, combine(left, right, id)};
    RoundTrip rt = roundtrip_inverse(plan);
    EXPECT_TRUE(rt.verdict);
    EXPECT_EQ(rt.restored, plan.combined);
}

TEST(Overlay, VariantNames) {
    EXPECT_EQ(to_string(OverlayVariant::Prop2), "prop2");
    EXPECT_EQ(overlay_variant_from_string("prop1"), OverlayVariant::Prop1);
    EXPECT_THROW(overlay_variant_from_string("prop3"), Error);
}
