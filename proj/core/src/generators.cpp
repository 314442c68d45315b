#include <mwb/generators.hpp>

#include <random>

namespace mwb {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw Error(what);
}

FiniteStructure single(std::size_t n, std::string_view name, std::size_t arity, std::vector<Tuple> tuples) {
    RelationMap rels;
    rels.emplace(std::string(name), Relation(n, arity, std::move(tuples)));
    return FiniteStructure(n, std::move(rels));
}

} // namespace

FiniteStructure make_linear_order(std::size_t n) {
    require(n >= 1, "linear order needs n >= 1");
    std::vector<Tuple> t;
    t.reserve(n * (n + 1) / 2);
    for (Element i = 0; i < n; ++i)
        for (Element j = i; j < n; ++j) t.push_back({i, j});
    return single(n, kOrderRelation, 2, std::move(t));
}

FiniteStructure make_equiv(std::size_t classes, std::size_t class_size) {
    require(classes >= 1 && class_size >= 1, "equivalence structure needs c >= 1 and s >= 1");
    const std::size_t n = classes * class_size;
    std::vector<Tuple> t;
    t.reserve(classes * class_size * class_size);
    for (std::size_t c = 0; c < classes; ++c)
        for (std::size_t i = 0; i < class_size; ++i)
            for (std::size_t j = 0; j < class_size; ++j)
                t.push_back({static_cast<Element>(c * class_size + i), static_cast<Element>(c * class_size + j)});
    return single(n, kEquivRelation, 2, std::move(t));
}

FiniteStructure make_random_graph(std::size_t n, double p, std::uint64_t seed) {
    require(n >= 1, "random graph needs n >= 1");
    require(p >= 0.0 && p <= 1.0, "edge probability must lie in [0,1]");
    std::mt19937_64 rng(seed);
    std::vector<Tuple> t;
    for (Element i = 0; i < n; ++i)
        for (Element j = i + 1; j < n; ++j) {
            // 53 random bits -> uniform double in [0,1); independent of the
            // standard library's distribution implementations.
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            if (u < p) {
                t.push_back({i, j});
                t.push_back({j, i});
            }
        }
    return single(n, kGraphRelation, 2, std::move(t));
}

FiniteStructure make_fcp_expansion(std::size_t classes) {
    require(classes >= 1, "FCP expansion needs c >= 1");
    FiniteStructure base = make_equiv(classes, classes + 1);
    std::vector<Element> marked;
    for (std::size_t c = 0; c < classes; ++c)
        for (std::size_t i = 0; i <= c; ++i) marked.push_back(static_cast<Element>(c * (classes + 1) + i));
    return expand(base, NamedSubset(std::string(kMarkRelation), std::move(marked)));
}

FiniteStructure make_powerset(std::size_t atoms) {
    require(atoms >= 1 && atoms <= 20, "powerset structure supports 1..20 atoms");
    const std::size_t codes = std::size_t{1} << atoms;
    std::vector<Tuple> t;
    for (std::size_t s = 0; s < codes; ++s)
        for (std::size_t a = 0; a < atoms; ++a)
            if ((s >> a) & 1U) t.push_back({static_cast<Element>(a), static_cast<Element>(atoms + s)});
    return single(atoms + codes, kMembershipRelation, 2, std::move(t));
}

FiniteStructure make_half_graph(std::size_t n) {
    require(n >= 1, "half-graph needs n >= 1");
    std::vector<Tuple> t;
    std::vector<Element> alpha, beta;
    for (Element i = 0; i < n; ++i) {
        alpha.push_back(i);
        beta.push_back(static_cast<Element>(n + i));
        for (Element j = i; j < n; ++j) t.push_back({i, static_cast<Element>(n + j)});
    }
    FiniteStructure s = single(2 * n, kHalfGraphRelation, 2, std::move(t));
    s = expand(s, NamedSubset("A", std::move(alpha)));
    return expand(s, NamedSubset("B", std::move(beta)));
}

FiniteStructure make_matching(std::size_t pairs, std::size_t universe) {
    require(universe >= 1 && 2 * pairs <= universe, "matching does not fit in the universe");
    std::vector<Tuple> t;
    for (Element i = 0; i < pairs; ++i) t.push_back({2 * i, 2 * i + 1});
    return single(universe, kMatchingRelation, 2, std::move(t));
}

} // namespace mwb
