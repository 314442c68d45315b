#include <mwb/pipelines.hpp>

#include <mwb/generators.hpp>
#include <mwb/parser.hpp>

#include <functional>
#include <set>

namespace mwb {

T321Result pipeline_t321(const Graph& input, std::optional<std::size_t> b_size) {
    Graph g = normalize_graph(input);
    const std::size_t a = g.vertices.size();
    if (a == 0) throw Error("graph has no vertices");
    const std::size_t pairs = a * (a - 1) / 2;
    const std::size_t b = b_size.value_or(std::max<std::size_t>(pairs, 1));
    if (b < pairs)
        throw Error("B needs at least " + std::to_string(pairs) + " elements for " + std::to_string(a) + " vertices");

    T321Result r{make_coding_instance(a, b), {}, {}, {}, {}, {}, false, {}};
    for (std::size_t i = 0; i < a; ++i) r.vertex_map[g.vertices[i]] = r.instance.triple.A.members[i];
    r.graph.vertices = r.instance.triple.A.members;
    for (const auto& [u, v] : g.edges) r.graph.edges.emplace_back(r.vertex_map.at(u), r.vertex_map.at(v));
    r.graph = normalize_graph(std::move(r.graph));

    r.encoding = encode_graph(r.instance.structure, r.instance.triple, r.graph);
    r.defined = defined_edges(r.encoding, r.instance.triple);
    r.witness_counts = witness_counts(r.encoding, r.instance.triple);

    std::vector<ElementPair> want;
    for (const auto& [u, v] : r.graph.edges) {
        want.emplace_back(u, v);
        want.emplace_back(v, u);
    }
    std::sort(want.begin(), want.end());
    for (const auto& [pair, count] : r.witness_counts)
        if (count != 1) {
            r.diagnosis = "pair (" + std::to_string(pair.first) + "," + std::to_string(pair.second) + ") has " +
                          std::to_string(count) + " witnesses";
            return r;
        }
    if (r.defined != want) {
        r.diagnosis = "defined relation has " + std::to_string(r.defined.size()) + " ordered pairs, graph has " +
                      std::to_string(want.size());
        return r;
    }
    r.verdict = true;
    return r;
}

namespace {

ConfigFamily search_or_fail(const FiniteStructure& s, const PartitionedFormula& pf, ConfigKind kind,
                            std::size_t level, std::size_t reserve, std::uint64_t budget, const char* side) {
    ConfigSearchOptions o;
    o.kind = kind;
    o.levels = {level};
    o.budget = budget;
    o.exceptional_reserve = reserve;
    ConfigOutcome out = find_config_family(s, pf, o);
    if (!out.family)
        throw Error(std::string("no ") + std::string(to_string(kind)) + " configuration at level " +
                    std::to_string(level) + " in the " + side + " structure" +
                    (out.exhaustive ? " (exhaustive)" : " (budget)"));
    return *out.family;
}

void finish(T54Result& r, const std::function<bool(const RoundTrip&)>& restored) {
    r.roundtrip = roundtrip_inverse(*r.plan);
    if (!r.families) r.diagnosis = "family check: " + r.families.reason;
    else if (!r.sigma) r.diagnosis = "sigma check: " + r.sigma.reason;
    else if (!r.theta->verdict) r.diagnosis = "theta: " + r.theta->diagnosis;
    else if (!r.roundtrip->verdict) r.diagnosis = "round trip: " + r.roundtrip->verdict.reason;
    else if (!restored(*r.roundtrip)) r.diagnosis = "round trip: relation not restored";
    r.verdict = r.diagnosis.empty();
}

} // namespace

T54Result pipeline_t54_1(const T54Options& opts) {
    T54Result r;
    r.level = opts.level;
    const std::size_t n = opts.level;
    FiniteStructure order = make_linear_order(opts.order_size);
    FiniteStructure equiv = make_equiv(opts.classes, opts.class_size);
    if (equiv.universe_size() > order.universe_size())
        throw Error("the order must be at least as large as the equivalence structure");
    equiv = pad_universe(equiv, order.universe_size());
    PartitionedFormula phi(parse_formula("E(x,y)"), {"x"}, {"y"});
    PartitionedFormula psi(parse_formula("LE(x,y)"), {"x"}, {"y"});
    try {
        ConfigFamily left = search_or_fail(equiv, phi, ConfigKind::Stable, n, n, opts.budget, "left");
        ConfigFamily right = search_or_fail(order, psi, ConfigKind::Unstable, n, 0, opts.budget, "right");
        r.found = true;
        r.families = certify_config_family(equiv, phi, left);
        if (r.families) {
            r.families = certify_config_family(order, psi, right);
        }
        r.plan = plan_prop1(equiv, phi, left, order, psi, right);
    } catch (const Error& e) {
        r.diagnosis = e.what();
        return r;
    }
    r.sigma = check_sigma_prop1(r.plan->left_family, *r.plan->right_family, r.plan->sigma);
    r.theta = run_overlay(*r.plan, n);
    const FiniteStructure& original = r.plan->right;
    finish(r, [&](const RoundTrip& rt) {
        for (const auto& [name, rel] : original.relations())
            if (!(rt.restored.relation(name) == rel)) return false;
        return true;
    });
    return r;
}

T54Result pipeline_t54_2(const T54Options& opts) {
    T54Result r;
    r.level = opts.level;
    const std::size_t n = opts.level;
    FiniteStructure equiv = make_equiv(opts.classes, opts.class_size);
    FiniteStructure matching = make_matching(opts.pairs, equiv.universe_size());
    const std::string y(kMatchingRelation);
    PartitionedFormula phi(parse_formula("E(x,y)"), {"x"}, {"y"});
    try {
        ConfigFamily left = search_or_fail(equiv, phi, ConfigKind::Stable, n, 0, opts.budget, "left");
        r.found = true;
        r.families = certify_config_family(equiv, phi, left);
        DisjointFamily fam = extract_disjoint_family(matching.relation(y), true);
        if (r.families) r.families = certify_disjoint_family(matching.relation(y), fam);
        r.plan = plan_prop2(equiv, phi, left, matching, y, fam);
    } catch (const Error& e) {
        r.diagnosis = e.what();
        return r;
    }
    r.sigma = check_sigma_prop2(r.plan->left_family, *r.plan->disjoint, r.plan->sigma);
    r.theta = run_overlay(*r.plan, n, opts.split);
    const Relation& original = r.plan->right.relation(y);
    finish(r, [&](const RoundTrip& rt) { return rt.restored.relation(y) == original; });
    return r;
}

} // namespace mwb
