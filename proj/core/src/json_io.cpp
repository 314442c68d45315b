#include <mwb/json_io.hpp>

#include <mwb/parser.hpp>
#include <mwb/structure_io.hpp>

#include <limits>

namespace mwb {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed ") + what + ": " + e.what());
    }
}

Element element_from(const Json& j) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() > std::numeric_limits<Element>::max())
        throw Error("expected a non-negative element, got " + j.dump());
    return j.get<Element>();
}

Tuple tuple_from(const Json& j) {
    if (!j.is_array()) throw Error("expected an array of elements, got " + j.dump());
    Tuple t;
    for (const auto& e : j) t.push_back(element_from(e));
    return t;
}

std::vector<Tuple> tuples_from(const Json& j) {
    if (!j.is_array()) throw Error("expected an array of tuples");
    std::vector<Tuple> out;
    for (const auto& t : j) out.push_back(tuple_from(t));
    return out;
}

Json tuples_to(const std::vector<Tuple>& ts) {
    Json out = Json::array();
    for (const auto& t : ts) out.push_back(t);
    return out;
}

Json level_to(const ConfigLevel& l) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < l.n; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < l.n; ++j) row.push_back(l.a(i, j));
        rows.push_back(row);
    }
    return {{"n", l.n}, {"params", l.params}, {"spine", l.spine}, {"matrix", rows}};
}

ConfigLevel level_from(const Json& j) {
    ConfigLevel l;
    l.n = j.at("n").get<std::size_t>();
    l.params = tuple_from(j.at("params"));
    l.spine = tuple_from(j.at("spine"));
    const Json& rows = j.at("matrix");
    if (!rows.is_array() || rows.size() != l.n) throw Error("matrix must have n rows");
    for (const auto& row : rows) {
        Tuple r = tuple_from(row);
        if (r.size() != l.n) throw Error("matrix rows must have n entries");
        l.matrix.insert(l.matrix.end(), r.begin(), r.end());
    }
    if (l.spine.size() != l.n) throw Error("spine must have n entries");
    return l;
}

} // namespace

namespace {

bool flat(const Json& j) {
    if (!j.is_array()) return false;
    for (const auto& e : j)
        if (e.is_object() || (e.is_array() && !flat(e))) return false;
    return true;
}

void write(std::string& out, const Json& j, int indent) {
    const std::string pad(indent + 2, ' ');
    if (j.is_object() && !j.empty()) {
        out += "{\n";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            out += first ? "" : ",\n";
            first = false;
            out += pad + Json(k).dump() + ": ";
            write(out, v, indent + 2);
        }
        out += "\n" + std::string(indent, ' ') + "}";
    } else if (j.is_array() && !j.empty() && !flat(j)) {
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += i ? ",\n" + pad : pad;
            write(out, j[i], indent + 2);
        }
        out += "\n" + std::string(indent, ' ') + "]";
    } else {
        out += j.dump();
    }
}

} // namespace

std::string dump(const Json& j) {
    std::string out;
    write(out, j, 0);
    return out + "\n";
}

Json to_json(const FiniteStructure& s) { return Json::parse(to_canonical_json(s)); }

FiniteStructure structure_from_json(const Json& j) { return parse_structure(j.dump()); }

Json to_json(const PartitionedFormula& pf) {
    return {{"formula", pf.formula.to_string()}, {"object_vars", pf.object_vars}, {"param_vars", pf.param_vars}};
}

PartitionedFormula partitioned_formula_from_json(const Json& j) {
    return guarded("partitioned formula", [&] {
        return PartitionedFormula(parse_formula(j.at("formula").get<std::string>()),
                                  j.at("object_vars").get<std::vector<std::string>>(),
                                  j.value("param_vars", std::vector<std::string>{}));
    });
}

Json to_json(const Permutation& p) { return p.mapping(); }

Permutation permutation_from_json(const Json& j) { return Permutation(tuple_from(j)); }

Json to_json(const NamedSubset& p) { return {{"name", p.name}, {"members", p.members}}; }

NamedSubset named_subset_from_json(const Json& j) {
    return guarded("named subset", [&] {
        return NamedSubset(j.at("name").get<std::string>(), tuple_from(j.at("members")));
    });
}

Json to_json(const WitnessReport& r) {
    Json certs = Json::array();
    for (const auto& c : r.certificates) certs.push_back({{"label", c.label}, {"solution", c.solution}});
    return {{"kind", to_string(r.kind)},
            {"level", r.level},
            {"parameter_tuples", tuples_to(r.parameter_tuples)},
            {"certificates", certs}};
}

WitnessReport witness_report_from_json(const Json& j) {
    return guarded("witness report", [&] {
        WitnessReport r;
        r.kind = witness_kind_from_string(j.at("kind").get<std::string>());
        r.level = j.at("level").get<std::size_t>();
        r.parameter_tuples = tuples_from(j.at("parameter_tuples"));
        for (const auto& c : j.at("certificates"))
            r.certificates.push_back({c.at("label").get<std::uint64_t>(), tuple_from(c.at("solution"))});
        return r;
    });
}

Json to_json(const ConfigFamily& f) {
    Json levels = Json::array();
    for (const auto& l : f.levels) levels.push_back(level_to(l));
    return {{"kind", to_string(f.kind)}, {"levels", levels}, {"exceptional", f.exceptional}};
}

ConfigFamily config_family_from_json(const Json& j) {
    return guarded("configuration family", [&] {
        ConfigFamily f;
        f.kind = config_kind_from_string(j.at("kind").get<std::string>());
        for (const auto& l : j.at("levels")) f.levels.push_back(level_from(l));
        f.exceptional = tuple_from(j.at("exceptional"));
        return f;
    });
}

Json to_json(const DisjointFamily& f) {
    Json pairing = Json::array();
    for (const auto& [a, b] : f.pairing) pairing.push_back({a, b});
    return {{"coordinate_permutation", f.coordinate_permutation},
            {"members", tuples_to(f.members)},
            {"support", f.support},
            {"pairing", pairing},
            {"candidate_pool", f.candidate_pool},
            {"multiplicity", f.multiplicity},
            {"size_bound", f.size_bound},
            {"isolated", f.isolated}};
}

DisjointFamily disjoint_family_from_json(const Json& j) {
    return guarded("disjoint family", [&] {
        DisjointFamily f;
        f.coordinate_permutation = j.at("coordinate_permutation").get<std::vector<std::size_t>>();
        f.members = tuples_from(j.at("members"));
        f.support = tuple_from(j.at("support"));
        for (const auto& p : j.at("pairing")) {
            Tuple t = tuple_from(p);
            if (t.size() != 2) throw Error("pairing entries are [first, second]");
            f.pairing[t[0]] = t[1];
        }
        f.candidate_pool = j.value("candidate_pool", std::size_t{0});
        f.multiplicity = j.value("multiplicity", std::size_t{0});
        f.size_bound = j.value("size_bound", std::size_t{0});
        f.isolated = j.value("isolated", false);
        return f;
    });
}

Json to_json(const MonadicPresentation& p) {
    Json preds = Json::array();
    for (const auto& s : p.predicates) preds.push_back(to_json(s));
    return {{"predicates", preds},
            {"variables", p.variables},
            {"formula", p.formula.to_string()},
            {"excess", p.excess}};
}

Json to_json(const UnionMultiplicityReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"relation", e.relation}, {"operand", e.operand}, {"before", e.before}, {"after", e.after}});
    return {{"entries", entries}, {"preserved", r.preserved}};
}

Json to_json(const Graph& g) {
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    return {{"vertices", g.vertices}, {"edges", edges}};
}

Graph graph_from_json(const Json& j) {
    return guarded("graph", [&] {
        Graph g;
        g.vertices = tuple_from(j.at("vertices"));
        for (const auto& e : j.at("edges")) {
            Tuple t = tuple_from(e);
            if (t.size() != 2) throw Error("edges are [u, v] pairs");
            if (t[0] >= t[1]) throw Error("edge " + e.dump() + " must be written with u < v");
            g.edges.emplace_back(t[0], t[1]);
        }
        return normalize_graph(std::move(g));
    });
}

Json to_json(const CodingTriple& t) {
    return {{"A", to_json(t.A)}, {"B", to_json(t.B)}, {"C", to_json(t.C)}, {"phi", to_json(t.phi)}, {"params", t.params}};
}

CodingTriple coding_triple_from_json(const Json& j) {
    return guarded("coding triple", [&] {
        return CodingTriple{named_subset_from_json(j.at("A")), named_subset_from_json(j.at("B")),
                            named_subset_from_json(j.at("C")), partitioned_formula_from_json(j.at("phi")),
                            j.contains("params") ? tuple_from(j.at("params")) : Tuple{}};
    });
}

Json to_json(const GraphEncoding& e) {
    Json pairs = Json::array();
    for (const auto& [p, b] : e.pair_assignment) pairs.push_back({{"pair", {p.first, p.second}}, {"witness", b}});
    return {{"D", to_json(e.D)},
            {"E", to_json(e.E)},
            {"pair_assignment", pairs},
            {"edge_formula", e.edge_formula.to_string()},
            {"edge_vars", e.edge_vars}};
}

Json to_json(const ThetaReport& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    return {{"theta", r.theta.to_string()},
            {"vars", r.vars},
            {"domain_left", to_json(r.domain_left)},
            {"domain_right", to_json(r.domain_right)},
            {"target", to_json(r.target)},
            {"solution", tuples_to(r.solution)},
            {"cardinality", r.solution.size()},
            {"verdict", r.verdict},
            {"diagnosis", r.diagnosis},
            {"boundary_exclusions", r.boundary_exclusions},
            {"params", params}};
}

Json to_json(const OverlayPlan& p) {
    Json j = {{"variant", to_string(p.variant)},
              {"left", to_json(p.left)},
              {"left_phi", to_json(p.left_phi)},
              {"left_family", to_json(p.left_family)},
              {"right", to_json(p.right)},
              {"sigma", to_json(p.sigma)}};
    if (p.right_phi) j["right_phi"] = to_json(*p.right_phi);
    if (p.right_family) j["right_family"] = to_json(*p.right_family);
    if (p.disjoint) {
        j["relation"] = p.relation;
        j["disjoint_family"] = to_json(*p.disjoint);
    }
    return j;
}

OverlayPlan overlay_plan_from_json(const Json& j) {
    return guarded("overlay plan", [&] {
        FiniteStructure left = structure_from_json(j.at("left"));
        FiniteStructure right = structure_from_json(j.at("right"));
        Permutation sigma = permutation_from_json(j.at("sigma"));
        if (sigma.size() != left.universe_size()) throw Error("sigma does not match the universe");
        FiniteStructure combined = combine(left, right, sigma);
        OverlayPlan p{overlay_variant_from_string(j.at("variant").get<std::string>()),
                      std::move(left),
                      partitioned_formula_from_json(j.at("left_phi")),
                      config_family_from_json(j.at("left_family")),
                      std::move(right),
                      std::nullopt,
                      std::nullopt,
                      j.value("relation", std::string{}),
                      std::nullopt,
                      std::move(sigma),
                      std::move(combined)};
        if (j.contains("right_phi")) p.right_phi = partitioned_formula_from_json(j.at("right_phi"));
        if (j.contains("right_family")) p.right_family = config_family_from_json(j.at("right_family"));
        if (j.contains("disjoint_family")) p.disjoint = disjoint_family_from_json(j.at("disjoint_family"));
        return p;
    });
}

} // namespace mwb
