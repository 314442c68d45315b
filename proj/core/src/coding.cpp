#include <mwb/coding.hpp>

#include <mwb/generators.hpp>

#include <algorithm>
#include <set>

namespace mwb {

namespace {

std::string pair_text(Element a, Element b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

void check_members(const FiniteStructure& s, const NamedSubset& p) {
    for (Element e : p.members)
        if (e >= s.universe_size())
            throw Error("set " + p.name + " mentions element " + std::to_string(e) + " outside the universe");
}

void check_disjoint(const NamedSubset& a, const NamedSubset& b) {
    for (Element e : a.members)
        if (b.contains(e))
            throw Error("sets " + a.name + " and " + b.name + " overlap at element " + std::to_string(e));
}

Assignment param_assignment(const PartitionedFormula& pf, const Tuple& params) {
    if (params.size() != pf.param_vars.size())
        throw Error("expected " + std::to_string(pf.param_vars.size()) + " parameter values, got " +
                    std::to_string(params.size()));
    Assignment a;
    for (std::size_t i = 0; i < params.size(); ++i) a[pf.param_vars[i]] = params[i];
    return a;
}

std::set<std::string> names_in(const PartitionedFormula& pf) {
    std::set<std::string> out = pf.formula.all_variables();
    out.insert(pf.object_vars.begin(), pf.object_vars.end());
    out.insert(pf.param_vars.begin(), pf.param_vars.end());
    return out;
}

/// pf's object variables renamed to `to`, in order.
Formula instantiate(const PartitionedFormula& pf, const std::vector<std::string>& to) {
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < to.size(); ++i) m[pf.object_vars[i]] = to[i];
    return rename_free(pf.formula, m);
}

std::string take_fresh(const std::string& base, std::set<std::string>& avoid) {
    std::string v = fresh_variable(base, avoid);
    avoid.insert(v);
    return v;
}

FiniteStructure ensure_subset(const FiniteStructure& s, const NamedSubset& p) {
    if (const Relation* r = s.find_relation(p.name)) {
        if (r->arity() != 1 || !std::equal(r->flat().begin(), r->flat().end(), p.members.begin(), p.members.end()))
            throw Error("relation " + p.name + " already exists with different contents");
        return s;
    }
    return expand(s, p);
}

std::vector<ElementPair> pairs_on(const FiniteStructure& s, const Formula& f, const std::vector<std::string>& vars,
                                  const std::vector<Element>& domain, const Assignment& params) {
    std::vector<std::string> all = vars;
    for (const auto& [k, v] : params) all.push_back(k);
    Evaluator ev(s, f, all);
    Tuple point(all.size());
    std::size_t i = 2;
    for (const auto& [k, v] : params) point[i++] = v;
    std::vector<ElementPair> out;
    for (Element a : domain)
        for (Element b : domain) {
            point[0] = a;
            point[1] = b;
            if (ev(point)) out.emplace_back(a, b);
        }
    return out;
}

} // namespace

BijectionCheck check_bijection_graph(const std::vector<Element>& left, const std::vector<Element>& right,
                                     const std::vector<Element>& target, const std::vector<Tuple>& triples) {
    BijectionCheck out;
    if (left.size() * right.size() != target.size()) {
        out.diagnosis = "domain has " + std::to_string(left.size()) + "*" + std::to_string(right.size()) +
                        " pairs but the target has " + std::to_string(target.size()) + " elements";
        return out;
    }
    std::map<ElementPair, std::vector<Element>> images;
    for (const Tuple& t : triples) images[{t.at(0), t.at(1)}].push_back(t.at(2));
    std::vector<Element> l = left, r = right;
    std::sort(l.begin(), l.end());
    std::sort(r.begin(), r.end());
    for (Element a : l)
        for (Element b : r) {
            auto it = images.find({a, b});
            if (it == images.end()) {
                out.diagnosis = "pair " + pair_text(a, b) + " has no image";
                return out;
            }
            if (it->second.size() > 1) {
                out.diagnosis = "pair " + pair_text(a, b) + " has images " + std::to_string(it->second[0]) +
                                " and " + std::to_string(it->second[1]);
                return out;
            }
            out.function[{a, b}] = it->second[0];
        }
    std::map<Element, ElementPair> preimage;
    for (const auto& [p, c] : out.function) {
        auto [it, fresh] = preimage.emplace(c, p);
        if (!fresh) {
            out.diagnosis = "pairs " + pair_text(it->second.first, it->second.second) + " and " +
                            pair_text(p.first, p.second) + " share image " + std::to_string(c);
            return out;
        }
    }
    std::vector<Element> t = target;
    std::sort(t.begin(), t.end());
    for (Element c : t)
        if (!preimage.count(c)) {
            out.diagnosis = "target element " + std::to_string(c) + " has no preimage";
            return out;
        }
    out.ok = true;
    return out;
}

BijectionCheck verify_coding(const FiniteStructure& s, const CodingTriple& t) {
    for (const NamedSubset* p : {&t.A, &t.B, &t.C}) check_members(s, *p);
    check_disjoint(t.A, t.B);
    check_disjoint(t.A, t.C);
    check_disjoint(t.B, t.C);
    if (t.phi.object_vars.size() != 3) throw Error("a coding formula needs exactly three object variables");
    Assignment params = param_assignment(t.phi, t.params);
    if (t.A.size() * t.B.size() != t.C.size()) return check_bijection_graph(t.A.members, t.B.members, t.C.members, {});

    std::vector<std::string> vars = t.phi.object_vars;
    vars.insert(vars.end(), t.phi.param_vars.begin(), t.phi.param_vars.end());
    Evaluator ev(s, t.phi.formula, vars);
    Tuple point(vars.size());
    std::copy(t.params.begin(), t.params.end(), point.begin() + 3);
    std::vector<Tuple> triples;
    for (Element a : t.A.members)
        for (Element b : t.B.members)
            for (Element c : t.C.members) {
                point[0] = a;
                point[1] = b;
                point[2] = c;
                if (ev(point)) triples.push_back({a, b, c});
            }
    return check_bijection_graph(t.A.members, t.B.members, t.C.members, triples);
}

CodingInstance make_coding_instance(std::size_t a_size, std::size_t b_size) {
    if (a_size == 0 || b_size == 0) throw Error("coding sets must be nonempty");
    const std::size_t c0 = a_size + b_size;
    const std::size_t n = c0 + a_size * b_size;
    std::vector<Element> A, B, C;
    for (std::size_t i = 0; i < a_size; ++i) A.push_back(static_cast<Element>(i));
    for (std::size_t j = 0; j < b_size; ++j) B.push_back(static_cast<Element>(a_size + j));
    std::vector<Tuple> f;
    for (std::size_t i = 0; i < a_size; ++i)
        for (std::size_t j = 0; j < b_size; ++j) {
            Element c = static_cast<Element>(c0 + i * b_size + j);
            C.push_back(c);
            f.push_back({A[i], B[j], c});
        }
    NamedSubset sa("A", A), sb("B", B), sc("C", C);
    RelationMap rels;
    rels.emplace("F", Relation(n, 3, std::move(f)));
    FiniteStructure s(n, std::move(rels));
    std::vector<NamedSubset> preds{sa, sb, sc};
    s = expand(s, preds);
    PartitionedFormula phi(atom("F", {"x", "y", "z"}), {"x", "y", "z"}, {});
    return {std::move(s), CodingTriple{std::move(sa), std::move(sb), std::move(sc), std::move(phi), {}}};
}

Graph normalize_graph(Graph g) {
    std::sort(g.vertices.begin(), g.vertices.end());
    if (std::adjacent_find(g.vertices.begin(), g.vertices.end()) != g.vertices.end())
        throw Error("graph lists a vertex twice");
    for (auto& [u, v] : g.edges) {
        if (u == v) throw Error("graph has a loop at " + std::to_string(u));
        if (u > v) std::swap(u, v);
        for (Element w : {u, v})
            if (!std::binary_search(g.vertices.begin(), g.vertices.end(), w))
                throw Error("edge endpoint " + std::to_string(w) + " is not a vertex");
    }
    std::sort(g.edges.begin(), g.edges.end());
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
        throw Error("graph lists an edge twice");
    return g;
}

GraphEncoding encode_graph(const FiniteStructure& s, const CodingTriple& t, const Graph& graph,
                           const EncodingNames& names) {
    BijectionCheck coding = verify_coding(s, t);
    if (!coding.ok) throw Error("not a coding triple: " + coding.diagnosis);
    Graph g = normalize_graph(graph);
    for (Element v : g.vertices)
        if (!t.A.contains(v)) throw Error("graph vertex " + std::to_string(v) + " is not in " + t.A.name);

    const auto& A = t.A.members;
    const std::size_t pairs = A.size() * (A.size() - 1) / 2;
    if (t.B.size() < pairs)
        throw Error(t.B.name + " has " + std::to_string(t.B.size()) + " elements but " + std::to_string(pairs) +
                    " pairs need a dedicated witness each");

    GraphEncoding enc;
    std::vector<Element> d, e;
    std::size_t next = 0;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j) {
            Element b = t.B.members[next++];
            enc.pair_assignment[{A[i], A[j]}] = b;
            Element c1 = coding.function.at({A[i], b});
            Element c2 = coding.function.at({A[j], b});
            d.push_back(c1);
            d.push_back(c2);
            if (std::binary_search(g.edges.begin(), g.edges.end(), ElementPair{A[i], A[j]})) {
                e.push_back(c1);
                e.push_back(c2);
            }
        }
    enc.D = NamedSubset(names.D, std::move(d));
    enc.E = NamedSubset(names.E, std::move(e));

    FiniteStructure x = ensure_subset(s, t.A);
    x = ensure_subset(x, t.B);
    x = expand(x, enc.D);
    enc.expanded = expand(x, enc.E);

    std::set<std::string> avoid = names_in(t.phi);
    std::string u = take_fresh("u", avoid), v = take_fresh("v", avoid), y = take_fresh("y", avoid);
    std::string z1 = take_fresh("z1", avoid), z2 = take_fresh("z2", avoid);
    Formula inner = exists_in(z2, enc.E.name, instantiate(t.phi, {v, y, z2}));
    Formula body = exists_in(y, t.B.name, exists_in(z1, enc.E.name, conj(instantiate(t.phi, {u, y, z1}), inner)));
    enc.edge_formula = conj({atom(t.A.name, {u}), atom(t.A.name, {v}), neg(eq(u, v)), body});
    enc.edge_vars = {u, v};
    return enc;
}

std::vector<ElementPair> defined_edges(const GraphEncoding& enc, const CodingTriple& t) {
    return pairs_on(enc.expanded, enc.edge_formula, enc.edge_vars, t.A.members, param_assignment(t.phi, t.params));
}

std::map<ElementPair, std::size_t> witness_counts(const GraphEncoding& enc, const CodingTriple& t) {
    std::set<std::string> avoid = names_in(t.phi);
    std::string p = take_fresh("p", avoid), q = take_fresh("q", avoid), y = take_fresh("y", avoid);
    std::string z1 = take_fresh("z1", avoid), z2 = take_fresh("z2", avoid);
    Formula f = conj(exists_in(z1, enc.D.name, instantiate(t.phi, {p, y, z1})),
                     exists_in(z2, enc.D.name, instantiate(t.phi, {q, y, z2})));
    std::vector<std::string> vars{p, q, y};
    vars.insert(vars.end(), t.phi.param_vars.begin(), t.phi.param_vars.end());
    Evaluator ev(enc.expanded, f, vars);
    Tuple point(vars.size());
    std::copy(t.params.begin(), t.params.end(), point.begin() + 3);
    std::map<ElementPair, std::size_t> out;
    const auto& A = t.A.members;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j) {
            std::size_t count = 0;
            for (Element b : t.B.members) {
                point[0] = A[i];
                point[1] = A[j];
                point[2] = b;
                if (ev(point)) ++count;
            }
            out[{A[i], A[j]}] = count;
        }
    return out;
}

Formula order_formula(const PartitionedFormula& psi, const std::string& witnesses, const std::string& p,
                      const std::string& q) {
    if (psi.object_vars.size() != 2) throw Error("the order formula needs two object variables");
    for (const auto& v : {p, q})
        if (std::find(psi.param_vars.begin(), psi.param_vars.end(), v) != psi.param_vars.end())
            throw Error("variable " + v + " clashes with a parameter");
    std::set<std::string> avoid = names_in(psi);
    avoid.insert(p);
    avoid.insert(q);
    std::string w = take_fresh("w", avoid);
    return forall_in(w, witnesses, implies(instantiate(psi, {q, w}), instantiate(psi, {p, w})));
}

DefinableOrder definable_order(const FiniteStructure& s, const std::string& A, const std::string& B,
                               const PartitionedFormula& psi, const Tuple& params) {
    std::set<std::string> avoid = names_in(psi);
    DefinableOrder out;
    out.vars = {take_fresh("p", avoid), take_fresh("q", avoid)};
    out.formula = order_formula(psi, B, out.vars[0], out.vars[1]);
    s.relation(B);
    std::vector<Element> dom(s.relation(A).flat().begin(), s.relation(A).flat().end());
    out.relation = pairs_on(s, out.formula, out.vars, dom, param_assignment(psi, params));

    std::set<ElementPair> rel(out.relation.begin(), out.relation.end());
    bool total = true;
    for (Element a : dom)
        for (Element b : dom) {
            const bool ab = rel.count({a, b}), ba = rel.count({b, a});
            if (a == b ? !ab : (ab == ba)) total = false; // reflexive, antisymmetric and total
            if (!ab) continue;
            for (Element c : dom)
                if (rel.count({b, c}) && !rel.count({a, c})) total = false;
        }
    out.total = total;
    if (total) {
        out.chain = dom;
        std::sort(out.chain.begin(), out.chain.end(),
                  [&](Element a, Element b) { return a != b && rel.count({a, b}); });
    }
    return out;
}

DefinableEquivalence definable_equivalence(const FiniteStructure& s, const std::string& A, const std::string& B,
                                           const PartitionedFormula& phi, const Tuple& params) {
    if (phi.object_vars.size() != 2) throw Error("the equivalence formula needs two object variables");
    std::set<std::string> avoid = names_in(phi);
    DefinableEquivalence out;
    out.vars = {take_fresh("p", avoid), take_fresh("q", avoid)};
    std::string w = take_fresh("w", avoid);
    out.formula = exists_in(w, B, conj(instantiate(phi, {out.vars[0], w}), instantiate(phi, {out.vars[1], w})));
    s.relation(B);
    std::vector<Element> dom(s.relation(A).flat().begin(), s.relation(A).flat().end());
    out.relation = pairs_on(s, out.formula, out.vars, dom, param_assignment(phi, params));

    std::set<ElementPair> rel(out.relation.begin(), out.relation.end());
    bool eqv = true;
    for (Element a : dom)
        for (Element b : dom) {
            if (a == b && !rel.count({a, b})) eqv = false;
            if (!rel.count({a, b})) continue;
            if (!rel.count({b, a})) eqv = false;
            for (Element c : dom)
                if (rel.count({b, c}) && !rel.count({a, c})) eqv = false;
        }
    out.equivalence = eqv;
    if (eqv) {
        std::set<Element> placed;
        for (Element a : dom) {
            if (placed.count(a)) continue;
            std::vector<Element> cls;
            for (Element b : dom)
                if (rel.count({a, b})) {
                    cls.push_back(b);
                    placed.insert(b);
                }
            out.classes.push_back(std::move(cls));
        }
    }
    return out;
}

EquivEmbedding embed_equiv_in_order(std::size_t classes, std::size_t class_size) {
    if (classes == 0 || class_size == 0) throw Error("classes and class size must be positive");
    EquivEmbedding out;
    out.classes = classes;
    out.class_size = class_size;
    const std::size_t n = classes * class_size + classes - 1;
    std::vector<Element> marked;
    for (std::size_t t = 0; t < classes; ++t)
        for (std::size_t o = 0; o < class_size; ++o) {
            Element e = static_cast<Element>(t * (class_size + 1) + o);
            marked.push_back(e);
            out.isomorphism[e] = static_cast<Element>(t * class_size + o);
        }
    out.order = expand(make_linear_order(n), NamedSubset("A", marked));

    const std::string le(kOrderRelation);
    auto lt = [&](const std::string& a, const std::string& b) { return conj(atom(le, {a, b}), neg(eq(a, b))); };
    Formula between = disj(conj(lt("a", "x"), lt("x", "b")), conj(lt("b", "x"), lt("x", "a")));
    out.formula = forall("x", implies(between, atom("A", {"x"})));
    out.vars = {"a", "b"};
    return out;
}

Verdict verify_equiv_embedding(const EquivEmbedding& e) {
    const Relation& marks = e.order.relation("A");
    std::vector<Element> dom(marks.flat().begin(), marks.flat().end());
    FiniteStructure target = make_equiv(e.classes, e.class_size);
    if (e.isomorphism.size() != dom.size() || dom.size() != target.universe_size())
        return Verdict::fail("isomorphism does not cover the marked points");
    std::set<Element> image;
    for (Element a : dom) {
        auto it = e.isomorphism.find(a);
        if (it == e.isomorphism.end()) return Verdict::fail("marked point " + std::to_string(a) + " is unmapped");
        image.insert(it->second);
    }
    if (image.size() != dom.size() || *image.rbegin() >= target.universe_size())
        return Verdict::fail("isomorphism is not a bijection onto the equivalence structure");

    std::vector<Tuple> mapped;
    for (const auto& [a, b] : pairs_on(e.order, e.formula, e.vars, dom, {}))
        mapped.push_back({e.isomorphism.at(a), e.isomorphism.at(b)});
    Relation defined(target.universe_size(), 2, std::move(mapped));
    const Relation& want = target.relation(kEquivRelation);
    if (defined == want) return Verdict::pass();
    for (std::size_t i = 0; i < want.size(); ++i)
        if (!defined.contains(want.tuple(i))) {
            Tuple t(want.tuple(i).begin(), want.tuple(i).end());
            return Verdict::fail("tuple " + tuple_to_string(t) + " is missing from the defined relation");
        }
    for (std::size_t i = 0; i < defined.size(); ++i)
        if (!want.contains(defined.tuple(i))) {
            Tuple t(defined.tuple(i).begin(), defined.tuple(i).end());
            return Verdict::fail("tuple " + tuple_to_string(t) + " is not in the equivalence");
        }
    return Verdict::fail("defined relation differs");
}

} // namespace mwb
