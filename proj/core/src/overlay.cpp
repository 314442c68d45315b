#include <mwb/overlay.hpp>

#include <algorithm>
#include <set>

namespace mwb {

std::string_view to_string(OverlayVariant v) { return v == OverlayVariant::Prop1 ? "prop1" : "prop2"; }

OverlayVariant overlay_variant_from_string(std::string_view s) {
    if (s == "prop1") return OverlayVariant::Prop1;
    if (s == "prop2") return OverlayVariant::Prop2;
    throw Error("unknown overlay variant '" + std::string(s) + "'");
}

namespace {

/// Partial injective map grown constraint by constraint, completed in
/// increasing order.
class SigmaBuilder {
public:
    explicit SigmaBuilder(std::size_t n) : image_(n), used_(n, false) {}

    bool target_used(Element to) const { return used_.at(to); }

    void assign(Element from, Element to) {
        if (from >= image_.size() || to >= image_.size()) throw Error("constraint mentions an element outside the universe");
        if (image_[from]) {
            if (*image_[from] == to) return;
            throw Error("constraint conflict: element " + std::to_string(from) + " is sent to both " +
                        std::to_string(*image_[from]) + " and " + std::to_string(to));
        }
        if (used_[to]) throw Error("constraint conflict: target " + std::to_string(to) + " is hit twice");
        image_[from] = to;
        used_[to] = true;
    }

    Permutation complete() const {
        std::vector<Element> map(image_.size());
        Element next = 0;
        for (std::size_t e = 0; e < image_.size(); ++e) {
            if (image_[e]) {
                map[e] = *image_[e];
                continue;
            }
            while (used_[next]) ++next;
            map[e] = next++;
        }
        return Permutation(std::move(map));
    }

private:
    std::vector<std::optional<Element>> image_;
    std::vector<bool> used_;
};

const ConfigLevel& matching_level(const ConfigFamily& left, std::size_t n) {
    for (const auto& l : left.levels)
        if (l.n == n) return l;
    throw Error("level-size mismatch: the left family has no level " + std::to_string(n));
}

std::vector<const ConfigLevel*> by_size(const ConfigFamily& f) {
    std::vector<const ConfigLevel*> out;
    for (const auto& l : f.levels) out.push_back(&l);
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->n < b->n; });
    return out;
}

std::set<std::string> names_in(const PartitionedFormula& pf) {
    std::set<std::string> out = pf.formula.all_variables();
    out.insert(pf.object_vars.begin(), pf.object_vars.end());
    out.insert(pf.param_vars.begin(), pf.param_vars.end());
    return out;
}

std::string take_fresh(const std::string& base, std::set<std::string>& avoid) {
    std::string v = fresh_variable(base, avoid);
    avoid.insert(v);
    return v;
}

std::vector<Element> mapped(const Permutation& sigma, const std::vector<Element>& xs) {
    std::vector<Element> out;
    for (Element e : xs) out.push_back(sigma(e));
    return out;
}

Tuple mapped(const Permutation& sigma, const Tuple& xs, int) {
    Tuple out;
    for (Element e : xs) out.push_back(sigma(e));
    return out;
}

void check_universes(const FiniteStructure& left, const FiniteStructure& right) {
    if (left.universe_size() != right.universe_size())
        throw Error("structures have universes of size " + std::to_string(left.universe_size()) + " and " +
                    std::to_string(right.universe_size()));
}

/// Fills the report's solution and verdict from theta over the whole universe.
void certify_theta(ThetaReport& r) {
    r.solution = solution_set(r.expanded, r.theta, r.vars, r.params);
    for (const Tuple& t : r.solution) {
        if (!r.domain_left.contains(t[0]) || !r.domain_right.contains(t[1]) || !r.target.contains(t[2])) {
            r.verdict = false;
            r.diagnosis = "solution " + tuple_to_string(t) + " lies outside " + r.domain_left.name + " x " +
                          r.domain_right.name + " x " + r.target.name;
            return;
        }
    }
    BijectionCheck c = check_bijection_graph(r.domain_left.members, r.domain_right.members, r.target.members,
                                             r.solution);
    r.verdict = c.ok;
    r.diagnosis = c.diagnosis;
}

class PredicateNamer {
public:
    explicit PredicateNamer(const FiniteStructure& s) {
        for (const auto& name : s.relation_names()) taken_.insert(name);
    }
    std::string operator()(const std::string& base) { return take_fresh(base, taken_); }

private:
    std::set<std::string> taken_;
};

} // namespace

Permutation build_sigma_prop1(const ConfigFamily& left, const ConfigFamily& right, std::size_t universe) {
    SigmaBuilder b(universe);
    std::size_t spines = 0;
    for (const auto& r : right.levels) {
        const ConfigLevel& l = matching_level(left, r.n);
        for (std::size_t i = 0; i < r.n; ++i)
            for (std::size_t j = 0; j < r.n; ++j) b.assign(r.a(i, j), l.a(j, i));
        spines += r.n;
    }
    std::vector<Element> room;
    for (Element x : left.exceptional)
        if (x < universe && !b.target_used(x)) room.push_back(x);
    if (room.size() < spines)
        throw Error("insufficient exceptional room: " + std::to_string(spines) + " spine elements but only " +
                    std::to_string(room.size()) + " free exceptional elements");
    std::size_t next = 0;
    for (const auto& r : right.levels)
        for (Element d : r.spine) b.assign(d, room[next++]);
    return b.complete();
}

Permutation build_sigma_prop2(const ConfigFamily& left, const DisjointFamily& family, std::size_t universe) {
    SigmaBuilder b(universe);
    std::size_t needed = 0;
    for (const auto& l : left.levels) needed += l.n * (l.n - 1) / 2;
    if (family.members.size() < needed)
        throw Error("family too small: " + std::to_string(needed) + " pairs needed, " +
                    std::to_string(family.members.size()) + " available");
    std::size_t next = 0;
    for (const ConfigLevel* l : by_size(left))
        for (std::size_t i = 0; i < l->n; ++i)
            for (std::size_t j = i + 1; j < l->n; ++j) {
                const Tuple& m = family.members[next++];
                b.assign(m[0], l->a(i, j));
                b.assign(m[1], l->a(j, i));
            }
    return b.complete();
}

Verdict check_sigma_prop1(const ConfigFamily& left, const ConfigFamily& right, const Permutation& sigma) {
    for (const auto& r : right.levels) {
        const ConfigLevel* l = nullptr;
        for (const auto& cand : left.levels)
            if (cand.n == r.n) l = &cand;
        if (!l) return Verdict::fail("left family has no level " + std::to_string(r.n));
        for (std::size_t i = 0; i < r.n; ++i)
            for (std::size_t j = 0; j < r.n; ++j)
                if (sigma(r.a(i, j)) != l->a(j, i))
                    return Verdict::fail("sigma(c" + std::to_string(i) + std::to_string(j) + ") is not a" +
                                         std::to_string(j) + std::to_string(i) + " at level " + std::to_string(r.n));
        for (Element d : r.spine)
            if (!std::binary_search(left.exceptional.begin(), left.exceptional.end(), sigma(d)))
                return Verdict::fail("spine element " + std::to_string(d) + " is not sent into the exceptional set");
    }
    return Verdict::pass();
}

Verdict check_sigma_prop2(const ConfigFamily& left, const DisjointFamily& family, const Permutation& sigma) {
    std::size_t next = 0;
    for (const ConfigLevel* l : by_size(left))
        for (std::size_t i = 0; i < l->n; ++i)
            for (std::size_t j = i + 1; j < l->n; ++j) {
                if (next >= family.members.size()) return Verdict::fail("family too small");
                const Tuple& m = family.members[next++];
                if (sigma(m[0]) != l->a(i, j) || sigma(m[1]) != l->a(j, i))
                    return Verdict::fail("member " + tuple_to_string(m) + " is not sent to (a" + std::to_string(i) +
                                         std::to_string(j) + ", a" + std::to_string(j) + std::to_string(i) +
                                         ") at level " + std::to_string(l->n));
            }
    return Verdict::pass();
}

FiniteStructure combine(const FiniteStructure& left, const FiniteStructure& right, const Permutation& sigma) {
    return overlay_union(left, apply_permutation(right, sigma));
}

OverlayPlan plan_prop1(FiniteStructure left, PartitionedFormula left_phi, ConfigFamily left_family,
                       FiniteStructure right, PartitionedFormula right_phi, ConfigFamily right_family) {
    check_universes(left, right);
    Permutation sigma = build_sigma_prop1(left_family, right_family, left.universe_size());
    if (Verdict v = check_sigma_prop1(left_family, right_family, sigma); !v) throw Error(v.reason);
    FiniteStructure combined = combine(left, right, sigma);
    return OverlayPlan{OverlayVariant::Prop1,
                       std::move(left),
                       std::move(left_phi),
                       std::move(left_family),
                       std::move(right),
                       std::move(right_phi),
                       std::move(right_family),
                       {},
                       std::nullopt,
                       std::move(sigma),
                       std::move(combined)};
}

OverlayPlan plan_prop2(FiniteStructure left, PartitionedFormula left_phi, ConfigFamily left_family,
                       FiniteStructure right, std::string relation, DisjointFamily family) {
    check_universes(left, right);
    const Relation& y = right.relation(relation);
    if (Verdict v = certify_disjoint_family(y, family); !v) throw Error("disjoint family: " + v.reason);
    if (Verdict v = check_isolation(y, family); !v) throw Error("disjoint family is not isolated: " + v.reason);
    Permutation sigma = build_sigma_prop2(left_family, family, left.universe_size());
    if (Verdict v = check_sigma_prop2(left_family, family, sigma); !v) throw Error(v.reason);
    FiniteStructure combined = combine(left, right, sigma);
    return OverlayPlan{OverlayVariant::Prop2,
                       std::move(left),
                       std::move(left_phi),
                       std::move(left_family),
                       std::move(right),
                       std::nullopt,
                       std::nullopt,
                       std::move(relation),
                       std::move(family),
                       std::move(sigma),
                       std::move(combined)};
}

Formula synthesize_phi_star(const FiniteStructure& s, const std::string& spine, const std::string& matrix,
                            const PartitionedFormula& phi, const Tuple& params, ConfigKind kind,
                            const std::string& x, const std::string& y) {
    if (phi.object_vars.size() != 1 || phi.param_vars.empty())
        throw Error("a configuration formula needs one object variable and at least one parameter");
    std::vector<std::string> rest(phi.param_vars.begin() + 1, phi.param_vars.end());
    if (params.size() != rest.size()) throw Error("wrong number of configuration parameters");
    for (const auto& v : {x, y})
        if (std::find(rest.begin(), rest.end(), v) != rest.end())
            throw Error("variable " + v + " clashes with a configuration parameter");

    const std::string& ox = phi.object_vars[0];
    const std::string& oy = phi.param_vars[0];
    auto row = [&](const std::string& a, const std::string& b) { return rename_free(phi.formula, {{ox, a}, {oy, b}}); };
    Formula base = conj({atom(spine, {x}), atom(matrix, {y}), row(x, y)});
    if (kind == ConfigKind::Stable) return base;

    PartitionedFormula psi(phi.formula, {ox, oy}, rest);
    if (!definable_order(s, spine, matrix, psi, params).total)
        throw Error("the order defined on " + spine + " is not total");
    std::set<std::string> avoid = names_in(phi);
    avoid.insert(x);
    avoid.insert(y);
    std::string next = take_fresh(x + "_next", avoid);
    std::string w = take_fresh("w", avoid);
    auto le = [&](const std::string& p, const std::string& q) { return order_formula(psi, matrix, p, q); };
    Formula succ = conj({atom(spine, {next}), le(x, next), neg(eq(x, next)),
                         forall_in(w, spine, implies(conj(le(x, w), neg(eq(w, x))), le(next, w)))});
    return conj(base, forall(next, implies(succ, neg(row(next, y)))));
}

ThetaReport run_overlay(const OverlayPlan& plan, std::size_t level, std::optional<std::size_t> split) {
    ThetaReport r;
    const ConfigLevel& L = plan.left_family.level(level);
    PredicateNamer name(plan.combined);
    std::set<std::string> avoid = names_in(plan.left_phi);
    if (plan.right_phi) {
        auto more = names_in(*plan.right_phi);
        avoid.insert(more.begin(), more.end());
    }
    const std::string u = take_fresh("u", avoid), v = take_fresh("v", avoid), y = take_fresh("y", avoid);
    r.vars = {u, v, y};
    std::vector<std::string> left_rest(plan.left_phi.param_vars.begin() + 1, plan.left_phi.param_vars.end());
    for (std::size_t i = 0; i < left_rest.size(); ++i) r.params[left_rest[i]] = L.params[i];

    if (plan.variant == OverlayVariant::Prop1) {
        if (!plan.right_phi || !plan.right_family) throw Error("prop1 plan lacks its right family");
        const ConfigLevel& R = plan.right_family->level(level);
        NamedSubset B(name("B"), L.spine), D(name("D"), mapped(plan.sigma, R.spine)), A(name("A"), L.matrix);
        r.expanded = expand(plan.combined, std::vector<NamedSubset>{B, D, A});

        // psi's extra parameters are renamed apart from phi's.
        const PartitionedFormula& psi = *plan.right_phi;
        std::map<std::string, std::string> rename;
        std::vector<std::string> psi_params{psi.param_vars[0]};
        Tuple psi_values = mapped(plan.sigma, R.params, 0);
        for (std::size_t i = 1; i < psi.param_vars.size(); ++i) {
            std::string fresh = take_fresh(psi.param_vars[i], avoid);
            rename[psi.param_vars[i]] = fresh;
            psi_params.push_back(fresh);
            r.params[fresh] = psi_values[i - 1];
        }
        PartitionedFormula psi2(rename_free(psi.formula, rename), psi.object_vars, psi_params);

        Formula phi_star = synthesize_phi_star(r.expanded, B.name, A.name, plan.left_phi, L.params,
                                               plan.left_family.kind, u, y);
        Formula psi_star = synthesize_phi_star(r.expanded, D.name, A.name, psi2, psi_values,
                                               plan.right_family->kind, v, y);
        r.theta = conj({atom(B.name, {u}), atom(D.name, {v}), atom(A.name, {y}), phi_star, psi_star});
        r.domain_left = B;
        r.domain_right = D;
        r.target = A;
    } else {
        if (!plan.disjoint) throw Error("prop2 plan lacks its disjoint family");
        const std::size_t n = L.n;
        const std::size_t h = split.value_or(n / 2);
        if (h > n) throw Error("split " + std::to_string(h) + " exceeds level " + std::to_string(n));
        std::vector<Element> lower(L.spine.begin(), L.spine.begin() + static_cast<std::ptrdiff_t>(h));
        std::vector<Element> upper(L.spine.begin() + static_cast<std::ptrdiff_t>(h), L.spine.end());
        std::vector<Element> star;
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = h; j < n; ++j) star.push_back(L.a(i, j));
        NamedSubset B(name("B"), L.spine), A(name("A"), L.matrix), Bm(name("Bminus"), lower), Bp(name("Bplus"), upper),
            As(name("Astar"), star), V(name("V"), mapped(plan.sigma, plan.disjoint->support));
        r.expanded = expand(plan.combined, std::vector<NamedSubset>{B, A, Bm, Bp, As, V});

        const std::string y2 = take_fresh(y + "_pair", avoid);
        const auto& perm = plan.disjoint->coordinate_permutation;
        std::vector<std::string> args(perm.size());
        args[perm[0]] = y;
        args[perm[1]] = y2;
        std::vector<std::string> rest;
        for (std::size_t p = 2; p < perm.size(); ++p) {
            rest.push_back(take_fresh("w" + std::to_string(p), avoid));
            args[perm[p]] = rest.back();
        }
        std::vector<Formula> inner;
        for (const auto& w : rest) inner.push_back(atom(V.name, {w}));
        inner.push_back(atom(plan.relation, args));
        Formula pair = conj(atom(V.name, {y}), atom(V.name, {y2}));
        Formula tail = conj(std::move(inner));
        for (auto it = rest.rbegin(); it != rest.rend(); ++it) tail = exists(*it, tail);
        pair = conj(pair, tail);

        Formula star_u = synthesize_phi_star(r.expanded, B.name, A.name, plan.left_phi, L.params,
                                             plan.left_family.kind, u, y);
        Formula star_v = synthesize_phi_star(r.expanded, B.name, A.name, plan.left_phi, L.params,
                                             plan.left_family.kind, v, y2);
        r.theta = conj({atom(Bm.name, {u}), atom(Bp.name, {v}), atom(As.name, {y}), star_u,
                        exists(y2, conj(pair, star_v))});
        r.domain_left = Bm;
        r.domain_right = Bp;
        r.target = As;
    }
    certify_theta(r);
    return r;
}

RoundTrip roundtrip_inverse(const OverlayPlan& plan) {
    Permutation inv = plan.sigma.inverse();
    RoundTrip out;
    out.restored = apply_permutation(plan.combined, inv);
    for (const auto& [name, rel] : plan.right.relations())
        if (!(out.restored.relation(name) == rel)) {
            out.verdict = Verdict::fail("right relation " + name + " is not restored");
            return out;
        }
    FiniteStructure left_back = apply_permutation(plan.left, inv);
    for (const auto& [name, rel] : left_back.relations())
        if (!(out.restored.relation(name) == rel)) {
            out.verdict = Verdict::fail("left relation " + name + " does not match its sigma^-1 image");
            return out;
        }
    if (out.restored.relations().size() != plan.left.relations().size() + plan.right.relations().size())
        out.verdict = Verdict::fail("restored structure has extra relations");
    return out;
}

} // namespace mwb
