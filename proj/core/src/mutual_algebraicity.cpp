#include <mwb/mutual_algebraicity.hpp>

#include <algorithm>
#include <set>

namespace mwb {

std::size_t multiplicity(const Relation& y) { return y.max_occurrences(); }

bool is_constant(std::span<const Element> t) {
    return std::adjacent_find(t.begin(), t.end(), std::not_equal_to<>()) == t.end();
}

Relation diagonal_excess(const Relation& y) {
    if (y.arity() < 2) throw Error("the diagonal excess needs arity at least 2");
    std::vector<Tuple> keep;
    for (std::size_t i = 0; i < y.size(); ++i) {
        auto t = y.tuple(i);
        if (!is_constant(t)) keep.emplace_back(t.begin(), t.end());
    }
    return Relation(y.universe_size(), y.arity(), std::move(keep));
}

MonadicPresentation canonical_monadic_presentation(const Relation& y) {
    const std::size_t k = y.arity();
    MonadicPresentation out;
    for (std::size_t j = 0; j < k; ++j) out.variables.push_back("x" + std::to_string(j + 1));

    std::set<Element> support;
    std::vector<Element> diagonal;
    std::vector<Formula> disjuncts;
    for (std::size_t i = 0; i < y.size(); ++i) {
        auto t = y.tuple(i);
        if (k >= 2 && !is_constant(t)) {
            ++out.excess;
            std::vector<Formula> parts;
            for (std::size_t j = 0; j < k; ++j) {
                support.insert(t[j]);
                parts.push_back(atom("U_" + std::to_string(t[j]), {out.variables[j]}));
            }
            disjuncts.push_back(conj(std::move(parts)));
        } else {
            diagonal.push_back(t[0]);
        }
    }
    if (!diagonal.empty()) {
        std::vector<Formula> parts;
        for (std::size_t j = 1; j < k; ++j) parts.push_back(eq(out.variables[0], out.variables[j]));
        parts.push_back(atom("Z", {out.variables[0]}));
        disjuncts.push_back(conj(std::move(parts)));
    }
    out.formula = disj(std::move(disjuncts));
    for (Element e : support) out.predicates.emplace_back("U_" + std::to_string(e), std::vector<Element>{e});
    out.predicates.emplace_back("Z", std::move(diagonal));
    return out;
}

FiniteStructure presentation_structure(std::size_t n, const MonadicPresentation& p) {
    return expand(FiniteStructure(n), p.predicates);
}

Tuple DisjointFamily::original(std::size_t member) const {
    const Tuple& m = members.at(member);
    Tuple out(m.size());
    for (std::size_t p = 0; p < m.size(); ++p) out[coordinate_permutation[p]] = m[p];
    return out;
}

std::vector<Element> DisjointFamily::first_coordinates() const {
    std::vector<Element> out;
    for (const auto& m : members) out.push_back(m[0]);
    return out;
}

DisjointFamily extract_disjoint_family(const Relation& y, bool isolated) {
    const std::size_t k = y.arity();
    if (k < 2) throw Error("a disjoint family needs arity at least 2");

    std::size_t best_i = 0, best_j = 1, best = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            std::size_t c = 0;
            for (std::size_t t = 0; t < y.size(); ++t)
                if (y.tuple(t)[i] != y.tuple(t)[j]) ++c;
            if (c > best) {
                best = c;
                best_i = i;
                best_j = j;
            }
        }
    if (best == 0) throw Error("relation has no off-diagonal tuples");

    DisjointFamily fam;
    fam.coordinate_permutation = {best_i, best_j};
    for (std::size_t c = 0; c < k; ++c)
        if (c != best_i && c != best_j) fam.coordinate_permutation.push_back(c);
    fam.candidate_pool = best;
    fam.isolated = isolated;
    fam.multiplicity = multiplicity(y);
    fam.size_bound = std::max<std::size_t>(1, best / (k * fam.multiplicity));

    std::vector<Tuple> candidates;
    for (std::size_t t = 0; t < y.size(); ++t) {
        auto src = y.tuple(t);
        if (src[best_i] == src[best_j]) continue;
        Tuple permuted(k);
        for (std::size_t p = 0; p < k; ++p) permuted[p] = src[fam.coordinate_permutation[p]];
        candidates.push_back(std::move(permuted));
    }
    std::sort(candidates.begin(), candidates.end());

    std::vector<bool> in_support(y.universe_size(), false);
    std::vector<bool> in_candidate(y.universe_size(), false);
    for (const Tuple& c : candidates) {
        if (std::any_of(c.begin(), c.end(), [&](Element e) { return in_support[e]; })) continue;
        Tuple orig(k);
        for (std::size_t p = 0; p < k; ++p) orig[fam.coordinate_permutation[p]] = c[p];
        for (Element e : c) in_candidate[e] = true;
        bool clean = true;
        for (Element e : c) {
            if (!isolated) break;
            for (std::uint32_t id : y.occurrences(e)) {
                auto t = y.tuple(id);
                if (std::equal(t.begin(), t.end(), orig.begin())) continue;
                if (std::all_of(t.begin(), t.end(), [&](Element v) { return in_support[v] || in_candidate[v]; })) {
                    clean = false;
                    break;
                }
            }
            if (!clean) break;
        }
        for (Element e : c) in_candidate[e] = false;
        if (!clean) continue;
        for (Element e : c) in_support[e] = true;
        fam.members.push_back(c);
        fam.pairing[c[0]] = c[1];
    }
    for (Element e = 0; e < y.universe_size(); ++e)
        if (in_support[e]) fam.support.push_back(e);
    return fam;
}

Verdict certify_disjoint_family(const Relation& y, const DisjointFamily& family) {
    const std::size_t k = y.arity();
    std::vector<std::size_t> perm = family.coordinate_permutation;
    std::sort(perm.begin(), perm.end());
    for (std::size_t p = 0; p < perm.size(); ++p)
        if (perm.size() != k || perm[p] != p) return Verdict::fail("coordinate permutation is not a permutation");

    std::map<Element, std::size_t> owner;
    for (std::size_t m = 0; m < family.members.size(); ++m) {
        const Tuple& t = family.members[m];
        if (t.size() != k) return Verdict::fail("member " + std::to_string(m) + " has the wrong width");
        if (t[0] == t[1]) return Verdict::fail("member " + tuple_to_string(t) + " has equal first coordinates");
        if (!y.contains(family.original(m)))
            return Verdict::fail("member " + tuple_to_string(t) + " is not in the relation");
        for (Element e : std::set<Element>(t.begin(), t.end())) {
            auto [it, fresh] = owner.emplace(e, m);
            if (!fresh)
                return Verdict::fail("members " + std::to_string(it->second) + " and " + std::to_string(m) +
                                     " share element " + std::to_string(e));
        }
        auto pit = family.pairing.find(t[0]);
        if (pit == family.pairing.end() || pit->second != t[1])
            return Verdict::fail("pairing disagrees with member " + tuple_to_string(t));
    }
    if (family.pairing.size() != family.members.size()) return Verdict::fail("pairing has extra entries");

    std::vector<Element> support;
    for (const auto& [e, m] : owner) support.push_back(e);
    if (support != family.support) return Verdict::fail("support is not the union of the members");

    if (family.isolated) return check_isolation(y, family);
    return Verdict::pass();
}

Verdict check_isolation(const Relation& y, const DisjointFamily& family) {
    std::vector<bool> in_support(y.universe_size(), false);
    for (Element e : family.support) in_support.at(e) = true;
    std::set<Tuple> originals;
    for (std::size_t m = 0; m < family.members.size(); ++m) originals.insert(family.original(m));
    for (std::size_t id = 0; id < y.size(); ++id) {
        auto t = y.tuple(id);
        if (!std::all_of(t.begin(), t.end(), [&](Element v) { return in_support[v]; })) continue;
        Tuple tt(t.begin(), t.end());
        if (!originals.count(tt)) return Verdict::fail("tuple " + tuple_to_string(tt) + " lies inside the support");
    }
    return Verdict::pass();
}

UnionMultiplicityReport union_multiplicity_check(const FiniteStructure& a, const FiniteStructure& b) {
    FiniteStructure both = overlay_union(a, b);
    UnionMultiplicityReport out;
    for (int operand = 1; operand <= 2; ++operand) {
        const FiniteStructure& src = operand == 1 ? a : b;
        for (const auto& [name, rel] : src.relations()) {
            MultiplicityEntry e{name, operand, multiplicity(rel), multiplicity(both.relation(name))};
            out.preserved = out.preserved && e.before == e.after;
            out.entries.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace mwb
