#pragma once

#include <mwb/formula.hpp>
#include <mwb/structure.hpp>

#include <map>
#include <vector>

namespace mwb {

/// Largest number of tuples of `y` sharing one element; 0 when empty.
std::size_t multiplicity(const Relation& y);

bool is_constant(std::span<const Element> t);

/// `y` without its constant tuples. Throws Error for unary relations,
/// where the notion is vacuous.
Relation diagonal_excess(const Relation& y);

/// Unary predicates plus a formula in x1..xk whose solution set in the
/// edgeless structure expanded by the predicates is exactly `y`. One
/// singleton predicate U_<e> per element e of an off-diagonal tuple, and
/// Z for the elements whose constant tuple lies in `y`.
struct MonadicPresentation {
    std::vector<NamedSubset> predicates;
    std::vector<std::string> variables;
    Formula formula = top();
    /// Number of off-diagonal tuples.
    std::size_t excess = 0;
};

MonadicPresentation canonical_monadic_presentation(const Relation& y);

/// The edgeless structure on n elements expanded by the predicates.
FiniteStructure presentation_structure(std::size_t n, const MonadicPresentation& p);

/// Pairwise disjoint tuples of `y`, all with distinct first two
/// coordinates after `coordinate_permutation` is applied. When `isolated`
/// is set, the members are also the only tuples of `y` inside their union.
struct DisjointFamily {
    /// Position p of a member holds original coordinate
    /// coordinate_permutation[p].
    std::vector<std::size_t> coordinate_permutation;
    std::vector<Tuple> members;
    /// Union of the members, sorted.
    std::vector<Element> support;
    /// First coordinate -> second coordinate, per member.
    std::map<Element, Element> pairing;
    /// Off-diagonal tuples whose chosen coordinates differ.
    std::size_t candidate_pool = 0;
    std::size_t multiplicity = 0;
    /// max(1, candidate_pool / (k * multiplicity)).
    std::size_t size_bound = 0;
    bool isolated = false;

    /// A member in the original coordinate order.
    Tuple original(std::size_t member) const;
    /// First coordinates of the members, in member order.
    std::vector<Element> first_coordinates() const;
};

/// Greedy extraction in lexicographic order over the permuted tuples.
/// The coordinate pair is the one with the most tuples differing on it,
/// ties going to the smallest pair. Throws Error for unary relations or
/// when every tuple is constant.
///
/// A plain family always reaches size_bound. An isolated family also
/// rejects candidates that would pull another tuple of `y` inside the
/// support; it can come out smaller, even empty.
DisjointFamily extract_disjoint_family(const Relation& y, bool isolated = false);

/// Checks membership, distinct first coordinates, disjointness, the
/// pairing and the support; plus isolation when the family claims it.
Verdict certify_disjoint_family(const Relation& y, const DisjointFamily& family);

/// Whether every tuple of `y` inside the support is a member.
Verdict check_isolation(const Relation& y, const DisjointFamily& family);

struct MultiplicityEntry {
    std::string relation;
    int operand = 1;
    std::size_t before = 0;
    std::size_t after = 0;
};

struct UnionMultiplicityReport {
    std::vector<MultiplicityEntry> entries;
    bool preserved = true;
};

/// Multiplicity of every relation before and after overlay_union.
UnionMultiplicityReport union_multiplicity_check(const FiniteStructure& a, const FiniteStructure& b);

} // namespace mwb
