#pragma once

#include <mwb/structure.hpp>

#include <cstdint>
#include <string_view>

namespace mwb {

// Relation names used by the generators below.
inline constexpr std::string_view kOrderRelation = "LE";
inline constexpr std::string_view kEquivRelation = "E";
inline constexpr std::string_view kGraphRelation = "E";
inline constexpr std::string_view kMarkRelation = "P";
inline constexpr std::string_view kMembershipRelation = "IN";
inline constexpr std::string_view kHalfGraphRelation = "H";
inline constexpr std::string_view kMatchingRelation = "Y";

/// Reflexive total order LE on {0..n-1}.
FiniteStructure make_linear_order(std::size_t n);

/// Equivalence relation E on c*s elements; class i is {i*s .. i*s+s-1}.
FiniteStructure make_equiv(std::size_t classes, std::size_t class_size);

/// Symmetric irreflexive E, each pair kept with probability p. The
/// coin for pair (i<j) is drawn in lexicographic pair order from a
/// 64-bit Mersenne twister seeded with `seed`.
FiniteStructure make_random_graph(std::size_t n, double p, std::uint64_t seed);

/// make_equiv(c, c+1) expanded by P holding the first i+1 elements of
/// class i.
FiniteStructure make_fcp_expansion(std::size_t classes);

/// n atoms {0..n-1} followed by 2^n codes; IN(atom, n+s) iff bit atom of s
/// is set.
FiniteStructure make_powerset(std::size_t atoms);

/// Half-graph on 2n elements: alpha_i = i, beta_j = n+j, H(alpha_i, beta_j)
/// iff i <= j, with unary predicates A = {alpha} and B = {beta}.
FiniteStructure make_half_graph(std::size_t n);

/// Binary relation Y = {(2i, 2i+1) : i < pairs} over `universe` elements.
FiniteStructure make_matching(std::size_t pairs, std::size_t universe);

} // namespace mwb
