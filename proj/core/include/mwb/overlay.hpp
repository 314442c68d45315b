#pragma once

#include <mwb/coding.hpp>
#include <mwb/config_family.hpp>
#include <mwb/mutual_algebraicity.hpp>

#include <optional>

namespace mwb {

enum class OverlayVariant { Prop1, Prop2 };

std::string_view to_string(OverlayVariant v);
OverlayVariant overlay_variant_from_string(std::string_view s);

/// Two structures on one universe combined through a permutation of the
/// right one. Prop1 pairs two configuration families; prop2 pairs a
/// configuration family with a disjoint family of the right structure's
/// relation `relation`.
struct OverlayPlan {
    OverlayVariant variant = OverlayVariant::Prop1;
    FiniteStructure left{1};
    PartitionedFormula left_phi;
    ConfigFamily left_family;
    FiniteStructure right{1};
    std::optional<PartitionedFormula> right_phi;
    std::optional<ConfigFamily> right_family;
    std::string relation;
    std::optional<DisjointFamily> disjoint;
    /// Right universe -> combined universe.
    Permutation sigma = Permutation::identity(1);
    FiniteStructure combined{1};
};

/// sigma(c_ij) = a_ji for every level shared by both families, the right
/// spines go to the first free elements of the left exceptional set, and
/// every other element is matched in increasing order. Throws Error when a
/// right level has no left level of the same size or the exceptional set
/// is too small.
Permutation build_sigma_prop1(const ConfigFamily& left, const ConfigFamily& right, std::size_t universe);

/// Levels in increasing size; for each i < j < n the next member l gets
/// sigma(gamma_l) = a_ij and sigma(f(gamma_l)) = a_ji. Throws Error when
/// the family is too small or two constraints collide.
Permutation build_sigma_prop2(const ConfigFamily& left, const DisjointFamily& family, std::size_t universe);

/// Pointwise re-check of the constraint families.
Verdict check_sigma_prop1(const ConfigFamily& left, const ConfigFamily& right, const Permutation& sigma);
Verdict check_sigma_prop2(const ConfigFamily& left, const DisjointFamily& family, const Permutation& sigma);

/// Builds sigma and the combined structure. The structures must share a
/// universe size and have disjoint signatures.
OverlayPlan plan_prop1(FiniteStructure left, PartitionedFormula left_phi, ConfigFamily left_family,
                       FiniteStructure right, PartitionedFormula right_phi, ConfigFamily right_family);

/// Also throws Error unless the family is isolated in the relation.
OverlayPlan plan_prop2(FiniteStructure left, PartitionedFormula left_phi, ConfigFamily left_family,
                       FiniteStructure right, std::string relation, DisjointFamily family);

/// Rebuilds the combined structure from left, right and sigma.
FiniteStructure combine(const FiniteStructure& left, const FiniteStructure& right, const Permutation& sigma);

/// phi*(x, y): row x of the configuration, as a formula over `s`, which
/// must carry the unary relations `spine` and `matrix` for one level.
/// Stable: spine(x) & matrix(y) & phi. Unstable additionally requires
/// !phi(x', y) for the successor x' of x in the order defined on the
/// spine. phi's object variable and first parameter become `x` and `y`;
/// the remaining parameters stay free. Throws Error for the unstable
/// kind when that order is not total on the spine.
Formula synthesize_phi_star(const FiniteStructure& s, const std::string& spine, const std::string& matrix,
                            const PartitionedFormula& phi, const Tuple& params, ConfigKind kind,
                            const std::string& x, const std::string& y);

struct ThetaReport {
    Formula theta = top();
    /// Free object variables of theta: (u, v, y).
    std::vector<std::string> vars;
    NamedSubset domain_left;
    NamedSubset domain_right;
    NamedSubset target;
    /// Every (u, v, y) over the whole universe satisfying theta.
    std::vector<Tuple> solution;
    bool verdict = false;
    std::string diagnosis;
    /// Kept for report compatibility; level-n families need no truncation.
    std::vector<std::size_t> boundary_exclusions;
    /// The combined structure with the predicates theta mentions.
    FiniteStructure expanded{1};
    Assignment params;
};

/// `split` only matters for prop2 and defaults to n / 2.
ThetaReport run_overlay(const OverlayPlan& plan, std::size_t level, std::optional<std::size_t> split = {});

struct RoundTrip {
    FiniteStructure restored{1};
    Verdict verdict;
};

/// sigma^-1 applied to the combined structure: the right relations must
/// come back unchanged and the left ones must equal sigma^-1 of the left
/// structure.
RoundTrip roundtrip_inverse(const OverlayPlan& plan);

} // namespace mwb
