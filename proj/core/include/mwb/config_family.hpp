#pragma once

#include <mwb/detectors.hpp>

#include <optional>
#include <span>
#include <vector>

namespace mwb {

/// Stable rows satisfy phi(b_k, a_ij) iff k = i; unstable rows iff k <= i.
enum class ConfigKind { Stable, Unstable };

std::string_view to_string(ConfigKind k);
ConfigKind config_kind_from_string(std::string_view s);

struct ConfigLevel {
    std::size_t n = 0;
    /// Values for the parameter variables after the first (the z block).
    Tuple params;
    std::vector<Element> spine;
    /// Row-major: a_ij is matrix[i * n + j].
    std::vector<Element> matrix;

    Element a(std::size_t i, std::size_t j) const { return matrix.at(i * n + j); }
    Element b(std::size_t k) const { return spine.at(k); }
    /// Spine and matrix elements, sorted.
    std::vector<Element> elements() const;
    friend bool operator==(const ConfigLevel&, const ConfigLevel&) = default;
};

struct ConfigFamily {
    ConfigKind kind = ConfigKind::Stable;
    std::vector<ConfigLevel> levels;
    /// Elements in no level, sorted.
    std::vector<Element> exceptional;

    /// Throws Error when no level has size n.
    const ConfigLevel& level(std::size_t n) const;
    friend bool operator==(const ConfigFamily&, const ConfigFamily&) = default;
};

struct ConfigSearchOptions {
    ConfigKind kind = ConfigKind::Stable;
    std::vector<std::size_t> levels;
    std::uint64_t budget = kUnlimitedBudget;
    /// Minimum size demanded of the exceptional set.
    std::size_t exceptional_reserve = 0;
};

struct ConfigOutcome {
    std::optional<ConfigFamily> family;
    bool exhaustive = false;
    std::uint64_t work = 0;
};

/// `pf` must have one object variable x and at least one parameter; the
/// first parameter ranges over the matrix, the rest are the per-level
/// parameters. Levels are searched largest first with used elements
/// masked, so all levels come out pairwise disjoint. Within a level the
/// search takes the lexicographically least parameters, then the least
/// spine, then the least n entries per row.
ConfigOutcome find_config_family(const FiniteStructure& s, const PartitionedFormula& pf,
                                 const ConfigSearchOptions& options);

/// Independent re-check of every family invariant with a fresh evaluator.
Verdict certify_config_family(const FiniteStructure& s, const PartitionedFormula& pf, const ConfigFamily& family);

/// The sub-configuration on the indices in `subset` (rows, columns and
/// spine alike). Indices must be increasing and below level.n.
ConfigLevel restrict_level(const ConfigLevel& level, std::span<const std::size_t> subset);

} // namespace mwb
