#pragma once

#include <mwb/evaluator.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace mwb {

inline constexpr std::uint64_t kUnlimitedBudget = std::numeric_limits<std::uint64_t>::max();

enum class WitnessKind { Fcp, Order, Independence };

std::string_view to_string(WitnessKind k);
WitnessKind witness_kind_from_string(std::string_view s);

/// One solving object tuple. `label` is the cut k (order), the subset
/// bitmask s over [n] (independence) or the omitted index l (FCP).
struct Certificate {
    std::uint64_t label = 0;
    Tuple solution;
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct WitnessReport {
    WitnessKind kind = WitnessKind::Order;
    std::size_t level = 0;
    std::vector<Tuple> parameter_tuples;
    std::vector<Certificate> certificates;
    friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

/// `witness` is empty when nothing was found. `exhaustive` is true when
/// the whole search space was covered, so an empty witness is a proof of
/// absence at that level. `work` counts point evaluations of the formula
/// plus search nodes expanded; the budget caps it.
struct SearchOutcome {
    std::optional<WitnessReport> witness;
    bool exhaustive = false;
    std::uint64_t work = 0;
};

/// Parameter sequences <a_i : i < n> (pairwise distinct) such that each
/// cut k < n has x with phi(x, a_i) exactly for i < k. Sequences are
/// tried in lexicographic order, so the first hit is the least witness.
SearchOutcome find_order_witness(const FiniteStructure& s, const PartitionedFormula& pf, std::size_t level,
                                 std::uint64_t budget = kUnlimitedBudget);

/// Sequences that every subset s of [n] cuts out: some x satisfies
/// phi(x, a_i) exactly for i in s. Parameters are reported in increasing
/// lexicographic order (the pattern is symmetric in the indices).
SearchOutcome find_independence_witness(const FiniteStructure& s, const PartitionedFormula& pf, std::size_t level,
                                        std::uint64_t budget = kUnlimitedBudget);

/// Sequences whose n-fold conjunction is unsatisfiable while every
/// (n-1)-fold sub-conjunction is satisfiable.
SearchOutcome find_fcp_witness(const FiniteStructure& s, const PartitionedFormula& pf, std::size_t level,
                               std::uint64_t budget = kUnlimitedBudget);

SearchOutcome find_witness(WitnessKind kind, const FiniteStructure& s, const PartitionedFormula& pf,
                           std::size_t level, std::uint64_t budget = kUnlimitedBudget);

/// Re-checks a report with a fresh evaluator; nothing from the search is
/// trusted.
Verdict certify(const FiniteStructure& s, const PartitionedFormula& pf, const WitnessReport& report);

/// Restriction of an order or independence witness to its first `level`
/// parameters.
WitnessReport truncate(const WitnessReport& report, std::size_t level);

} // namespace mwb
