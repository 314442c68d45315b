#pragma once

#include <mwb/common.hpp>

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mwb {

/// A duplicate-free set of k-tuples over {0..n-1}.
///
/// Tuples are kept sorted lexicographically in one flat buffer. An
/// element index (element -> ids of the tuples mentioning it) backs the
/// per-element counts used by multiplicity and family extraction, and a
/// dense membership bitmap is kept whenever n^k is small enough.
class Relation {
public:
    /// Throws Error on arity 0, out-of-range entries, wrong tuple width
    /// or duplicate tuples.
    Relation(std::size_t universe_size, std::size_t arity, std::vector<Tuple> tuples);

    /// Same as the constructor but silently drops duplicates.
    static Relation deduplicated(std::size_t universe_size, std::size_t arity,
                                 std::vector<Tuple> tuples);

    std::size_t universe_size() const noexcept { return universe_size_; }
    std::size_t arity() const noexcept { return arity_; }
    std::size_t size() const noexcept { return arity_ == 0 ? 0 : data_.size() / arity_; }
    bool empty() const noexcept { return data_.empty(); }

    std::span<const Element> tuple(std::size_t id) const {
        return {data_.data() + id * arity_, arity_};
    }
    std::vector<Tuple> tuples() const;

    bool contains(std::span<const Element> t) const;
    bool contains(std::initializer_list<Element> t) const {
        return contains(std::span<const Element>(t.begin(), t.size()));
    }

    /// Ids of the tuples that mention `e` (each tuple listed once).
    std::span<const std::uint32_t> occurrences(Element e) const;

    /// Largest number of tuples sharing a single element (0 when empty).
    std::size_t max_occurrences() const noexcept { return max_occurrences_; }

    /// For unary relations: the member elements in increasing order.
    std::span<const Element> flat() const noexcept { return data_; }

    /// Image under an element map given as a full lookup table.
    Relation mapped(std::span<const Element> image, std::size_t new_universe) const;

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.universe_size_ == b.universe_size_ && a.arity_ == b.arity_ && a.data_ == b.data_;
    }

private:
    Relation() = default;
    void build_indexes();
    std::size_t dense_index(std::span<const Element> t) const;

    std::size_t universe_size_ = 0;
    std::size_t arity_ = 0;
    std::vector<Element> data_;
    std::vector<std::uint32_t> occ_offsets_;
    std::vector<std::uint32_t> occ_ids_;
    std::vector<std::uint64_t> bitmap_;
    std::size_t max_occurrences_ = 0;
};

/// A bijection on {0..n-1}.
class Permutation {
public:
    /// Throws Error unless `mapping` hits every value exactly once.
    explicit Permutation(std::vector<Element> mapping);

    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return mapping_.size(); }
    Element operator()(Element e) const { return mapping_.at(e); }
    const std::vector<Element>& mapping() const noexcept { return mapping_; }
    bool is_identity() const noexcept;

    Permutation inverse() const;
    /// (a * b)(e) = a(b(e))
    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<Element> mapping_;
};

/// A named unary predicate. Members are kept sorted and duplicate-free.
struct NamedSubset {
    std::string name;
    std::vector<Element> members;

    NamedSubset() = default;
    NamedSubset(std::string n, std::vector<Element> m);

    bool contains(Element e) const;
    std::size_t size() const noexcept { return members.size(); }
    friend bool operator==(const NamedSubset&, const NamedSubset&) = default;
};

using RelationMap = std::map<std::string, Relation, std::less<>>;

/// A universe {0..n-1} with named relations of fixed arity. Immutable once
/// built; every transformation returns a fresh structure.
class FiniteStructure {
public:
    explicit FiniteStructure(std::size_t universe_size);
    FiniteStructure(std::size_t universe_size, RelationMap relations);

    std::size_t universe_size() const noexcept { return universe_size_; }
    const RelationMap& relations() const noexcept { return relations_; }

    bool has_relation(std::string_view name) const;
    const Relation* find_relation(std::string_view name) const;
    /// Throws Error when the relation is missing.
    const Relation& relation(std::string_view name) const;
    std::vector<std::string> relation_names() const;

    /// Adds one relation; throws on name collision or universe mismatch.
    FiniteStructure with_relation(std::string name, Relation rel) const;
    /// Keeps only the listed relations; unknown names are an error.
    FiniteStructure project(std::span<const std::string> names) const;

    friend bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
        return a.universe_size_ == b.universe_size_ && a.relations_ == b.relations_;
    }

private:
    std::size_t universe_size_;
    RelationMap relations_;
};

/// Monadic expansion by one fresh unary predicate.
FiniteStructure expand(const FiniteStructure& s, const NamedSubset& p);
FiniteStructure expand(const FiniteStructure& s, std::span<const NamedSubset> ps);

/// The unique structure for which `sigma` is an isomorphism from `s`.
FiniteStructure apply_permutation(const FiniteStructure& s, const Permutation& sigma);

/// Union of two structures on the same universe with disjoint signatures.
FiniteStructure overlay_union(const FiniteStructure& a, const FiniteStructure& b);

/// Enlarges the universe to `n`, adding elements that occur in no tuple.
FiniteStructure pad_universe(const FiniteStructure& s, std::size_t n);

/// Members of a unary relation as a NamedSubset.
NamedSubset subset_of(const FiniteStructure& s, std::string_view unary_relation);

} // namespace mwb
