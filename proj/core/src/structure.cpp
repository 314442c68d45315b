#include <mwb/structure.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mwb {

namespace {

constexpr std::size_t kMaxDenseBits = std::size_t{1} << 26;

bool dense_fits(std::size_t n, std::size_t k) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (n != 0 && total > kMaxDenseBits / n) return false;
        total *= n;
    }
    return total <= kMaxDenseBits;
}

} // namespace

bool is_identifier(std::string_view name) noexcept {
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front())) return false;
    for (char c : name)
        if (!alpha(c) && !digit(c)) return false;
    return name != "exists" && name != "forall" && name != "true" && name != "false";
}

std::string tuple_to_string(const Tuple& t) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
    out << ')';
    return out.str();
}

// ---------------------------------------------------------------- Relation

Relation::Relation(std::size_t universe_size, std::size_t arity, std::vector<Tuple> tuples)
    : universe_size_(universe_size), arity_(arity) {
    if (arity == 0) throw Error("relation arity must be at least 1");
    for (const auto& t : tuples) {
        if (t.size() != arity)
            throw Error("tuple " + tuple_to_string(t) + " does not have arity " +
                        std::to_string(arity));
        for (Element e : t)
            if (e >= universe_size)
                throw Error("tuple " + tuple_to_string(t) + " has an entry outside a universe of size " +
                            std::to_string(universe_size));
    }
    std::sort(tuples.begin(), tuples.end());
    auto dup = std::adjacent_find(tuples.begin(), tuples.end());
    if (dup != tuples.end()) throw Error("duplicate tuple " + tuple_to_string(*dup));
    data_.reserve(tuples.size() * arity);
    for (const auto& t : tuples) data_.insert(data_.end(), t.begin(), t.end());
    build_indexes();
}

Relation Relation::deduplicated(std::size_t universe_size, std::size_t arity, std::vector<Tuple> tuples) {
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    return Relation(universe_size, arity, std::move(tuples));
}

void Relation::build_indexes() {
    const std::size_t count = size();
    std::vector<std::uint32_t> degree(universe_size_, 0);
    Tuple seen;
    for (std::size_t id = 0; id < count; ++id) {
        auto t = tuple(id);
        seen.assign(t.begin(), t.end());
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (Element e : seen) ++degree[e];
    }
    occ_offsets_.assign(universe_size_ + 1, 0);
    for (std::size_t e = 0; e < universe_size_; ++e) occ_offsets_[e + 1] = occ_offsets_[e] + degree[e];
    occ_ids_.assign(occ_offsets_.back(), 0);
    std::vector<std::uint32_t> fill(occ_offsets_.begin(), occ_offsets_.end() - 1);
    for (std::size_t id = 0; id < count; ++id) {
        auto t = tuple(id);
        seen.assign(t.begin(), t.end());
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (Element e : seen) occ_ids_[fill[e]++] = static_cast<std::uint32_t>(id);
    }
    max_occurrences_ = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());

    bitmap_.clear();
    if (dense_fits(universe_size_, arity_)) {
        std::size_t bits = 1;
        for (std::size_t i = 0; i < arity_; ++i) bits *= universe_size_;
        bitmap_.assign((bits + 63) / 64, 0);
        for (std::size_t id = 0; id < count; ++id) {
            std::size_t idx = dense_index(tuple(id));
            bitmap_[idx / 64] |= std::uint64_t{1} << (idx % 64);
        }
    }
}

std::size_t Relation::dense_index(std::span<const Element> t) const {
    std::size_t idx = 0;
    for (Element e : t) idx = idx * universe_size_ + e;
    return idx;
}

std::vector<Tuple> Relation::tuples() const {
    std::vector<Tuple> out;
    out.reserve(size());
    for (std::size_t id = 0; id < size(); ++id) {
        auto t = tuple(id);
        out.emplace_back(t.begin(), t.end());
    }
    return out;
}

bool Relation::contains(std::span<const Element> t) const {
    if (t.size() != arity_) return false;
    for (Element e : t)
        if (e >= universe_size_) return false;
    if (!bitmap_.empty()) {
        std::size_t idx = dense_index(t);
        return (bitmap_[idx / 64] >> (idx % 64)) & 1U;
    }
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto m = tuple(mid);
        if (std::lexicographical_compare(m.begin(), m.end(), t.begin(), t.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == size()) return false;
    auto m = tuple(lo);
    return std::equal(m.begin(), m.end(), t.begin(), t.end());
}

std::span<const std::uint32_t> Relation::occurrences(Element e) const {
    if (e >= universe_size_) return {};
    return {occ_ids_.data() + occ_offsets_[e], occ_offsets_[e + 1] - occ_offsets_[e]};
}

Relation Relation::mapped(std::span<const Element> image, std::size_t new_universe) const {
    std::vector<Tuple> out;
    out.reserve(size());
    for (std::size_t id = 0; id < size(); ++id) {
        Tuple t;
        t.reserve(arity_);
        for (Element e : tuple(id)) t.push_back(image[e]);
        out.push_back(std::move(t));
    }
    return Relation(new_universe, arity_, std::move(out));
}

// ------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<Element> mapping) : mapping_(std::move(mapping)) {
    std::vector<bool> hit(mapping_.size(), false);
    for (Element v : mapping_) {
        if (v >= mapping_.size()) throw Error("permutation value " + std::to_string(v) + " out of range");
        if (hit[v]) throw Error("permutation value " + std::to_string(v) + " appears twice");
        hit[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<Element> m(n);
    std::iota(m.begin(), m.end(), Element{0});
    return Permutation(std::move(m));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < mapping_.size(); ++i)
        if (mapping_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<Element> inv(mapping_.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = static_cast<Element>(i);
    return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw Error("cannot compose permutations of different sizes");
    std::vector<Element> m(a.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.mapping_[b.mapping_[i]];
    return Permutation(std::move(m));
}

// ------------------------------------------------------------- NamedSubset

NamedSubset::NamedSubset(std::string n, std::vector<Element> m) : name(std::move(n)), members(std::move(m)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool NamedSubset::contains(Element e) const {
    return std::binary_search(members.begin(), members.end(), e);
}

// --------------------------------------------------------- FiniteStructure

FiniteStructure::FiniteStructure(std::size_t universe_size) : universe_size_(universe_size) {
    if (universe_size == 0) throw Error("universe size must be positive");
}

FiniteStructure::FiniteStructure(std::size_t universe_size, RelationMap relations)
    : universe_size_(universe_size), relations_(std::move(relations)) {
    if (universe_size == 0) throw Error("universe size must be positive");
    for (const auto& [name, rel] : relations_) {
        if (!is_identifier(name)) throw Error("invalid relation name '" + name + "'");
        if (rel.universe_size() != universe_size)
            throw Error("relation '" + name + "' is over a universe of size " +
                        std::to_string(rel.universe_size()) + ", expected " + std::to_string(universe_size));
    }
}

bool FiniteStructure::has_relation(std::string_view name) const {
    return relations_.find(name) != relations_.end();
}

const Relation* FiniteStructure::find_relation(std::string_view name) const {
    auto it = relations_.find(name);
    return it == relations_.end() ? nullptr : &it->second;
}

const Relation& FiniteStructure::relation(std::string_view name) const {
    if (const Relation* r = find_relation(name)) return *r;
    throw Error("unknown relation '" + std::string(name) + "'");
}

std::vector<std::string> FiniteStructure::relation_names() const {
    std::vector<std::string> out;
    for (const auto& [name, rel] : relations_) out.push_back(name);
    return out;
}

FiniteStructure FiniteStructure::with_relation(std::string name, Relation rel) const {
    if (has_relation(name)) throw Error("relation name '" + name + "' already in use");
    RelationMap copy = relations_;
    copy.emplace(std::move(name), std::move(rel));
    return FiniteStructure(universe_size_, std::move(copy));
}

FiniteStructure FiniteStructure::project(std::span<const std::string> names) const {
    RelationMap kept;
    for (const auto& name : names) kept.emplace(name, relation(name));
    return FiniteStructure(universe_size_, std::move(kept));
}

// -------------------------------------------------------------- operations

FiniteStructure expand(const FiniteStructure& s, const NamedSubset& p) {
    if (s.has_relation(p.name)) throw Error("relation name '" + p.name + "' already in use");
    std::vector<Tuple> tuples;
    tuples.reserve(p.members.size());
    for (Element e : p.members) {
        if (e >= s.universe_size())
            throw Error("predicate '" + p.name + "' mentions element " + std::to_string(e) +
                        " outside the universe");
        tuples.push_back({e});
    }
    return s.with_relation(p.name, Relation(s.universe_size(), 1, std::move(tuples)));
}

FiniteStructure expand(const FiniteStructure& s, std::span<const NamedSubset> ps) {
    FiniteStructure out = s;
    for (const auto& p : ps) out = expand(out, p);
    return out;
}

FiniteStructure apply_permutation(const FiniteStructure& s, const Permutation& sigma) {
    if (sigma.size() != s.universe_size())
        throw Error("permutation of length " + std::to_string(sigma.size()) +
                    " applied to a universe of size " + std::to_string(s.universe_size()));
    RelationMap out;
    for (const auto& [name, rel] : s.relations())
        out.emplace(name, rel.mapped(sigma.mapping(), s.universe_size()));
    return FiniteStructure(s.universe_size(), std::move(out));
}

FiniteStructure overlay_union(const FiniteStructure& a, const FiniteStructure& b) {
    if (a.universe_size() != b.universe_size())
        throw Error("cannot overlay universes of sizes " + std::to_string(a.universe_size()) + " and " +
                    std::to_string(b.universe_size()));
    RelationMap out = a.relations();
    for (const auto& [name, rel] : b.relations()) {
        if (out.count(name)) throw Error("relation name '" + name + "' occurs in both signatures");
        out.emplace(name, rel);
    }
    return FiniteStructure(a.universe_size(), std::move(out));
}

FiniteStructure pad_universe(const FiniteStructure& s, std::size_t n) {
    if (n < s.universe_size()) throw Error("padding cannot shrink a universe");
    std::vector<Element> image(s.universe_size());
    std::iota(image.begin(), image.end(), Element{0});
    RelationMap out;
    for (const auto& [name, rel] : s.relations()) out.emplace(name, rel.mapped(image, n));
    return FiniteStructure(n, std::move(out));
}

NamedSubset subset_of(const FiniteStructure& s, std::string_view unary_relation) {
    const Relation& rel = s.relation(unary_relation);
    if (rel.arity() != 1) throw Error("relation '" + std::string(unary_relation) + "' is not unary");
    auto flat = rel.flat();
    return NamedSubset(std::string(unary_relation), std::vector<Element>(flat.begin(), flat.end()));
}

} // namespace mwb
