#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mwb::detail {

/// Fixed-width bitset sized at runtime.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    static Bitset full(std::size_t bits) {
        Bitset b(bits);
        for (auto& w : b.words_) w = ~std::uint64_t{0};
        b.trim();
        return b;
    }

    std::size_t size() const noexcept { return bits_; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

    bool any() const noexcept {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Index of the lowest set bit, or size() when empty.
    std::size_t first() const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
        return bits_;
    }

    Bitset and_not(const Bitset& o) const {
        Bitset r(bits_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
        return r;
    }

    friend Bitset operator&(const Bitset& a, const Bitset& b) {
        Bitset r(a.bits_);
        for (std::size_t i = 0; i < a.words_.size(); ++i) r.words_[i] = a.words_[i] & b.words_[i];
        return r;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

private:
    void trim() {
        if (bits_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
    }

    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace mwb::detail
