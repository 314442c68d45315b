#pragma once

#include <mwb/common.hpp>

#include <algorithm>
#include <span>
#include <string>

namespace mwb::detail {

/// All tuples of a fixed width over {0..n-1}, indexed in lexicographic order.
class TupleSpace {
public:
    static constexpr std::size_t kMaxCount = std::size_t{1} << 26;

    TupleSpace(std::size_t universe, std::size_t width) : universe_(universe), width_(width), count_(1) {
        for (std::size_t i = 0; i < width; ++i) {
            if (count_ > kMaxCount / std::max<std::size_t>(universe, 1))
                throw Error("tuple space " + std::to_string(universe) + "^" + std::to_string(width) +
                            " is too large to enumerate");
            count_ *= universe;
        }
    }

    std::size_t universe() const noexcept { return universe_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t count() const noexcept { return count_; }

    void decode(std::size_t index, std::span<Element> out) const {
        for (std::size_t i = width_; i-- > 0;) {
            out[i] = static_cast<Element>(index % universe_);
            index /= universe_;
        }
    }

    Tuple tuple(std::size_t index) const {
        Tuple t(width_);
        decode(index, t);
        return t;
    }

    std::size_t encode(std::span<const Element> t) const {
        std::size_t index = 0;
        for (Element e : t) index = index * universe_ + e;
        return index;
    }

private:
    std::size_t universe_;
    std::size_t width_;
    std::size_t count_;
};

} // namespace mwb::detail
