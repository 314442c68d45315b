#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mwb {

/// Universe elements are always drawn from {0..n-1}.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Outcome of a re-certification pass. An empty reason means success.
struct Verdict {
    bool ok = true;
    std::string reason;

    static Verdict pass() { return {}; }
    static Verdict fail(std::string why) { return {false, std::move(why)}; }

    explicit operator bool() const noexcept { return ok; }
};

/// True iff `name` matches [A-Za-z_][A-Za-z0-9_]* and is not a formula keyword.
bool is_identifier(std::string_view name) noexcept;

std::string tuple_to_string(const Tuple& t);

} // namespace mwb
