#pragma once

#include <mwb/formula.hpp>

#include <string_view>

namespace mwb {

/// Raised by parse_formula; line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses the formula grammar:
///
///   formula    := quantified | iff
///   quantified := ("exists"|"forall") IDENT ["in" IDENT] "." formula
///   iff        := impl ("<->" impl)*
///   impl       := or ("->" or)*            (right-associative)
///   or         := and ("|" and)*
///   and        := unary ("&" unary)*
///   unary      := "!" unary | atom
///   atom       := "(" formula ")" | IDENT "(" IDENT ("," IDENT)* ")"
///               | IDENT "=" IDENT | "true" | "false"
///
/// "exists y in B. f" reads as "exists y. (B(y) & f)" and
/// "forall y in B. f" as "forall y. (B(y) -> f)".
Formula parse_formula(std::string_view text);

} // namespace mwb
