#include <mwb/parser.hpp>

#include <vector>

namespace mwb {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Equals, Bang, Amp, Bar, Arrow, DoubleArrow, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Equals: return "'='";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DoubleArrow: return "'<->'";
    case Tok::End: return "end of input";
    }
    return "token";
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t count) {
        for (std::size_t k = 0; k < count; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto ident_start = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto ident_char = [&](char c) { return ident_start(c) || (c >= '0' && c <= '9'); };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        Token tok{Tok::End, {}, line, col};
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            tok.kind = Tok::Ident;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (src.substr(i, 3) == "<->") {
            tok.kind = Tok::DoubleArrow;
            advance(3);
        } else if (src.substr(i, 2) == "->") {
            tok.kind = Tok::Arrow;
            advance(2);
        } else {
            switch (c) {
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            case ',': tok.kind = Tok::Comma; break;
            case '.': tok.kind = Tok::Dot; break;
            case '=': tok.kind = Tok::Equals; break;
            case '!': tok.kind = Tok::Bang; break;
            case '&': tok.kind = Tok::Amp; break;
            case '|': tok.kind = Tok::Bar; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
            }
            advance(1);
        }
        out.push_back(std::move(tok));
    }
    out.push_back(Token{Tok::End, {}, line, col});
    return out;
}

bool is_keyword(const std::string& s) {
    return s == "exists" || s == "forall" || s == "true" || s == "false";
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula parse_all() {
        Formula f = formula();
        if (peek().kind != Tok::End) fail("expected end of input");
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t idx = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[idx];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::Ident ? "'" + t.text + "'" : describe(t.kind);
        throw ParseError(what + ", found " + found, t.line, t.column);
    }
    void expect(Tok kind) {
        if (peek().kind != kind) fail(std::string("expected ") + describe(kind));
        next();
    }
    bool is_word(const Token& t, const char* w) const { return t.kind == Tok::Ident && t.text == w; }

    std::string variable() {
        if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected a variable name");
        return next().text;
    }

    Formula formula() {
        if (is_word(peek(), "exists") || is_word(peek(), "forall")) return quantified();
        return iff_level();
    }

    Formula quantified() {
        bool is_exists = next().text == "exists";
        std::string var = variable();
        std::string bound_set;
        // "in" is contextual: only a keyword between the variable and its set.
        if (is_word(peek(), "in") && peek(1).kind == Tok::Ident) {
            next();
            if (is_keyword(peek().text)) fail("expected a predicate name");
            bound_set = next().text;
        }
        expect(Tok::Dot);
        Formula body = formula();
        if (bound_set.empty()) return is_exists ? exists(var, body) : forall(var, body);
        return is_exists ? exists_in(var, bound_set, body) : forall_in(var, bound_set, body);
    }

    Formula iff_level() {
        Formula acc = impl_level();
        while (peek().kind == Tok::DoubleArrow) {
            next();
            acc = iff(acc, impl_level());
        }
        return acc;
    }

    Formula impl_level() {
        Formula lhs = or_level();
        if (peek().kind == Tok::Arrow) {
            next();
            return implies(lhs, impl_level());
        }
        return lhs;
    }

    Formula or_level() {
        Formula acc = and_level();
        while (peek().kind == Tok::Bar) {
            next();
            acc = disj(acc, and_level());
        }
        return acc;
    }

    Formula and_level() {
        Formula acc = unary();
        while (peek().kind == Tok::Amp) {
            next();
            acc = conj(acc, unary());
        }
        return acc;
    }

    Formula unary() {
        if (peek().kind == Tok::Bang) {
            next();
            return neg(unary());
        }
        return atom_level();
    }

    Formula atom_level() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            next();
            Formula f = formula();
            expect(Tok::RParen);
            return f;
        }
        if (t.kind != Tok::Ident) fail("expected a formula");
        if (t.text == "true" || t.text == "false") {
            bool v = next().text == "true";
            return Formula::constant(v);
        }
        if (t.text == "exists" || t.text == "forall")
            fail("a quantifier in this position must be parenthesized");
        std::string name = next().text;
        if (peek().kind == Tok::LParen) {
            next();
            std::vector<std::string> args{variable()};
            while (peek().kind == Tok::Comma) {
                next();
                args.push_back(variable());
            }
            expect(Tok::RParen);
            return atom(name, std::move(args));
        }
        if (peek().kind == Tok::Equals) {
            next();
            return eq(name, variable());
        }
        fail("expected '(' or '=' after '" + name + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text) {
    return Parser(tokenize(text)).parse_all();
}

} // namespace mwb
