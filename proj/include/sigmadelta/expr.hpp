#pragma once

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "sigmadelta/ratfunc.hpp"

namespace sigmadelta {

/// Expression grammar shared by the library and the CLI:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' ['-'] integer)?
///   primary := integer | name | '(' expr ')'
///
/// Multiplication is always explicit; "2t" is rejected.
template <class R, class VariableFn>
class ExpressionParser {
public:
    ExpressionParser(std::string_view text, VariableFn variable) : text_(text), variable_(std::move(variable)) {}

    R parse() {
        R value = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

private:
    std::string_view text_;
    VariableFn variable_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& message) const {
        throw ExprError("", message + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    R expr() {
        R value = term();
        while (true) {
            if (accept('+'))
                value = value + term();
            else if (accept('-'))
                value = value - term();
            else
                return value;
        }
    }

    R term() {
        R value = unary();
        while (true) {
            if (accept('*')) {
                value = value * unary();
            } else if (accept('/')) {
                R d = unary();
                try {
                    value = value / d;
                } catch (const DivisionByZero&) {
                    fail("division by zero");
                }
            } else {
                return value;
            }
        }
    }

    R unary() {
        if (accept('-')) return -unary();
        return power();
    }

    R power() {
        R base = primary();
        if (accept('^')) {
            bool negative = accept('-');
            skip_space();
            std::string digits = read_while([](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
            if (digits.empty()) fail("exponent must be an integer literal");
            long e = std::stol(digits);
            try {
                return base.pow(negative ? -e : e);
            } catch (const DivisionByZero&) {
                fail("negative power of zero");
            }
        }
        return base;
    }

    R primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            R value = expr();
            if (!accept(')')) fail("expected ')'");
            reject_juxtaposition();
            return value;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits = read_while([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
            reject_juxtaposition();
            return R(Rational(mpz_class(digits), mpz_class(1)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = read_while([](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_'; });
            reject_juxtaposition();
            return variable_(name);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    void reject_juxtaposition() {
        std::size_t save = pos_;
        skip_space();
        if (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') fail("missing operator (use explicit '*')");
        }
        pos_ = save;
    }

    template <class Pred>
    std::string read_while(Pred pred) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }
};

template <class R, class VariableFn>
R parse_expression(std::string_view text, VariableFn&& variable) {
    return ExpressionParser<R, std::decay_t<VariableFn>>(text, std::forward<VariableFn>(variable)).parse();
}

/// Parses a rational function. `names` maps accepted spellings to internal
/// variable names (e.g. {"m" -> "x"}); other identifiers are ExprErrors.
inline RatFunc parse_ratfunc(std::string_view text, const std::map<std::string, std::string>& names = {{"x", "x"}, {"t", "t"}}) {
    return parse_expression<RatFunc>(text, [&](const std::string& name) {
        auto it = names.find(name);
        if (it == names.end()) throw ExprError("", "unknown variable '" + name + "' in \"" + std::string(text) + "\"");
        return RatFunc::variable(it->second);
    });
}

}  // namespace sigmadelta
