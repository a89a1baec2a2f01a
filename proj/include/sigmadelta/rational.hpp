#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>

#include "sigmadelta/errors.hpp"

namespace sigmadelta {

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
    Rational(const mpz_class& numerator, const mpz_class& denominator) {
        if (denominator == 0) throw DivisionByZero("rational with zero denominator");
        value_ = mpq_class(numerator, denominator);
        value_.canonicalize();
    }

    /// Parses "p", "-p" or "p/q".
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto trim = [](std::string& v) {
            while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.erase(v.begin());
            while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.pop_back();
        };
        trim(s);
        if (s.empty()) throw DomainError("empty rational literal");
        auto slash = s.find('/');
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        trim(num);
        trim(den);
        auto valid = [](const std::string& v, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && i < v.size() && (v[i] == '-' || v[i] == '+')) ++i;
            if (i == v.size()) return false;
            for (; i < v.size(); ++i)
                if (v[i] < '0' || v[i] > '9') return false;
            return true;
        };
        if (!valid(num, true) || !valid(den, false)) throw DomainError("not a rational literal: '" + s + "'");
        if (num.front() == '+') num.erase(num.begin());
        return Rational(mpz_class(num), mpz_class(den));
    }

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& raw() const noexcept { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        return Rational(mpq_class(1) / value_);
    }

    Rational pow(long exponent) const {
        if (exponent < 0) return inverse().pow(-exponent);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
        mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
        return Rational(n, d);
    }

    Rational abs() const { return Rational(mpq_class(::abs(value_))); }

    std::string to_string() const { return value_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero("rational division by zero");
        value_ /= o.value_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    mpq_class value_{0};
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }

/// Exact square root of a rational when it exists.
inline bool rational_sqrt(const Rational& r, Rational& root) {
    if (r.sign() < 0) return false;
    mpz_class n = r.numerator(), d = r.denominator();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    root = Rational(sn, sd);
    return true;
}

}  // namespace sigmadelta
