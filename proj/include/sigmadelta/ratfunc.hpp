#pragma once

#include <string>

#include "sigmadelta/poly.hpp"

namespace sigmadelta {

/// Rational function over Q in canonical form: coprime numerator and
/// denominator, denominator grlex-monic. Equal functions compare equal
/// structurally.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(Poly p) : num_(std::move(p)), den_(1) {}
    RatFunc(Poly numerator, Poly denominator) : num_(std::move(numerator)), den_(std::move(denominator)) { normalize_in_place(); }

    static RatFunc variable(const std::string& name) { return RatFunc(Poly::variable(name)); }

    const Poly& numerator() const noexcept { return num_; }
    const Poly& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const { return den_ == Poly(1) && num_ == Poly(1); }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool contains(std::string_view var) const { return num_.contains(var) || den_.contains(var); }

    Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RatFunc inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
        return RatFunc(den_, num_);
    }

    RatFunc pow(long exponent) const {
        if (exponent < 0) return inverse().pow(-exponent);
        RatFunc out;
        out.num_ = num_.pow(static_cast<unsigned>(exponent));
        out.den_ = den_.pow(static_cast<unsigned>(exponent));
        return out;
    }

    /// Substitutes var := value. Throws DivisionByZero if the denominator vanishes identically.
    RatFunc evaluate(std::string_view var, const Rational& value) const {
        Poly d = den_.evaluate(var, value);
        if (d.is_zero()) throw DivisionByZero("denominator " + den_.to_string() + " vanishes at " + std::string(var) + " = " + value.to_string());
        return RatFunc(num_.evaluate(var, value), d);
    }

    /// True when the denominator does not vanish identically at var = value.
    bool defined_at(std::string_view var, const Rational& value) const { return !den_.evaluate(var, value).is_zero(); }

    RatFunc substitute(std::string_view var, const RatFunc& value) const {
        if (!contains(var)) return *this;
        return substitute_poly(num_, var, value) / substitute_poly(den_, var, value);
    }

    RatFunc shift(std::string_view var, const Rational& by) const {
        RatFunc out;
        out.num_ = num_.shift(var, by);
        out.den_ = den_.shift(var, by);
        out.renormalize_leading();
        return out;
    }

    RatFunc derivative(std::string_view var) const {
        if (!contains(var)) return RatFunc();
        return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
    }

    std::string to_string() const {
        if (den_ == Poly(1)) return num_.to_string();
        auto wrap = [](const Poly& p) {
            std::string s = p.to_string();
            bool atomic = p.term_count() == 1 && s.find_first_of("*/ ") == std::string::npos && s.front() != '-';
            return atomic ? s : "(" + s + ")";
        };
        return wrap(num_) + "/" + wrap(den_);
    }

    RatFunc operator-() const {
        RatFunc out = *this;
        out.num_ = -num_;
        return out;
    }
    // Sums and products cancel against gcds of the (already coprime) parts,
    // which keeps the gcd inputs small.
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        Poly g = gcd(a.den_, b.den_);
        if (g.is_constant()) return reduced(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        Poly ad = *exact_divide(a.den_, g), bd = *exact_divide(b.den_, g);
        Poly num = a.num_ * bd + b.num_ * ad;
        Poly g2 = gcd(num, g);
        if (g2.is_constant()) return reduced(std::move(num), ad * b.den_);
        return reduced(*exact_divide(num, g2), ad * *exact_divide(b.den_, g2));
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        if (a.is_polynomial() && b.is_polynomial()) return reduced(a.num_ * b.num_, a.den_ * b.den_);
        Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
        return reduced(*exact_divide(a.num_, g1) * *exact_divide(b.num_, g2), *exact_divide(a.den_, g2) * *exact_divide(b.den_, g1));
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

private:
    Poly num_;
    Poly den_;

    static RatFunc substitute_poly(const Poly& p, std::string_view var, const RatFunc& value) {
        auto cs = p.coefficients(var);
        RatFunc result;
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) result = result * value + RatFunc(*it);
        return result;
    }

    /// Wraps numerator/denominator already known to be coprime.
    static RatFunc reduced(Poly numerator, Poly denominator) {
        RatFunc out;
        out.num_ = std::move(numerator);
        out.den_ = std::move(denominator);
        out.renormalize_leading();
        return out;
    }

    void renormalize_leading() {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        Rational lc = den_.leading_coefficient();
        if (!lc.is_one()) {
            Rational inv = lc.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    void normalize_in_place() {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        Poly g = gcd(num_, den_);
        if (!(g.is_constant())) {
            num_ = *exact_divide(num_, g);
            den_ = *exact_divide(den_, g);
        }
        renormalize_leading();
    }
};

/// Canonical reduced form of numerator/denominator.
inline RatFunc normalize(const Poly& numerator, const Poly& denominator) { return RatFunc(numerator, denominator); }

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

}  // namespace sigmadelta
