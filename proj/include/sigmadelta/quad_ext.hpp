#pragma once

#include <optional>
#include <string>
#include <type_traits>

#include "sigmadelta/ratfunc.hpp"

namespace sigmadelta {

/// Element a + b*s of Base(s) with s^2 = d.
///
/// Pure base elements (b = 0) may omit the discriminant; mixing them with an
/// extension element adopts the other operand's d. Mixing two different
/// discriminants is a DomainError.
template <class Base>
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(long c) : a_(c) {}
    QuadExt(const Rational& c) requires(!std::is_same_v<Base, Rational>) : a_(c) {}
    QuadExt(Base a) : a_(std::move(a)) {}
    QuadExt(Base a, Base b, Base disc) : a_(std::move(a)), b_(std::move(b)), disc_(std::move(disc)) {}

    /// The generator s itself.
    static QuadExt root(Base disc) { return QuadExt(Base(0), Base(1), std::move(disc)); }

    const Base& real() const noexcept { return a_; }
    const Base& irrational() const noexcept { return b_; }
    const std::optional<Base>& discriminant() const noexcept { return disc_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool in_base() const { return b_.is_zero(); }

    /// a - b*s
    QuadExt conjugate() const { return QuadExt(a_, -b_, disc_); }

    /// a^2 - d*b^2
    Base norm() const {
        if (b_.is_zero()) return a_ * a_;
        return a_ * a_ - *disc_ * b_ * b_;
    }

    QuadExt inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero in quadratic extension");
        Base n = norm();
        if (n.is_zero()) throw DomainError("zero divisor: discriminant is a square");
        Base inv = Base(1) / n;
        return QuadExt(a_ * inv, -(b_ * inv), disc_);
    }

    QuadExt pow(long exponent) const {
        if (exponent < 0) return inverse().pow(-exponent);
        QuadExt result(1), base = *this;
        while (exponent) {
            if (exponent & 1) result = result * base;
            exponent >>= 1;
            if (exponent) base = base * base;
        }
        return result;
    }

    std::string to_string(const std::string& root_name = "s") const {
        if (b_.is_zero()) return a_.to_string();
        std::string bs = b_.to_string();
        std::string part = (bs == "1") ? root_name : "(" + bs + ")*" + root_name;
        if (a_.is_zero()) return part;
        return "(" + a_.to_string() + ") + " + part;
    }

    QuadExt operator-() const { return QuadExt(-a_, -b_, disc_); }
    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return QuadExt(x.a_ + y.a_, x.b_ + y.b_, merge(x, y)); }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return QuadExt(x.a_ - y.a_, x.b_ - y.b_, merge(x, y)); }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        auto d = merge(x, y);
        if (x.b_.is_zero()) return QuadExt(x.a_ * y.a_, x.a_ * y.b_, d);
        if (y.b_.is_zero()) return QuadExt(x.a_ * y.a_, x.b_ * y.a_, d);
        return QuadExt(x.a_ * y.a_ + *d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.to_string(); }

private:
    Base a_{};
    Base b_{};
    std::optional<Base> disc_;

    QuadExt(Base a, Base b, std::optional<Base> disc) : a_(std::move(a)), b_(std::move(b)), disc_(std::move(disc)) {
        if (!b_.is_zero() && !disc_) throw DomainError("quadratic element without discriminant");
    }

    static std::optional<Base> merge(const QuadExt& x, const QuadExt& y) {
        if (!x.disc_) return y.disc_;
        if (!y.disc_) return x.disc_;
        if (!(*x.disc_ == *y.disc_)) throw DomainError("mixing quadratic extensions with different discriminants");
        return x.disc_;
    }
};

template <class Base>
bool is_zero(const QuadExt<Base>& q) {
    return q.is_zero();
}

using QuadRational = QuadExt<Rational>;
using QuadRatFunc = QuadExt<RatFunc>;

/// Q(sqrt(d)) element a + b*sqrt(d). If d is a rational square the value
/// collapses into Q.
inline QuadRational make_quadratic(const Rational& a, const Rational& b, const Rational& d) {
    Rational r;
    if (rational_sqrt(d, r)) return QuadRational(a + b * r);
    return QuadRational(a, b, d);
}

}  // namespace sigmadelta
