#pragma once

#include <map>
#include <optional>
#include <string>

#include "sigmadelta/quad_ext.hpp"

namespace sigmadelta {

/// The ring Q(x,t)(s)[eta, 1/eta] with s^2 = t^2 - 1.
///
/// Under the operators of operators.hpp, eta behaves like (t + s)^(x - 1):
/// sigma(eta) = (t + s) eta and delta(eta) = (x - 1) eta / s.
class TowerElem {
public:
    using Coeff = QuadRatFunc;
    using CoeffMap = std::map<int, Coeff>;

    TowerElem() = default;
    TowerElem(long c) : TowerElem(Coeff(c)) {}
    TowerElem(const Rational& c) : TowerElem(Coeff(c)) {}
    TowerElem(const RatFunc& f) : TowerElem(Coeff(f)) {}
    TowerElem(const Coeff& c, int power = 0) {
        if (!c.is_zero()) coeffs_.emplace(power, c);
    }

    static RatFunc discriminant() {
        static const RatFunc d = RatFunc(Poly::variable("t", 2) - Poly(1));
        return d;
    }
    /// s = sqrt(t^2 - 1) as a coefficient.
    static Coeff sqrt_disc() { return Coeff::root(discriminant()); }
    static Coeff coeff(const RatFunc& a, const RatFunc& b = RatFunc()) { return Coeff(a, b, discriminant()); }
    static TowerElem s() { return TowerElem(sqrt_disc()); }
    static TowerElem eta(int power = 1) { return TowerElem(Coeff(1), power); }

    const CoeffMap& coefficients() const noexcept { return coeffs_; }
    Coeff coefficient(int power) const {
        auto it = coeffs_.find(power);
        return it == coeffs_.end() ? Coeff() : it->second;
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// c * eta^k with c != 0.
    bool is_laurent_unit() const noexcept { return coeffs_.size() == 1; }

    TowerElem inverse() const {
        if (!is_laurent_unit()) throw NotAUnit("not a unit of the Laurent ring: " + to_string());
        const auto& [k, c] = *coeffs_.begin();
        return TowerElem(c.inverse(), -k);
    }

    TowerElem pow(long exponent) const {
        if (exponent < 0) return inverse().pow(-exponent);
        TowerElem result(1), base = *this;
        while (exponent) {
            if (exponent & 1) result = result * base;
            exponent >>= 1;
            if (exponent) base = base * base;
        }
        return result;
    }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            if (!out.empty()) out += " + ";
            std::string c = it->second.to_string();
            if (it->first == 0) {
                out += "(" + c + ")";
                continue;
            }
            std::string e = it->first == 1 ? "eta" : "eta^" + std::to_string(it->first);
            out += (c == "1") ? e : "(" + c + ")*" + e;
        }
        return out;
    }

    TowerElem operator-() const {
        TowerElem out;
        for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k, -c);
        return out;
    }
    friend TowerElem operator+(const TowerElem& a, const TowerElem& b) {
        TowerElem out = a;
        for (const auto& [k, c] : b.coeffs_) out.accumulate(k, c);
        return out;
    }
    friend TowerElem operator-(const TowerElem& a, const TowerElem& b) { return a + (-b); }
    friend TowerElem operator*(const TowerElem& a, const TowerElem& b) {
        TowerElem out;
        for (const auto& [ka, ca] : a.coeffs_)
            for (const auto& [kb, cb] : b.coeffs_) out.accumulate(ka + kb, ca * cb);
        return out;
    }
    /// Division by a Laurent unit.
    friend TowerElem operator/(const TowerElem& a, const TowerElem& b) { return a * b.inverse(); }
    TowerElem& operator+=(const TowerElem& o) { return *this = *this + o; }
    TowerElem& operator-=(const TowerElem& o) { return *this = *this - o; }
    TowerElem& operator*=(const TowerElem& o) { return *this = *this * o; }

    friend bool operator==(const TowerElem& a, const TowerElem& b) { return a.coeffs_ == b.coeffs_; }
    friend std::ostream& operator<<(std::ostream& os, const TowerElem& e) { return os << e.to_string(); }

private:
    CoeffMap coeffs_;

    void accumulate(int k, const Coeff& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = coeffs_.emplace(k, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }
};

inline bool is_zero(const TowerElem& e) { return e.is_zero(); }
inline bool is_laurent_unit(const TowerElem& e) { return e.is_laurent_unit(); }
inline std::optional<TowerElem> try_invert(const TowerElem& e) {
    if (!e.is_laurent_unit()) return std::nullopt;
    return e.inverse();
}

enum class TowerOp { Add, Mul, Inv };

/// Single entry point for the three tower operations; `b` is ignored for Inv.
inline TowerElem tower_arith(const TowerElem& a, const TowerElem& b, TowerOp op) {
    switch (op) {
        case TowerOp::Add: return a + b;
        case TowerOp::Mul: return a * b;
        case TowerOp::Inv: return a.inverse();
    }
    throw DomainError("unknown tower operation");
}

}  // namespace sigmadelta
