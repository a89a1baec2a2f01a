#pragma once

#include <array>
#include <map>
#include <string>

#include "sigmadelta/rational.hpp"

namespace sigmadelta {

/// Laurent polynomial in the group parameters xi and zeta.
///
/// Each parameter carries an order q: q = 0 means the parameter is free,
/// q > 0 means exponents are reduced modulo q (the ring Q[xi]/(xi^q - 1)).
/// Constants carry no order; combining two elements that both mention a
/// parameter with different orders is a DomainError.
class ParamPoly {
public:
    enum Param : std::size_t { Xi = 0, Zeta = 1 };
    using Exponents = std::array<long, 2>;

    ParamPoly() = default;
    ParamPoly(long c) : ParamPoly(Rational(c)) {}
    ParamPoly(const Rational& c) {
        if (!c.is_zero()) terms_.emplace(Exponents{0, 0}, c);
    }

    /// param^power in the ring where param has the given order.
    static ParamPoly monomial(Param p, long power, unsigned order = 0, const Rational& coeff = Rational(1)) {
        ParamPoly out;
        Exponents e{0, 0};
        e[p] = power;
        out.orders_[p] = order;
        out.mentions_[p] = true;
        if (!coeff.is_zero()) out.terms_.emplace(e, coeff);
        out.normalize();
        return out;
    }
    static ParamPoly xi(long power = 1, unsigned order = 0) { return monomial(Xi, power, order); }
    static ParamPoly zeta(long power = 1, unsigned order = 0) { return monomial(Zeta, power, order); }

    const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
    unsigned order(Param p) const noexcept { return orders_[p]; }

    bool is_zero() const noexcept { return terms_.empty(); }

    /// Nonzero multiples of a single monomial; in a Laurent ring these are the units.
    bool is_monomial_unit() const noexcept { return terms_.size() == 1; }

    ParamPoly inverse() const {
        if (!is_monomial_unit()) throw NotAUnit("only monomials are inverted: " + to_string());
        const auto& [e, c] = *terms_.begin();
        ParamPoly out = *this;
        out.terms_.clear();
        out.terms_.emplace(Exponents{-e[0], -e[1]}, c.inverse());
        out.normalize();
        return out;
    }

    ParamPoly pow(long exponent) const {
        if (exponent < 0) return inverse().pow(-exponent);
        ParamPoly result(1), base = *this;
        while (exponent) {
            if (exponent & 1) result = result * base;
            exponent >>= 1;
            if (exponent) base = base * base;
        }
        return result;
    }

    /// Substitutes rational values for the parameters.
    Rational evaluate(const Rational& xi_value, const Rational& zeta_value = Rational(1)) const {
        Rational out;
        for (const auto& [e, c] : terms_) out = out + c * xi_value.pow(e[0]) * zeta_value.pow(e[1]);
        return out;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        static const char* names[2] = {"xi", "zeta"};
        std::string out;
        for (const auto& [e, c] : terms_) {
            std::string mono;
            for (std::size_t i = 0; i < 2; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (e[i] != 1) mono += "^" + (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
            }
            std::string cs = c.to_string();
            std::string term = mono.empty() ? cs : (cs == "1" ? mono : (cs == "-1" ? "-" + mono : cs + "*" + mono));
            if (out.empty()) {
                out = term;
            } else if (term.front() == '-') {
                out += " - " + term.substr(1);
            } else {
                out += " + " + term;
            }
        }
        return out;
    }

    ParamPoly operator-() const {
        ParamPoly out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }
    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly out = merged(a, b);
        out.terms_ = a.terms_;
        for (const auto& [e, c] : b.terms_) out.add_term(e, c);
        out.normalize();
        return out;
    }
    friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return a + (-b); }
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly out = merged(a, b);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) out.add_term({ea[0] + eb[0], ea[1] + eb[1]}, ca * cb);
        out.normalize();
        return out;
    }
    friend ParamPoly operator/(const ParamPoly& a, const ParamPoly& b) { return a * b.inverse(); }
    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return (a - b).is_zero(); }
    friend std::ostream& operator<<(std::ostream& os, const ParamPoly& p) { return os << p.to_string(); }

private:
    std::map<Exponents, Rational> terms_;
    std::array<unsigned, 2> orders_{0, 0};
    std::array<bool, 2> mentions_{false, false};

    void add_term(const Exponents& e, const Rational& c) {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    static ParamPoly merged(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly out;
        for (std::size_t i = 0; i < 2; ++i) {
            if (a.mentions_[i] && b.mentions_[i] && a.orders_[i] != b.orders_[i])
                throw DomainError("mixing parameter orders " + std::to_string(a.orders_[i]) + " and " + std::to_string(b.orders_[i]));
            out.mentions_[i] = a.mentions_[i] || b.mentions_[i];
            out.orders_[i] = a.mentions_[i] ? a.orders_[i] : b.orders_[i];
        }
        return out;
    }

    void normalize() {
        bool reduce = false;
        for (std::size_t i = 0; i < 2; ++i) reduce = reduce || orders_[i] > 0;
        if (!reduce) return;
        std::map<Exponents, Rational> old;
        old.swap(terms_);
        for (const auto& [key, c] : old) {
            Exponents e = key;
            for (std::size_t i = 0; i < 2; ++i) {
                if (orders_[i] == 0) continue;
                const long q = orders_[i];
                e[i] = ((e[i] % q) + q) % q;
            }
            add_term(e, c);
        }
    }
};

inline bool is_zero(const ParamPoly& p) { return p.is_zero(); }

}  // namespace sigmadelta
