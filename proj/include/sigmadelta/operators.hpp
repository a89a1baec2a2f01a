#pragma once

#include <string>
#include <vector>

#include "sigmadelta/matrix.hpp"
#include "sigmadelta/tower.hpp"

namespace sigmadelta {

/// Name of the shift variable (sigma: x -> x + 1).
inline constexpr const char* kShiftVar = "x";
/// Name of the differential variable (delta = d/dt).
inline constexpr const char* kDiffVar = "t";

// --- constants --------------------------------------------------------------

inline Rational apply_sigma(const Rational& c) { return c; }
inline Rational apply_sigma_inverse(const Rational& c) { return c; }
inline Rational apply_delta(const Rational&) { return Rational(0); }

// --- Q(x, t) ----------------------------------------------------------------

inline RatFunc apply_sigma(const RatFunc& f) { return f.shift(kShiftVar, Rational(1)); }
inline RatFunc apply_sigma_inverse(const RatFunc& f) { return f.shift(kShiftVar, Rational(-1)); }
inline RatFunc apply_delta(const RatFunc& f) { return f.derivative(kDiffVar); }

// --- Base(s), s^2 = d -------------------------------------------------------
// sigma(s) = s needs sigma(d) = d; delta(s) = delta(d) s / (2 d).

template <class Base>
QuadExt<Base> apply_sigma(const QuadExt<Base>& q) {
    if (q.in_base()) return QuadExt<Base>(apply_sigma(q.real()));
    const Base& d = *q.discriminant();
    if (!(apply_sigma(d) == d)) throw DomainError("sigma does not fix the discriminant");
    return QuadExt<Base>(apply_sigma(q.real()), apply_sigma(q.irrational()), d);
}

template <class Base>
QuadExt<Base> apply_sigma_inverse(const QuadExt<Base>& q) {
    if (q.in_base()) return QuadExt<Base>(apply_sigma_inverse(q.real()));
    return QuadExt<Base>(apply_sigma_inverse(q.real()), apply_sigma_inverse(q.irrational()), *q.discriminant());
}

template <class Base>
QuadExt<Base> apply_delta(const QuadExt<Base>& q) {
    if (q.in_base()) return QuadExt<Base>(apply_delta(q.real()));
    const Base& d = *q.discriminant();
    Base b = q.irrational();
    Base db = apply_delta(b) + b * apply_delta(d) / (Base(2) * d);
    return QuadExt<Base>(apply_delta(q.real()), db, d);
}

// --- the tower --------------------------------------------------------------

namespace detail {

/// sigma(eta) / eta = t + s
inline const TowerElem::Coeff& eta_sigma_factor() {
    static const TowerElem::Coeff f = TowerElem::coeff(RatFunc::variable(kDiffVar), RatFunc(1));
    return f;
}
/// sigma^{-1}(eta) / eta = t - s
inline const TowerElem::Coeff& eta_sigma_inverse_factor() {
    static const TowerElem::Coeff f = TowerElem::coeff(RatFunc::variable(kDiffVar), RatFunc(-1));
    return f;
}
/// delta(eta) / eta = (x - 1) / s = (x - 1) s / (t^2 - 1)
inline const TowerElem::Coeff& eta_log_derivative() {
    static const TowerElem::Coeff f =
        TowerElem::coeff(RatFunc(), (RatFunc::variable(kShiftVar) - RatFunc(1)) / TowerElem::discriminant());
    return f;
}

}  // namespace detail

inline TowerElem apply_sigma(const TowerElem& e) {
    TowerElem out;
    for (const auto& [k, c] : e.coefficients())
        out += TowerElem(apply_sigma(c) * detail::eta_sigma_factor().pow(k), k);
    return out;
}

inline TowerElem apply_sigma_inverse(const TowerElem& e) {
    TowerElem out;
    for (const auto& [k, c] : e.coefficients())
        out += TowerElem(apply_sigma_inverse(c) * detail::eta_sigma_inverse_factor().pow(k), k);
    return out;
}

inline TowerElem apply_delta(const TowerElem& e) {
    TowerElem out;
    for (const auto& [k, c] : e.coefficients()) {
        TowerElem::Coeff term = apply_delta(c);
        if (k != 0) term = term + c * detail::eta_log_derivative() * TowerElem::Coeff(static_cast<long>(k));
        out += TowerElem(term, k);
    }
    return out;
}

// --- matrices (entrywise) ---------------------------------------------------

template <class T>
Matrix<T> apply_sigma(const Matrix<T>& m) {
    return m.map([](const T& v) { return apply_sigma(v); });
}
template <class T>
Matrix<T> apply_delta(const Matrix<T>& m) {
    return m.map([](const T& v) { return apply_delta(v); });
}

// --- Theta ------------------------------------------------------------------

/// sigma^i delta^j; sigma and delta commute, so this is a normal form.
struct ThetaWord {
    unsigned sigma_power = 0;
    unsigned delta_power = 0;

    unsigned length() const noexcept { return sigma_power + delta_power; }
    bool is_identity() const noexcept { return length() == 0; }
    std::string to_string() const { return "(" + std::to_string(sigma_power) + "," + std::to_string(delta_power) + ")"; }

    friend bool operator==(const ThetaWord&, const ThetaWord&) = default;
};

template <class E>
E apply_theta(const ThetaWord& w, E value) {
    for (unsigned j = 0; j < w.delta_power; ++j) value = apply_delta(value);
    for (unsigned i = 0; i < w.sigma_power; ++i) value = apply_sigma(value);
    return value;
}

/// All words with i + j <= bound, by total length then sigma power.
inline std::vector<ThetaWord> enumerate_theta(unsigned bound) {
    std::vector<ThetaWord> out;
    for (unsigned len = 0; len <= bound; ++len)
        for (unsigned i = 0; i <= len; ++i) out.push_back({i, len - i});
    return out;
}

}  // namespace sigmadelta
