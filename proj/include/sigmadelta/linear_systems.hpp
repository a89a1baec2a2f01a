#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sigmadelta/operators.hpp"

namespace sigmadelta {

using RatMatrix = Matrix<RatFunc>;

/// Outcome of an exact matrix identity check. On failure `index` names the
/// offending step (shift, sequence index, ...) and `residual` is the nonzero
/// left-minus-right matrix.
template <class T>
struct MatrixCheck {
    bool passed = true;
    std::size_t index = 0;
    Matrix<T> residual;

    explicit operator bool() const noexcept { return passed; }

    static MatrixCheck pass() { return {}; }
    static MatrixCheck fail(std::size_t index, Matrix<T> residual) { return {false, index, std::move(residual)}; }
};

/// sigma(Y) = A Y, delta(Y) = B Y over Q(x, t), with a denominator witness h in Q[t][x].
struct SigmaDeltaSystem {
    std::size_t n = 0;
    RatMatrix A;
    RatMatrix B;
    Poly h;

    /// Validates shapes and det(A) != 0.
    static SigmaDeltaSystem make(RatMatrix A, RatMatrix B, Poly h) {
        if (!A.is_square() || !B.is_square() || A.rows() != B.rows()) throw ShapeError("A and B must be n x n of the same size");
        if (h.is_zero()) throw ZeroPolynomial("denominator witness h must be nonzero");
        if (determinant(A).is_zero()) throw SingularSpecialization("det(A) is identically zero");
        SigmaDeltaSystem s;
        s.n = A.rows();
        s.A = std::move(A);
        s.B = std::move(B);
        s.h = std::move(h);
        return s;
    }

    friend bool operator==(const SigmaDeltaSystem&, const SigmaDeltaSystem&) = default;
};

struct DifferenceSystem {
    std::size_t n = 0;
    RatMatrix A;  // entries in Q(x)
};

struct DifferentialSystem {
    std::size_t n = 0;
    RatMatrix B;  // entries in Q(t)
};

/// Marker for an irrational specialization point of the shift variable.
struct NonRational {
    friend bool operator==(NonRational, NonRational) { return true; }
};
using ShiftPoint = std::variant<Rational, NonRational>;

/// sigma(B) A - delta(A) - A B, which must vanish identically.
inline RatMatrix integrability_residual(const SigmaDeltaSystem& s) {
    if (s.A.rows() != s.B.rows() || s.A.cols() != s.B.cols()) throw ShapeError("A and B dimensions differ");
    return apply_sigma(s.B) * s.A - apply_delta(s.A) - s.A * s.B;
}

inline MatrixCheck<RatFunc> check_integrability(const SigmaDeltaSystem& s) {
    RatMatrix r = integrability_residual(s);
    if (r.is_zero()) return MatrixCheck<RatFunc>::pass();
    return MatrixCheck<RatFunc>::fail(0, std::move(r));
}

/// Entrywise substitution var := value, rejecting identically vanishing denominators.
inline RatMatrix substitute(const RatMatrix& m, std::string_view var, const Rational& value) {
    return m.map([&](const RatFunc& f) {
        if (!f.defined_at(var, value))
            throw InvalidSpecialization("entry " + f.to_string() + " is undefined at " + std::string(var) + " = " + value.to_string());
        return f.evaluate(var, value);
    });
}

/// Does h(c2 + i) stay nonzero for every integer i?
///
/// h(r, t) vanishes identically exactly at the common rational roots r of its
/// t-coefficients; the orbit condition fails iff some such r has r - c2 in Z.
inline bool shift_orbit_nonvanishing(const Poly& h, const Rational& c2) {
    if (h.is_zero()) throw ZeroPolynomial("shift_orbit_nonvanishing of the zero polynomial");
    if (!h.contains(kShiftVar)) return true;
    Poly common;
    for (const auto& c : h.coefficients(kDiffVar)) common = gcd(common, c);
    if (common.is_constant()) return true;
    for (const auto& r : rational_root_find(common))
        if ((r - c2).is_integer()) return false;
    return true;
}

/// Substitutes t := c1 into A.
///
/// Requires h(x, c1) != 0 and every entry of A defined at t = c1; the result
/// must have nonzero determinant.
inline DifferenceSystem specialize_t(const SigmaDeltaSystem& s, const Rational& c1) {
    if (s.h.evaluate(kDiffVar, c1).is_zero())
        throw InvalidSpecialization("denominator witness h = " + s.h.to_string() + " vanishes at t = " + c1.to_string());
    RatMatrix a = substitute(s.A, kDiffVar, c1);
    if (determinant(a).is_zero()) throw SingularSpecialization("det(A) vanishes at t = " + c1.to_string());
    return {s.n, std::move(a)};
}

inline DifferentialSystem specialize_x(const SigmaDeltaSystem& s, const Rational& c2) {
    if (!shift_orbit_nonvanishing(s.h, c2))
        throw InvalidSpecialization("h = " + s.h.to_string() + " vanishes on the shift orbit of x = " + c2.to_string());
    return {s.n, substitute(s.B, kShiftVar, c2)};
}

/// Checks B(c+s) P_s = delta(P_s) + P_s B(c) for P_s = A(c+s-1)...A(c), 1 <= s <= s_max.
///
/// Only the window 0 <= i <= s_max is checked for definedness; A(c+i), B(c+i)
/// for the remaining integers are not examined.
inline MatrixCheck<RatFunc> shift_conjugation_check(const SigmaDeltaSystem& s, const Rational& c, std::size_t s_max) {
    std::vector<RatMatrix> a_at, b_at;
    for (std::size_t i = 0; i <= s_max; ++i) {
        Rational point = c + Rational(static_cast<long>(i));
        b_at.push_back(substitute(s.B, kShiftVar, point));
        if (i < s_max) {
            a_at.push_back(substitute(s.A, kShiftVar, point));
            if (determinant(a_at.back()).is_zero())
                throw InvalidSpecialization("det A vanishes at x = " + point.to_string());
        }
    }
    RatMatrix p = RatMatrix::identity(s.n);
    for (std::size_t step = 1; step <= s_max; ++step) {
        p = a_at[step - 1] * p;
        RatMatrix residual = b_at[step] * p - apply_delta(p) - p * b_at[0];
        if (!residual.is_zero()) return MatrixCheck<RatFunc>::fail(step, std::move(residual));
    }
    return MatrixCheck<RatFunc>::pass();
}

/// True when every denominator of A, A^{-1}, B divides a product of shifts
/// sigma^i(h) with |i| <= window.
inline bool denominators_supported_by_witness(const SigmaDeltaSystem& s, int window = 16) {
    std::vector<Poly> shifts;
    for (int i = -window; i <= window; ++i) shifts.push_back(s.h.shift(kShiftVar, Rational(i)));
    auto supported = [&](Poly q) {
        for (const auto& h : shifts) {
            while (!q.is_constant()) {
                Poly g = gcd(q, h);
                if (g.is_constant()) break;
                q = *exact_divide(q, g);
            }
        }
        return q.is_constant();
    };
    auto all = [&](const RatMatrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!supported(m(i, j).denominator())) return false;
        return true;
    };
    return all(s.A) && all(inverse(s.A)) && all(s.B);
}

}  // namespace sigmadelta
