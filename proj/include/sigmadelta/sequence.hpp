#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sigmadelta/chebyshev.hpp"

namespace sigmadelta {

/// A sequence (a_0, a_1, ...) considered up to finitely many initial terms.
///
/// Values before `start` are zero; from `start` on they come from the
/// generator. Germ equality can only be checked on a finite window, see
/// germ_equal.
template <class T>
class GermSeq {
public:
    using Generator = std::function<T(std::size_t)>;

    GermSeq(std::size_t start, Generator generator, std::size_t window = 16)
        : start_(start), generator_(std::move(generator)), window_(window) {}

    /// Sequence given by an explicit prefix; indices past the prefix throw.
    static GermSeq materialized(std::vector<T> prefix, std::size_t window = 16) {
        auto values = std::make_shared<const std::vector<T>>(std::move(prefix));
        return GermSeq(
            0,
            [values](std::size_t i) -> T {
                if (i >= values->size()) throw DomainError("index " + std::to_string(i) + " past the materialized prefix");
                return (*values)[i];
            },
            window);
    }

    std::size_t start() const noexcept { return start_; }
    std::size_t window() const noexcept { return window_; }

    T at(std::size_t i) const { return i < start_ ? T(0) : generator_(i); }
    T operator[](std::size_t i) const { return at(i); }

    std::vector<T> prefix(std::size_t count) const {
        std::vector<T> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(at(i));
        return out;
    }

    /// (a_1, a_2, ...): the sequence-ring shift.
    GermSeq shifted() const {
        GermSeq self = *this;
        return GermSeq(start_ ? start_ - 1 : 0, [self](std::size_t i) { return self.at(i + 1); }, window_);
    }

    template <class F>
    GermSeq map(F f) const {
        GermSeq self = *this;
        return GermSeq(start_, [self, f](std::size_t i) { return f(self.at(i)); }, window_);
    }

    friend GermSeq operator+(const GermSeq& a, const GermSeq& b) {
        return GermSeq(std::min(a.start_, b.start_), [a, b](std::size_t i) { return a.at(i) + b.at(i); }, std::max(a.window_, b.window_));
    }
    friend GermSeq operator*(const GermSeq& a, const GermSeq& b) {
        return GermSeq(std::max(a.start_, b.start_), [a, b](std::size_t i) { return a.at(i) * b.at(i); }, std::max(a.window_, b.window_));
    }

private:
    std::size_t start_;
    Generator generator_;
    std::size_t window_;
};

/// Entrywise delta.
template <class T>
GermSeq<T> apply_delta(const GermSeq<T>& a) {
    return a.map([](const T& v) { return apply_delta(v); });
}

/// Smallest d <= window with a_i = b_i for d <= i <= 2*window, if any.
template <class T>
std::optional<std::size_t> germ_agreement_index(const GermSeq<T>& a, const GermSeq<T>& b, std::size_t window) {
    if (window == 0) throw DomainError("germ comparison window must be positive");
    std::size_t d = 2 * window + 1;
    for (std::size_t i = 2 * window + 1; i-- > 0;) {
        if (!(a.at(i) == b.at(i))) break;
        d = i;
    }
    if (d > window) return std::nullopt;
    return d;
}

/// Bounded germ equality: exact agreement on [window, 2*window].
template <class T>
bool germ_equal(const GermSeq<T>& a, const GermSeq<T>& b, std::size_t window) {
    return germ_agreement_index(a, b, window).has_value();
}

/// First index from which f(c + s) is defined for every s (nu_f).
///
/// f(c + s, t) has a vanishing denominator exactly when c + s is a common
/// rational root of the t-coefficients of the denominator.
inline std::size_t embedding_offset(const RatFunc& f, const Rational& c) {
    const Poly& den = f.denominator();
    if (!den.contains(kShiftVar)) return 0;
    Poly common;
    for (const auto& coeff : den.coefficients(kDiffVar)) common = gcd(common, coeff);
    if (common.is_constant()) return 0;
    std::size_t nu = 0;
    for (const auto& r : rational_root_find(common)) {
        Rational k = r - c;
        if (k.is_integer() && k.sign() >= 0) nu = std::max<std::size_t>(nu, mpz_class(k.numerator()).get_ui() + 1);
    }
    return nu;
}

/// (0, ..., 0, f(c + nu_f), f(c + nu_f + 1), ...) with t kept symbolic.
inline GermSeq<RatFunc> embed_ratfunc(const RatFunc& f, const Rational& c, std::size_t window = 16) {
    return GermSeq<RatFunc>(
        embedding_offset(f, c), [f, c](std::size_t i) { return f.evaluate(kShiftVar, c + Rational(static_cast<long>(i))); }, window);
}

namespace detail {

template <class T>
Matrix<T> lift(const RatMatrix& m) {
    return m.map([](const RatFunc& v) { return T(v); });
}

inline RatMatrix shifted_at(const RatMatrix& m, const Rational& c, std::size_t s) {
    return substitute(m, kShiftVar, c + Rational(static_cast<long>(s)));
}

}  // namespace detail

/// (W_0 U, ..., W_N U) with W_0 = I and W_s = A(c+s-1) W_{s-1}.
template <class T>
std::vector<Matrix<T>> fundamental_sequence(const RatMatrix& A, const Rational& c, const Matrix<T>& U, std::size_t N) {
    if (!A.is_square() || U.rows() != A.rows()) throw ShapeError("fundamental_sequence: A and U shapes differ");
    std::vector<Matrix<T>> out;
    out.reserve(N + 1);
    out.push_back(U);
    for (std::size_t s = 1; s <= N; ++s) {
        RatMatrix a = detail::shifted_at(A, c, s - 1);
        if (determinant(a).is_zero())
            throw InvalidSpecialization("A is singular at x = " + (c + Rational(static_cast<long>(s - 1))).to_string());
        out.push_back(detail::lift<T>(a) * out.back());
    }
    return out;
}

/// seq[s+1] = A(c+s) seq[s] for 0 <= s < N.
template <class T>
MatrixCheck<T> verify_sigma_solution(const std::vector<Matrix<T>>& seq, const RatMatrix& A, const Rational& c, std::size_t N) {
    if (seq.size() < N + 1) throw ShapeError("sequence shorter than N + 1");
    for (std::size_t s = 0; s < N; ++s) {
        Matrix<T> residual = seq[s + 1] - detail::lift<T>(detail::shifted_at(A, c, s)) * seq[s];
        if (!residual.is_zero()) return MatrixCheck<T>::fail(s, std::move(residual));
    }
    return MatrixCheck<T>::pass();
}

/// delta(seq[s]) = B(c+s) seq[s] for 0 <= s <= N.
template <class T>
MatrixCheck<T> verify_delta_solution(const std::vector<Matrix<T>>& seq, const RatMatrix& B, const Rational& c, std::size_t N) {
    if (seq.size() < N + 1) throw ShapeError("sequence shorter than N + 1");
    for (std::size_t s = 0; s <= N; ++s) {
        Matrix<T> residual = apply_delta(seq[s]) - detail::lift<T>(detail::shifted_at(B, c, s)) * seq[s];
        if (!residual.is_zero()) return MatrixCheck<T>::fail(s, std::move(residual));
    }
    return MatrixCheck<T>::pass();
}

// --- Chebyshev witness ------------------------------------------------------

/// T_m from the explicit sum (m/2) sum_l (-1)^l (m-l-1)! / (l! (m-2l)!) (2t)^(m-2l), m >= 1.
inline Poly chebyshev_sum_formula(unsigned m) {
    if (m == 0) throw DomainError("the sum formula needs m >= 1");
    auto factorial = [](unsigned k) {
        mpz_class f = 1;
        for (unsigned i = 2; i <= k; ++i) f *= i;
        return f;
    };
    Poly out;
    for (unsigned l = 0; 2 * l <= m; ++l) {
        Rational c(factorial(m - l - 1), factorial(l) * factorial(m - 2 * l));
        if (l % 2) c = -c;
        c = c * Rational(static_cast<long>(m)) / Rational(2) * Rational(2).pow(static_cast<long>(m - 2 * l));
        out += Poly(c) * Poly::variable(kDiffVar, m - 2 * l);
    }
    return out;
}

struct ChebyshevWitnessRow {
    unsigned m = 0;
    Poly t_m;              // from the recurrence
    Poly t_m_formula;      // from the explicit sum
    RatMatrix sigma_residual;  // Y_{m+1} - A Y_m
    RatMatrix delta_residual;  // delta(Y_m) - B(m) Y_m

    bool formula_agrees() const { return t_m == t_m_formula; }
    bool residuals_zero() const { return sigma_residual.is_zero() && delta_residual.is_zero(); }
};

/// Recurrence T_{k+1} = 2t T_k - T_{k-1} from T_0 = 1, T_1 = t, T_2 = seed2,
/// checked on Y_m = (T_{m-1}, T_m) for 1 <= m <= m_max.
///
/// Y_m (not (T_m, T_{m+1})) is the vector that satisfies the delta equation
/// with the B of chebyshev_system(); see the linear_systems tests.
inline std::vector<ChebyshevWitnessRow> chebyshev_witness(unsigned m_max, std::optional<Poly> seed2 = std::nullopt) {
    if (m_max < 2) throw DomainError("chebyshev_witness needs m_max >= 2");
    const Poly t = Poly::variable(kDiffVar);
    std::vector<Poly> T = {Poly(1), t, seed2.value_or(Poly(2) * t * t - Poly(1))};
    while (T.size() < m_max + 2) T.push_back(Poly(2) * t * T[T.size() - 1] - T[T.size() - 2]);

    const SigmaDeltaSystem sys = chebyshev_system();
    auto column = [&](unsigned m) { return RatMatrix{{RatFunc(T[m - 1])}, {RatFunc(T[m])}}; };
    std::vector<ChebyshevWitnessRow> rows;
    for (unsigned m = 1; m <= m_max; ++m) {
        ChebyshevWitnessRow row;
        row.m = m;
        row.t_m = T[m];
        row.t_m_formula = chebyshev_sum_formula(m);
        RatMatrix y = column(m);
        row.sigma_residual = column(m + 1) - sys.A * y;
        row.delta_residual = apply_delta(y) - substitute(sys.B, kShiftVar, Rational(static_cast<long>(m))) * y;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sigmadelta
