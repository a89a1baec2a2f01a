#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sigmadelta/operators.hpp"

namespace sigmadelta {

// --- non-simple fixture ring ------------------------------------------------

/// Q[y_1, ..., y_k] with sigma(y_i) = lambda_i y_i and delta = 0. With two
/// generators sharing the same lambda the ring is not sigma-simple, and every
/// generalized Casoratian of (y_1, y_2) vanishes although they are linearly
/// independent over Q.
struct FixtureRing {
    std::vector<std::string> names;
    std::vector<Rational> sigma_factors;

    static std::shared_ptr<const FixtureRing> make(std::vector<std::string> names, std::vector<Rational> factors) {
        if (names.size() != factors.size()) throw ShapeError("fixture ring: one sigma factor per generator");
        for (const auto& f : factors)
            if (f.is_zero()) throw DomainError("fixture ring: sigma factors must be nonzero");
        for (const auto& n : names)
            if (n == kShiftVar || n == kDiffVar) throw DomainError("fixture ring: generator name '" + n + "' is reserved");
        return std::make_shared<const FixtureRing>(FixtureRing{std::move(names), std::move(factors)});
    }

    Rational factor_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return sigma_factors[i];
        throw DomainError("unknown fixture generator '" + name + "'");
    }
};

class FixtureElem {
public:
    FixtureElem() = default;
    FixtureElem(long c) : poly_(c) {}
    FixtureElem(Poly p, std::shared_ptr<const FixtureRing> ring) : poly_(std::move(p)), ring_(std::move(ring)) {}

    static FixtureElem generator(const std::shared_ptr<const FixtureRing>& ring, std::size_t i) {
        return FixtureElem(Poly::variable(ring->names.at(i)), ring);
    }

    const Poly& poly() const noexcept { return poly_; }
    const std::shared_ptr<const FixtureRing>& ring() const noexcept { return ring_; }
    bool is_zero() const noexcept { return poly_.is_zero(); }
    std::string to_string() const { return poly_.to_string(); }

    FixtureElem operator-() const { return FixtureElem(-poly_, ring_); }
    friend FixtureElem operator+(const FixtureElem& a, const FixtureElem& b) { return FixtureElem(a.poly_ + b.poly_, merge(a, b)); }
    friend FixtureElem operator-(const FixtureElem& a, const FixtureElem& b) { return FixtureElem(a.poly_ - b.poly_, merge(a, b)); }
    friend FixtureElem operator*(const FixtureElem& a, const FixtureElem& b) { return FixtureElem(a.poly_ * b.poly_, merge(a, b)); }
    friend bool operator==(const FixtureElem& a, const FixtureElem& b) { return a.poly_ == b.poly_; }

private:
    Poly poly_;
    std::shared_ptr<const FixtureRing> ring_;

    static std::shared_ptr<const FixtureRing> merge(const FixtureElem& a, const FixtureElem& b) {
        if (!a.ring_) return b.ring_;
        if (b.ring_ && a.ring_ != b.ring_) throw DomainError("mixing elements of different fixture rings");
        return a.ring_;
    }
};

inline bool is_zero(const FixtureElem& e) { return e.is_zero(); }

namespace detail {

inline FixtureElem scale_generators(const FixtureElem& e, bool inverse) {
    if (!e.ring() || e.poly().is_constant()) return e;
    const auto& ring = *e.ring();
    Poly image = e.poly().evaluate_in<Poly>([&](const std::string& name) {
        Rational f = ring.factor_of(name);
        return Poly(inverse ? f.inverse() : f) * Poly::variable(name);
    });
    return FixtureElem(std::move(image), e.ring());
}

}  // namespace detail

inline FixtureElem apply_sigma(const FixtureElem& e) { return detail::scale_generators(e, false); }
inline FixtureElem apply_sigma_inverse(const FixtureElem& e) { return detail::scale_generators(e, true); }
inline FixtureElem apply_delta(const FixtureElem& e) { return FixtureElem(Poly(), e.ring()); }

// --- Q-linear coordinates ---------------------------------------------------

namespace detail {

using MonomialKey = std::vector<std::pair<std::string, unsigned>>;

inline std::map<MonomialKey, Rational> monomial_coefficients(const Poly& p) {
    std::map<MonomialKey, Rational> out;
    const auto& vars = p.variables();
    for (const auto& [e, c] : p.terms()) {
        MonomialKey key;
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (e[i]) key.emplace_back(vars[i], e[i]);
        out.emplace(std::move(key), c);
    }
    return out;
}

/// Rows of Q-coordinates (one column per element) of polynomials.
inline std::vector<std::vector<Rational>> poly_coordinate_rows(const std::vector<Poly>& polys) {
    std::map<MonomialKey, std::vector<Rational>> rows;
    for (std::size_t j = 0; j < polys.size(); ++j)
        for (auto& [key, c] : monomial_coefficients(polys[j])) {
            auto [it, inserted] = rows.try_emplace(key, std::vector<Rational>(polys.size(), Rational(0)));
            it->second[j] = c;
        }
    std::vector<std::vector<Rational>> out;
    for (auto& [key, row] : rows) out.push_back(std::move(row));
    return out;
}

/// Clearing a common denominator turns Q-relations among rational functions
/// into Q-relations among polynomials.
inline std::vector<std::vector<Rational>> ratfunc_coordinate_rows(const std::vector<RatFunc>& fs) {
    Poly common(1);
    for (const auto& f : fs) common = *exact_divide(common * f.denominator(), gcd(common, f.denominator()));
    std::vector<Poly> numerators;
    for (const auto& f : fs) numerators.push_back(f.numerator() * *exact_divide(common, f.denominator()));
    return poly_coordinate_rows(numerators);
}

inline std::vector<std::vector<Rational>> coordinate_rows(const std::vector<RatFunc>& elems) { return ratfunc_coordinate_rows(elems); }

inline std::vector<std::vector<Rational>> coordinate_rows(const std::vector<TowerElem>& elems) {
    std::map<std::pair<int, int>, std::vector<RatFunc>> parts;
    for (std::size_t j = 0; j < elems.size(); ++j)
        for (const auto& [k, c] : elems[j].coefficients()) {
            for (int part = 0; part < 2; ++part) {
                auto [it, inserted] = parts.try_emplace({k, part}, std::vector<RatFunc>(elems.size()));
                it->second[j] = part == 0 ? c.real() : c.irrational();
            }
        }
    std::vector<std::vector<Rational>> out;
    for (auto& [key, fs] : parts)
        for (auto& row : ratfunc_coordinate_rows(fs)) out.push_back(std::move(row));
    return out;
}

inline std::vector<std::vector<Rational>> coordinate_rows(const std::vector<FixtureElem>& elems) {
    std::vector<Poly> polys;
    for (const auto& e : elems) polys.push_back(e.poly());
    return poly_coordinate_rows(polys);
}

}  // namespace detail

/// Basis of the right nullspace of a Q-matrix given by rows with `cols` columns.
inline std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> rows, std::size_t cols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Rational inv = rows[r][c].inverse();
        for (auto& v : rows[r]) v = v * inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Rational f = rows[i][c];
            for (std::size_t k = 0; k < cols; ++k) rows[i][k] = rows[i][k] - f * rows[r][k];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = Rational(1);
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Scales to coprime integers with the first nonzero entry positive.
inline std::vector<Rational> primitive_integer_vector(std::vector<Rational> v) {
    mpz_class lcm_den = 1, gcd_num = 0;
    for (const auto& c : v) {
        if (c.is_zero()) continue;
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
    }
    for (auto& c : v) c = c * Rational(lcm_den, 1);
    for (const auto& c : v) mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.numerator().get_mpz_t());
    if (gcd_num == 0) return v;
    int sign = 0;
    for (const auto& c : v)
        if (!c.is_zero()) {
            sign = c.sign();
            break;
        }
    Rational scale(sign < 0 ? mpz_class(-1) : mpz_class(1), gcd_num);
    for (auto& c : v) c = c * scale;
    return v;
}

// --- the criterion ----------------------------------------------------------

enum class RingMode { SimpleRing, NonSimpleFixture };

template <class E>
struct DependenceVerdict {
    enum class Kind { Independent, Dependent, Inconclusive };

    Kind kind = Kind::Inconclusive;
    std::vector<ThetaWord> thetas;     // Independent
    std::optional<E> det;              // Independent
    std::vector<Rational> constants;   // Dependent
    unsigned bound = 0;                // Inconclusive: the search bound used

    static DependenceVerdict independent(std::vector<ThetaWord> thetas, E det) {
        DependenceVerdict v;
        v.kind = Kind::Independent;
        v.thetas = std::move(thetas);
        v.det = std::move(det);
        return v;
    }
    static DependenceVerdict dependent(std::vector<Rational> constants) {
        DependenceVerdict v;
        v.kind = Kind::Dependent;
        v.constants = std::move(constants);
        return v;
    }
    static DependenceVerdict inconclusive(unsigned bound) {
        DependenceVerdict v;
        v.bound = bound;
        return v;
    }

    std::string kind_name() const {
        switch (kind) {
            case Kind::Independent: return "independent";
            case Kind::Dependent: return "dependent";
            default: return "inconclusive";
        }
    }
};

template <class E>
Matrix<E> wronskian_matrix(const std::vector<E>& elems, const std::vector<ThetaWord>& thetas) {
    if (elems.empty()) throw EmptyInput("wronskian_matrix of an empty list");
    if (elems.size() != thetas.size()) throw ShapeError("wronskian_matrix needs as many words as elements");
    Matrix<E> m(elems.size(), elems.size());
    for (std::size_t i = 0; i < thetas.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j) m(i, j) = apply_theta(thetas[i], elems[j]);
    return m;
}

enum class ClassicalKind { Wronskian, Casoratian };

template <class E>
E classical_determinant(const std::vector<E>& elems, ClassicalKind kind) {
    std::vector<ThetaWord> thetas;
    for (unsigned i = 0; i < elems.size(); ++i)
        thetas.push_back(kind == ClassicalKind::Wronskian ? ThetaWord{0, i} : ThetaWord{i, 0});
    return determinant(wronskian_matrix(elems, thetas));
}

template <class E>
bool verify_dependence_certificate(const std::vector<E>& elems, const std::vector<Rational>& constants) {
    if (elems.size() != constants.size()) throw ShapeError("one constant per element");
    E sum(0);
    for (std::size_t i = 0; i < elems.size(); ++i) sum = sum + E(constants[i]) * elems[i];
    return is_zero(sum);
}

template <>
inline bool verify_dependence_certificate(const std::vector<FixtureElem>& elems, const std::vector<Rational>& constants) {
    if (elems.size() != constants.size()) throw ShapeError("one constant per element");
    Poly sum;
    for (std::size_t i = 0; i < elems.size(); ++i) sum += Poly(constants[i]) * elems[i].poly();
    return sum.is_zero();
}

/// First nonzero Q-relation among the elements, as primitive integers.
template <class E>
std::optional<std::vector<Rational>> rational_relation(const std::vector<E>& elems) {
    auto basis = rational_nullspace(detail::coordinate_rows(elems), elems.size());
    if (basis.empty()) return std::nullopt;
    return primitive_integer_vector(std::move(basis.front()));
}

namespace detail {

template <class E>
void check_mode(RingMode mode) {
    constexpr bool fixture = std::is_same_v<E, FixtureElem>;
    if (fixture && mode != RingMode::NonSimpleFixture) throw DomainError("fixture elements need the non-simple fixture mode");
    if (!fixture && mode != RingMode::SimpleRing) throw DomainError("the non-simple fixture mode needs fixture elements");
}

/// Calls visit(indices) for each (k)-subset of {1, ..., n-1} in lexicographic order
/// until it returns true.
template <class Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
    if (k == 0) return visit(std::vector<std::size_t>{});
    if (n < k + 1) return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        if (visit(idx)) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// Decides linear dependence over the constants by the generalized
/// Wronskian/Casoratian criterion, searching theta-tuples up to length l_max.
///
/// Dependent verdicts carry a Q-relation that was verified exactly;
/// Independent verdicts carry a tuple (starting with the identity word) whose
/// determinant is nonzero. If neither is found up to l_max the result is
/// Inconclusive: the criterion gives no a-priori bound.
template <class E>
DependenceVerdict<E> decide_dependence(const std::vector<E>& elems, RingMode mode, std::optional<unsigned> l_max = std::nullopt) {
    if (elems.empty()) throw EmptyInput("decide_dependence of an empty list");
    detail::check_mode<E>(mode);
    const unsigned bound = l_max.value_or(static_cast<unsigned>(2 * elems.size()));

    if (auto relation = rational_relation(elems)) {
        if (!verify_dependence_certificate(elems, *relation)) throw DomainError("internal: relation failed to verify");
        return DependenceVerdict<E>::dependent(std::move(*relation));
    }

    const std::size_t m = elems.size();
    std::optional<DependenceVerdict<E>> found;
    for (unsigned L = 0; L <= bound && !found; ++L) {
        auto words = enumerate_theta(L);
        detail::for_each_combination(words.size(), m - 1, [&](const std::vector<std::size_t>& idx) {
            std::vector<ThetaWord> tuple = {words.front()};
            bool reaches_L = L == 0;
            for (auto i : idx) {
                tuple.push_back(words[i]);
                reaches_L = reaches_L || words[i].length() == L;
            }
            if (!reaches_L) return false;
            E det = determinant(wronskian_matrix(elems, tuple));
            if (is_zero(det)) return false;
            found = DependenceVerdict<E>::independent(std::move(tuple), std::move(det));
            return true;
        });
    }
    if (found) return *found;
    return DependenceVerdict<E>::inconclusive(bound);
}

/// True when every m x m determinant over words of length <= bound vanishes
/// (all m-subsets, not only those containing the identity word).
template <class E>
bool all_determinants_vanish(const std::vector<E>& elems, unsigned bound) {
    auto words = enumerate_theta(bound);
    words.insert(words.begin(), ThetaWord{});  // index 0 is a dummy; subsets range over 1..n
    const std::size_t m = elems.size();
    bool nonzero = detail::for_each_combination(words.size(), m, [&](const std::vector<std::size_t>& idx) {
        std::vector<ThetaWord> tuple;
        for (auto i : idx) tuple.push_back(words[i]);
        return !is_zero(determinant(wronskian_matrix(elems, tuple)));
    });
    return !nonzero;
}

}  // namespace sigmadelta
