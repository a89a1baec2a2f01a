#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sigmadelta/chebyshev.hpp"
#include "sigmadelta/operators.hpp"
#include "sigmadelta/param_poly.hpp"

namespace sigmadelta {

// --- algebraic subgroups of GL2 ---------------------------------------------

enum class CatalogTag { FullG, DiagTorus, DiagTorusMuQ, DihedralMuQ, Trivial, Custom };

enum class Shape { Diagonal, Antidiagonal };

inline const char* shape_name(Shape s) { return s == Shape::Diagonal ? "diag" : "antidiag"; }

/// diag(xi, 1/xi) or antidiag(xi, 1/xi); order 0 leaves xi free, otherwise xi^order = 1.
struct GroupTemplate {
    Shape shape = Shape::Diagonal;
    unsigned order = 0;

    std::string to_string() const {
        std::string out = std::string(shape_name(shape)) + "(xi, xi^(-1))";
        if (order) out += " with xi^" + std::to_string(order) + " = 1";
        return out;
    }
    friend bool operator==(const GroupTemplate&, const GroupTemplate&) = default;
};

template <class T>
Matrix<T> template_matrix(Shape shape, const T& param) {
    T inv = param.inverse();
    if (shape == Shape::Diagonal) return Matrix<T>{{param, T(0)}, {T(0), inv}};
    return Matrix<T>{{T(0), param}, {inv, T(0)}};
}

/// Symbolic element of a template, with the given parameter symbol.
inline Matrix<ParamPoly> template_matrix(const GroupTemplate& t, ParamPoly::Param p = ParamPoly::Xi) {
    return template_matrix(t.shape, ParamPoly::monomial(p, 1, t.order));
}

/// Shape of the product of two template elements.
inline Shape product_shape(Shape a, Shape b) { return a == b ? Shape::Diagonal : Shape::Antidiagonal; }

struct AlgSubgroup {
    CatalogTag tag = CatalogTag::Custom;
    unsigned q = 0;                  // DiagTorusMuQ / DihedralMuQ
    std::vector<Poly> equations;     // in g11, g12, g21, g22
    std::vector<GroupTemplate> templates;

    std::string name() const {
        switch (tag) {
            case CatalogTag::FullG: return "FullG";
            case CatalogTag::DiagTorus: return "DiagTorus";
            case CatalogTag::DiagTorusMuQ: return "DiagTorusMuQ(" + std::to_string(q) + ")";
            case CatalogTag::DihedralMuQ: return "DihedralMuQ(" + std::to_string(q) + ")";
            case CatalogTag::Trivial: return "Trivial";
            default: return "Custom";
        }
    }

    std::vector<std::string> equation_strings() const {
        std::vector<std::string> out;
        for (const auto& e : equations) out.push_back(e.to_string());
        return out;
    }
};

namespace group_vars {

inline Poly g(int i, int j) { return Poly::variable("g" + std::to_string(i) + std::to_string(j)); }

inline std::vector<Poly> full_g_equations() {
    return {g(1, 1) * g(1, 2), g(2, 1) * g(2, 2), g(1, 1) * g(2, 2) + g(1, 2) * g(2, 1) - Poly(1)};
}

inline std::vector<Poly> torus_equations() { return {g(1, 2), g(2, 1), g(1, 1) * g(2, 2) - Poly(1)}; }

}  // namespace group_vars

/// {diag(xi, 1/xi)} union {antidiag(xi, 1/xi)}: g11 g12 = 0, g21 g22 = 0, g11 g22 + g12 g21 = 1.
inline AlgSubgroup chebyshev_full_group() {
    return {CatalogTag::FullG, 0, group_vars::full_g_equations(), {{Shape::Diagonal, 0}, {Shape::Antidiagonal, 0}}};
}

inline AlgSubgroup diag_torus() { return {CatalogTag::DiagTorus, 0, group_vars::torus_equations(), {{Shape::Diagonal, 0}}}; }

inline AlgSubgroup diag_torus_mu(unsigned q) {
    if (q == 0) throw DomainError("root-of-unity order must be positive");
    auto eq = group_vars::torus_equations();
    eq.push_back(group_vars::g(1, 1).pow(q) - Poly(1));
    return {CatalogTag::DiagTorusMuQ, q, std::move(eq), {{Shape::Diagonal, q}}};
}

/// Both templates with xi^q = 1. On G, g11^q + g12^q = 1 says exactly that
/// the nonzero one of g11, g12 is a q-th root of unity.
inline AlgSubgroup dihedral_mu(unsigned q) {
    if (q == 0) throw DomainError("root-of-unity order must be positive");
    auto eq = group_vars::full_g_equations();
    eq.push_back(group_vars::g(1, 1).pow(q) + group_vars::g(1, 2).pow(q) - Poly(1));
    return {CatalogTag::DihedralMuQ, q, std::move(eq), {{Shape::Diagonal, q}, {Shape::Antidiagonal, q}}};
}

inline AlgSubgroup trivial_group() {
    using group_vars::g;
    return {CatalogTag::Trivial, 0, {g(1, 2), g(2, 1), g(1, 1) - Poly(1), g(2, 2) - Poly(1)}, {{Shape::Diagonal, 1}}};
}

/// Group given only by equations; no templates, so no factorization support.
inline AlgSubgroup custom_group(std::vector<Poly> equations) { return {CatalogTag::Custom, 0, std::move(equations), {}}; }

namespace detail {

inline bool is_unit(const Rational& r) { return !r.is_zero(); }
inline bool is_unit(const QuadRational& q) { return !q.norm().is_zero(); }
inline bool is_unit(const ParamPoly& p) { return p.is_monomial_unit(); }

}  // namespace detail

/// Every defining equation vanishes at g and det(g) is a unit of the entry ring.
///
/// For ParamPoly entries, vanishing is modulo xi^q - 1 as declared by the
/// entries themselves; only monomial determinants are accepted as units.
template <class T>
bool membership(const Matrix<T>& g, const AlgSubgroup& H) {
    if (g.rows() != 2 || g.cols() != 2) throw ShapeError("group elements are 2 x 2");
    auto value_of = [&](const std::string& name) -> T {
        if (name.size() == 3 && name[0] == 'g' && (name[1] == '1' || name[1] == '2') && (name[2] == '1' || name[2] == '2'))
            return g(name[1] - '1', name[2] - '1');
        throw DomainError("group equation mentions unknown variable '" + name + "'");
    };
    for (const auto& eq : H.equations)
        if (!is_zero(eq.template evaluate_in<T>(value_of))) return false;
    return detail::is_unit(determinant(g));
}

// --- root-of-unity order and the two stabilizers ------------------------------

/// alpha = c1 + sqrt(c1^2 - 1) in Q(sqrt(c1^2 - 1)).
inline QuadRational chebyshev_alpha(const Rational& c1) { return make_quadratic(c1, Rational(1), c1 * c1 - Rational(1)); }

/// Multiplicative order of alpha = c1 + sqrt(c1^2 - 1), if finite.
///
/// alpha + 1/alpha = 2 c1, so a finite order q needs 2 cos(2 pi k / q) rational:
/// c1 in {1, -1, 0, 1/2, -1/2} with q = 1, 2, 4, 6, 3. The table value is
/// confirmed by exact powers before it is returned.
inline std::optional<unsigned> root_of_unity_order(const Rational& c1) {
    static const std::vector<std::pair<Rational, unsigned>> table = {
        {Rational(1), 1}, {Rational(-1), 2}, {Rational(0), 4}, {Rational(1) / Rational(2), 6}, {Rational(-1) / Rational(2), 3}};
    for (const auto& [c, q] : table) {
        if (!(c == c1)) continue;
        QuadRational alpha = chebyshev_alpha(c1);
        QuadRational power(1);
        for (unsigned j = 1; j <= q; ++j) {
            power = power * alpha;
            if ((power == QuadRational(1)) != (j == q)) throw DomainError("internal: root-of-unity table disagrees with alpha^" + std::to_string(j));
        }
        return q;
    }
    return std::nullopt;
}

/// Galois group of the difference system at t = c1 (stab of the maximal ideal).
inline AlgSubgroup stab_sigma(const Rational& c1) {
    specialize_t(chebyshev_system(), c1);
    auto q = root_of_unity_order(c1);
    return q ? diag_torus_mu(*q) : diag_torus();
}

/// Galois group of the differential system at x = c2.
inline AlgSubgroup stab_delta(const ShiftPoint& c2) {
    if (std::holds_alternative<NonRational>(c2)) return chebyshev_full_group();
    const Rational& c = std::get<Rational>(c2);
    specialize_x(chebyshev_system(), c);
    return dihedral_mu(static_cast<unsigned>(mpz_class(c.denominator()).get_ui()));
}

// --- Picard-Vessiot relations -------------------------------------------------

struct PvCheck {
    bool passed = true;
    std::string which;  // f1, f2, f3, sigma or delta
    Matrix<TowerElem> residual;

    explicit operator bool() const noexcept { return passed; }
};

/// Checks f1 = X11 X12 - 1, f2 = X21 X22 - 1, f3 = (X11 X22)^2 - 2t X11 X22 + 1
/// at X = W, then sigma(W) = A W and delta(W) = B W for the Chebyshev system.
inline PvCheck verify_pv_relations(const Matrix<TowerElem>& W = chebyshev::fundamental_matrix()) {
    if (W.rows() != 2 || W.cols() != 2) throw ShapeError("W must be 2 x 2");
    const TowerElem t(RatFunc::variable(kDiffVar));
    const TowerElem u = W(0, 0) * W(1, 1);
    const std::vector<std::pair<std::string, TowerElem>> relations = {
        {"f1", W(0, 0) * W(0, 1) - TowerElem(1)},
        {"f2", W(1, 0) * W(1, 1) - TowerElem(1)},
        {"f3", u * u - TowerElem(2) * t * u + TowerElem(1)},
    };
    for (const auto& [name, value] : relations)
        if (!value.is_zero()) return {false, name, Matrix<TowerElem>{{value}}};

    const auto sys = chebyshev_system();
    auto lift = [](const RatMatrix& m) { return m.map([](const RatFunc& f) { return TowerElem(f); }); };
    Matrix<TowerElem> sigma_res = apply_sigma(W) - lift(sys.A) * W;
    if (!sigma_res.is_zero()) return {false, "sigma", sigma_res};
    Matrix<TowerElem> delta_res = apply_delta(W) - lift(sys.B) * W;
    if (!delta_res.is_zero()) return {false, "delta", delta_res};
    return {};
}

// --- quotient ring for the sigma-stability check ------------------------------

/// Element of Q(sqrt d)[X11, 1/X11][u] / (u^2 - 2c u + 1), d = c^2 - 1.
///
/// u stands for X11 X22; the remaining coordinates are X12 = 1/X11 and
/// X21 = 1/X22 = X11/u. Coefficients are kept as a + b u.
class QuotientRingElem {
public:
    struct Coeff {
        QuadRational a, b;
        friend bool operator==(const Coeff&, const Coeff&) = default;
    };

    explicit QuotientRingElem(Rational c) : c_(std::move(c)) {}
    QuotientRingElem(Rational c, const QuadRational& constant) : c_(std::move(c)) { add(0, {constant, QuadRational(0)}); }

    static QuotientRingElem u(const Rational& c) {
        QuotientRingElem e(c);
        e.add(0, {QuadRational(0), QuadRational(1)});
        return e;
    }
    static QuotientRingElem x11(const Rational& c, int power = 1) {
        QuotientRingElem e(c);
        e.add(power, {QuadRational(1), QuadRational(0)});
        return e;
    }
    static QuotientRingElem x12(const Rational& c) { return x11(c, -1); }
    /// 1/u = 2c - u
    static QuotientRingElem u_inverse(const Rational& c) { return QuotientRingElem(c, QuadRational(Rational(2) * c)) - u(c); }
    static QuotientRingElem x21(const Rational& c) { return x11(c) * u_inverse(c); }
    static QuotientRingElem x22(const Rational& c) { return u(c) * x11(c, -1); }

    const Rational& c() const noexcept { return c_; }
    const std::map<int, Coeff>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// X -> A(c) X: sigma(X11) = X21, sigma(X12) = X22, sigma(X21) = -X11 + 2c X21,
    /// sigma(X22) = -X12 + 2c X22. Constants in Q(sqrt d) are fixed.
    QuotientRingElem sigma() const {
        const QuotientRingElem two_c(c_, QuadRational(Rational(2) * c_));
        const QuotientRingElem sx11 = x21(c_), sx12 = x22(c_);
        const QuotientRingElem sx22 = -x12(c_) + two_c * x22(c_);
        const QuotientRingElem su = sx11 * sx22;
        QuotientRingElem out(c_);
        for (const auto& [k, co] : coeffs_) {
            QuotientRingElem term = QuotientRingElem(c_, co.a) + QuotientRingElem(c_, co.b) * su;
            const QuotientRingElem& base = k >= 0 ? sx11 : sx12;
            for (int i = 0; i < (k >= 0 ? k : -k); ++i) term = term * base;
            out = out + term;
        }
        return out;
    }

    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (const auto& [k, co] : coeffs_) {
            std::string coeff;
            if (!co.a.is_zero()) coeff = co.a.to_string("sqrt(" + disc_string() + ")");
            if (!co.b.is_zero()) {
                std::string b = co.b.to_string("sqrt(" + disc_string() + ")");
                std::string bu = b == "1" ? "u" : "(" + b + ")*u";
                coeff = coeff.empty() ? bu : coeff + " + " + bu;
            }
            std::string term = k == 0 ? coeff : "(" + coeff + ")*X11" + (k == 1 ? "" : "^(" + std::to_string(k) + ")");
            out = out.empty() ? term : out + " + " + term;
        }
        return out;
    }

    QuotientRingElem operator-() const {
        QuotientRingElem out(c_);
        for (const auto& [k, co] : coeffs_) out.add(k, {-co.a, -co.b});
        return out;
    }
    friend QuotientRingElem operator+(const QuotientRingElem& x, const QuotientRingElem& y) {
        check_same(x, y);
        QuotientRingElem out = x;
        for (const auto& [k, co] : y.coeffs_) out.add(k, co);
        return out;
    }
    friend QuotientRingElem operator-(const QuotientRingElem& x, const QuotientRingElem& y) { return x + (-y); }
    friend QuotientRingElem operator*(const QuotientRingElem& x, const QuotientRingElem& y) {
        check_same(x, y);
        QuotientRingElem out(x.c_);
        const QuadRational two_c(Rational(2) * x.c_);
        for (const auto& [i, p] : x.coeffs_)
            for (const auto& [j, r] : y.coeffs_) {
                // (a + b u)(a' + b' u) with u^2 = 2c u - 1
                QuadRational uu = p.b * r.b;
                out.add(i + j, {p.a * r.a - uu, p.a * r.b + p.b * r.a + two_c * uu});
            }
        return out;
    }
    friend bool operator==(const QuotientRingElem& x, const QuotientRingElem& y) { return (x - y).is_zero(); }

private:
    Rational c_;
    std::map<int, Coeff> coeffs_;

    std::string disc_string() const { return (c_ * c_ - Rational(1)).to_string(); }

    static void check_same(const QuotientRingElem& x, const QuotientRingElem& y) {
        if (!(x.c_ == y.c_)) throw DomainError("quotient ring elements for different c");
    }

    void add(int k, const Coeff& co) {
        auto [it, inserted] = coeffs_.try_emplace(k, co);
        if (!inserted) it->second = {it->second.a + co.a, it->second.b + co.b};
        if (it->second.a.is_zero() && it->second.b.is_zero()) coeffs_.erase(it);
    }
};

struct StabilityCheck {
    bool passed = false;
    bool proper_ideal = false;  // beta^2 - 2c beta + 1 = 0
    QuadRational beta;
    std::optional<QuotientRingElem> generator, image, multiplier, residual;  // residual = image - multiplier * generator

    explicit operator bool() const noexcept { return passed; }
};

/// Checks that (u - beta) is a proper sigma-stable ideal of the quotient ring at
/// t = c1: sigma(u - beta) = lambda (u - beta) with lambda = 1/(beta u).
/// beta defaults to alpha = c1 + sqrt(c1^2 - 1).
inline StabilityCheck verify_sigma_stability(const Rational& c1, std::optional<QuadRational> beta = std::nullopt) {
    if (c1 == Rational(1) || c1 == Rational(-1)) throw InvalidSpecialization("alpha degenerates at c1 = " + c1.to_string());
    StabilityCheck out;
    out.beta = beta.value_or(chebyshev_alpha(c1));
    if (out.beta.is_zero()) throw DomainError("generator u - 0 has no multiplier 1/(beta u)");
    const QuadRational two_c(Rational(2) * c1);
    out.proper_ideal = (out.beta * out.beta - two_c * out.beta + QuadRational(1)).is_zero();

    QuotientRingElem g = QuotientRingElem::u(c1) - QuotientRingElem(c1, out.beta);
    QuotientRingElem lambda = QuotientRingElem(c1, out.beta.inverse()) * QuotientRingElem::u_inverse(c1);
    QuotientRingElem image = g.sigma();
    QuotientRingElem residual = image - lambda * g;
    out.passed = out.proper_ideal && residual.is_zero();
    out.generator = std::move(g);
    out.image = std::move(image);
    out.multiplier = std::move(lambda);
    out.residual = std::move(residual);
    return out;
}

// --- product decomposition -----------------------------------------------------

template <class T>
struct Factorization {
    Matrix<T> h, hp;
    GroupTemplate h_template, hp_template;
};

template <class T>
struct Decomposition {
    std::optional<Factorization<T>> factorization;
    std::string certificate;  // why no factorization exists

    explicit operator bool() const noexcept { return factorization.has_value(); }
};

namespace detail {

/// Roots of unity of order dividing q available as constants: 1, and -1 for even q.
template <class T>
std::vector<T> constant_roots_of_unity(unsigned q) {
    std::vector<T> out = {T(1)};
    if (q % 2 == 0) out.push_back(T(-1));
    return out;
}

template <class T>
bool is_diagonal(const Matrix<T>& g) {
    return is_zero(g(0, 1)) && is_zero(g(1, 0));
}

}  // namespace detail

/// Writes g = h h' with h in H and h' in Hp, by case analysis on the template shapes.
///
/// With a free template on either side the other factor's parameter is set to
/// 1. Between two finite templates only constant roots of unity (+-1) are
/// tried, which is exhaustive for rational entries.
template <class T>
Decomposition<T> product_decompose(const Matrix<T>& g, const AlgSubgroup& H, const AlgSubgroup& Hp) {
    if (!membership(g, chebyshev_full_group())) throw NotInG("element is not in G: " + g.to_string());
    if (H.templates.empty() || Hp.templates.empty()) throw DomainError("product_decompose needs catalog groups with templates");
    const Shape target = detail::is_diagonal(g) ? Shape::Diagonal : Shape::Antidiagonal;
    const T gamma = target == Shape::Diagonal ? g(0, 0) : g(0, 1);

    std::size_t tried = 0;
    for (const auto& t1 : H.templates)
        for (const auto& t2 : Hp.templates) {
            if (product_shape(t1.shape, t2.shape) != target) continue;
            // g's parameter is p r when t2 is diagonal, p / r when antidiagonal
            const bool divides = t2.shape == Shape::Antidiagonal;
            std::vector<std::pair<T, T>> candidates;
            if (t1.order == 0) {
                candidates.emplace_back(gamma, T(1));
            } else if (t2.order == 0) {
                candidates.emplace_back(T(1), divides ? gamma.inverse() : gamma);
            } else {
                for (const auto& p : detail::constant_roots_of_unity<T>(t1.order))
                    for (const auto& r : detail::constant_roots_of_unity<T>(t2.order)) candidates.emplace_back(p, r);
            }
            for (const auto& [p, r] : candidates) {
                ++tried;
                Matrix<T> h = template_matrix(t1.shape, p), hp = template_matrix(t2.shape, r);
                if (h * hp == g && membership(h, H) && membership(hp, Hp))
                    return {Factorization<T>{std::move(h), std::move(hp), t1, t2}, {}};
            }
        }
    return {std::nullopt, "no factorization among " + std::to_string(tried) + " candidate products of " + H.name() + " and " + Hp.name()};
}

struct ProductCheck {
    bool passed = true;
    std::vector<std::pair<GroupTemplate, Factorization<ParamPoly>>> factorizations;  // per template of G
    std::optional<Matrix<Rational>> witness;
    std::string certificate;

    explicit operator bool() const noexcept { return passed; }
};

/// G = H Hp, checked by factoring each template of G with a free symbol xi.
/// On failure a concrete element of G outside H Hp is returned.
inline ProductCheck check_product_equal(const AlgSubgroup& H, const AlgSubgroup& Hp) {
    ProductCheck out;
    for (const auto& t : chebyshev_full_group().templates) {
        Matrix<ParamPoly> g = template_matrix(t);
        auto d = product_decompose(g, H, Hp);
        if (d) {
            out.factorizations.emplace_back(t, std::move(*d.factorization));
            continue;
        }
        out.passed = false;
        for (long value = 2; value <= 10 && !out.witness; ++value) {
            Matrix<Rational> concrete = template_matrix(t.shape, Rational(value));
            auto cd = product_decompose(concrete, H, Hp);
            if (!cd) {
                out.witness = std::move(concrete);
                out.certificate = cd.certificate;
            }
        }
        return out;
    }
    return out;
}

// --- template closure ----------------------------------------------------------

struct ClosureCheck {
    bool passed = true;
    std::string failure;

    explicit operator bool() const noexcept { return passed; }
};

/// Identity membership, and for every pair of templates T1(xi), T2(zeta): the
/// product lies in H and has the shape of some template; T1(xi)^-1 lies in H.
inline ClosureCheck check_template_closure(const AlgSubgroup& H) {
    auto fail = [](std::string why) { return ClosureCheck{false, std::move(why)}; };
    if (!membership(Matrix<Rational>::identity(2), H)) return fail("identity is not a member");
    for (const auto& t1 : H.templates) {
        Matrix<ParamPoly> a = template_matrix(t1, ParamPoly::Xi);
        if (!membership(a, H)) return fail(t1.to_string() + " does not satisfy the equations");
        const ParamPoly det_inv = determinant(a).inverse();
        Matrix<ParamPoly> inv = adjugate(a).map([&](const ParamPoly& v) { return v * det_inv; });
        if (!(a * inv == Matrix<ParamPoly>::identity(2))) return fail("inverse of " + t1.to_string());
        if (!membership(inv, H)) return fail("inverse of " + t1.to_string() + " leaves the group");
        for (const auto& t2 : H.templates) {
            Matrix<ParamPoly> p = a * template_matrix(t2, ParamPoly::Zeta);
            if (!membership(p, H)) return fail(t1.to_string() + " times " + t2.to_string() + " leaves the group");
            Shape s = product_shape(t1.shape, t2.shape);
            bool has_shape = false;
            for (const auto& t : H.templates) has_shape = has_shape || t.shape == s;
            if (!has_shape) return fail("no " + std::string(shape_name(s)) + " template for a product");
        }
    }
    return {};
}

}  // namespace sigmadelta
