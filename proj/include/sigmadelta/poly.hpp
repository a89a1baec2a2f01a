#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sigmadelta/errors.hpp"
#include "sigmadelta/rational.hpp"

namespace sigmadelta {

/// Variable ordering used everywhere: the shift variable x, then the
/// differential variable t, then any other name alphabetically.
inline int variable_rank(std::string_view name) {
    if (name == "x") return 0;
    if (name == "t") return 1;
    return 2;
}

inline bool variable_less(std::string_view a, std::string_view b) {
    int ra = variable_rank(a), rb = variable_rank(b);
    if (ra != rb) return ra < rb;
    return a < b;
}

/// Sparse multivariate polynomial over Q.
///
/// Only variables that actually occur are kept in the variable list, so two
/// equal polynomials always have identical representations.
class Poly {
public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, Rational>;

    Poly() = default;
    Poly(const Rational& c) {
        if (!c.is_zero()) terms_.emplace(Exponents{}, c);
    }
    Poly(long c) : Poly(Rational(c)) {}

    static Poly variable(const std::string& name, unsigned power = 1) {
        if (power == 0) return Poly(1);
        Poly p;
        p.vars_ = {name};
        p.terms_.emplace(Exponents{power}, Rational(1));
        return p;
    }

    const std::vector<std::string>& variables() const noexcept { return vars_; }
    const TermMap& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return vars_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    /// Value of a constant polynomial; throws for non-constants.
    Rational constant_value() const {
        if (!is_constant()) throw DomainError("polynomial is not constant");
        return is_zero() ? Rational(0) : terms_.begin()->second;
    }

    bool contains(std::string_view var) const { return index_of(var).has_value(); }

    unsigned degree(std::string_view var) const {
        auto idx = index_of(var);
        if (!idx) return 0;
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[*idx]);
        return d;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, sum(e));
        return d;
    }

    /// Coefficients with respect to `var`, indexed by power.
    std::vector<Poly> coefficients(std::string_view var) const {
        auto idx = index_of(var);
        if (!idx) return {*this};
        std::vector<std::string> rest = vars_;
        rest.erase(rest.begin() + static_cast<long>(*idx));
        std::vector<TermMap> parts(degree(var) + 1);
        for (const auto& [e, c] : terms_) {
            Exponents r = e;
            r.erase(r.begin() + static_cast<long>(*idx));
            parts[e[*idx]].emplace(std::move(r), c);
        }
        std::vector<Poly> out;
        out.reserve(parts.size());
        for (auto& part : parts) out.push_back(Poly(rest, std::move(part)));
        return out;
    }

    static Poly from_coefficients(const std::string& var, const std::vector<Poly>& coeffs) {
        Poly result;
        Poly power(1);
        Poly v = variable(var);
        for (const auto& c : coeffs) {
            if (!c.is_zero()) result += c * power;
            power *= v;
        }
        return result;
    }

    /// Leading coefficient under graded lex order with x < t < other names.
    Rational leading_coefficient() const {
        if (is_zero()) return Rational(0);
        return leading_term()->second;
    }

    /// Exponent vector of the leading term, as (name, power) pairs.
    std::vector<std::pair<std::string, unsigned>> leading_monomial() const {
        std::vector<std::pair<std::string, unsigned>> out;
        if (is_zero()) return out;
        const auto& e = leading_term()->first;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (e[i]) out.emplace_back(vars_[i], e[i]);
        return out;
    }

    Poly substitute(std::string_view var, const Poly& value) const {
        if (!contains(var)) return *this;
        auto cs = coefficients(var);
        Poly result;
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) result = result * value + *it;
        return result;
    }

    Poly evaluate(std::string_view var, const Rational& value) const { return substitute(var, Poly(value)); }

    /// var -> var + by
    Poly shift(std::string_view var, const Rational& by) const {
        if (by.is_zero() || !contains(var)) return *this;
        return substitute(var, variable(std::string(var)) + Poly(by));
    }

    Poly derivative(std::string_view var) const {
        auto idx = index_of(var);
        if (!idx) return Poly();
        TermMap out;
        for (const auto& [e, c] : terms_) {
            if (e[*idx] == 0) continue;
            Exponents d = e;
            d[*idx] -= 1;
            out.emplace(std::move(d), c * Rational(static_cast<long>(e[*idx])));
        }
        return Poly(vars_, std::move(out));
    }

    /// Evaluates into an arbitrary commutative ring T constructible from Rational.
    template <class T, class ValueOf>
    T evaluate_in(ValueOf&& value_of) const {
        std::vector<T> values;
        values.reserve(vars_.size());
        for (const auto& v : vars_) values.push_back(value_of(v));
        T result(Rational(0));
        for (const auto& [e, c] : terms_) {
            T term(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k) term = term * values[i];
            result = result + term;
        }
        return result;
    }

    Poly scaled(const Rational& c) const {
        if (c.is_zero()) return Poly();
        TermMap out;
        for (const auto& [e, v] : terms_) out.emplace(e, v * c);
        return Poly(vars_, std::move(out));
    }

    /// Divides by the grlex leading coefficient; zero stays zero.
    Poly monic() const { return is_zero() ? Poly() : scaled(leading_coefficient().inverse()); }

    Poly pow(unsigned exponent) const {
        Poly result(1), base = *this;
        while (exponent) {
            if (exponent & 1u) result *= base;
            exponent >>= 1;
            if (exponent) base *= base;
        }
        return result;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<const TermMap::value_type*> order;
        for (const auto& t : terms_) order.push_back(&t);
        std::sort(order.begin(), order.end(), [this](auto* a, auto* b) { return grlex_less(b->first, a->first); });
        std::ostringstream os;
        bool first = true;
        for (const auto* t : order) {
            Rational c = t->second;
            bool negative = c.sign() < 0;
            if (negative) c = -c;
            if (first) {
                if (negative) os << "-";
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
            std::string mono = monomial_string(t->first);
            if (mono.empty()) {
                os << c.to_string();
            } else if (c.is_one()) {
                os << mono;
            } else {
                os << c.to_string() << "*" << mono;
            }
        }
        return os.str();
    }

    Poly operator-() const { return scaled(Rational(-1)); }

    Poly& operator+=(const Poly& o) { return *this = combine(*this, o, false); }
    Poly& operator-=(const Poly& o) { return *this = combine(*this, o, true); }
    Poly& operator*=(const Poly& o) { return *this = multiply(*this, o); }
    friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, true); }
    friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

    /// Main variable for recursive algorithms: the highest-ranked variable present.
    static std::optional<std::string> main_variable(const Poly& a, const Poly& b) {
        auto vars = merge_variables(a.vars_, b.vars_);
        if (vars.empty()) return std::nullopt;
        return vars.back();
    }

private:
    std::vector<std::string> vars_;
    TermMap terms_;

    Poly(std::vector<std::string> vars, TermMap terms) : vars_(std::move(vars)), terms_(std::move(terms)) { compact(); }

    static unsigned sum(const Exponents& e) {
        unsigned s = 0;
        for (unsigned v : e) s += v;
        return s;
    }

    std::optional<std::size_t> index_of(std::string_view var) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == var) return i;
        return std::nullopt;
    }

    bool grlex_less(const Exponents& a, const Exponents& b) const {
        unsigned da = sum(a), db = sum(b);
        if (da != db) return da < db;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }

    TermMap::const_iterator leading_term() const {
        auto best = terms_.begin();
        for (auto it = terms_.begin(); it != terms_.end(); ++it)
            if (grlex_less(best->first, it->first)) best = it;
        return best;
    }

    std::string monomial_string(const Exponents& e) const {
        std::string out;
        for (std::size_t i = vars_.size(); i-- > 0;) {
            if (!e[i]) continue;
            if (!out.empty()) out += "*";
            out += vars_[i];
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
        return out;
    }

    void compact() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero())
                it = terms_.erase(it);
            else
                ++it;
        }
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) used[i] = true;
        if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
        std::vector<std::string> vars;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) vars.push_back(vars_[i]);
        TermMap terms;
        for (const auto& [e, c] : terms_) {
            Exponents r;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (used[i]) r.push_back(e[i]);
            terms.emplace(std::move(r), c);
        }
        vars_ = std::move(vars);
        terms_ = std::move(terms);
    }

    static std::vector<std::string> merge_variables(const std::vector<std::string>& a, const std::vector<std::string>& b) {
        std::vector<std::string> out;
        std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                   [](const std::string& l, const std::string& r) { return variable_less(l, r); });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Exponent maps from this polynomial's variables into `target`.
    TermMap embedded(const std::vector<std::string>& target) const {
        if (target == vars_) return terms_;
        std::vector<std::size_t> pos(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            pos[i] = static_cast<std::size_t>(std::find(target.begin(), target.end(), vars_[i]) - target.begin());
        TermMap out;
        for (const auto& [e, c] : terms_) {
            Exponents r(target.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) r[pos[i]] = e[i];
            out.emplace(std::move(r), c);
        }
        return out;
    }

    static Poly combine(const Poly& a, const Poly& b, bool subtract) {
        auto vars = merge_variables(a.vars_, b.vars_);
        TermMap out = a.embedded(vars);
        for (auto& [e, c] : b.embedded(vars)) {
            auto [it, inserted] = out.emplace(e, subtract ? -c : c);
            if (!inserted) {
                if (subtract)
                    it->second -= c;
                else
                    it->second += c;
            }
        }
        return Poly(std::move(vars), std::move(out));
    }

    static Poly multiply(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        auto vars = merge_variables(a.vars_, b.vars_);
        TermMap ea = a.embedded(vars), eb = b.embedded(vars), out;
        for (const auto& [e1, c1] : ea)
            for (const auto& [e2, c2] : eb) {
                Exponents e(vars.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
                auto [it, inserted] = out.emplace(std::move(e), c1 * c2);
                if (!inserted) it->second += c1 * c2;
            }
        return Poly(std::move(vars), std::move(out));
    }
};

namespace detail {

inline Poly leading_coeff_in(const Poly& p, const std::string& var) { return p.coefficients(var).back(); }

/// Pseudo-remainder of a by b with respect to var: lc(b)^(deg a - deg b + 1) a mod b.
inline Poly pseudo_remainder(Poly a, const Poly& b, const std::string& var) {
    const unsigned db = b.degree(var);
    if (db == 0) return Poly();
    const unsigned da = a.degree(var);
    if (da < db) return a;
    const Poly lb = leading_coeff_in(b, var);
    unsigned steps = da - db + 1;
    while (!a.is_zero() && a.degree(var) >= db) {
        unsigned d = a.degree(var);
        a = lb * a - leading_coeff_in(a, var) * Poly::variable(var, d - db) * b;
        --steps;
    }
    if (steps > 0 && !a.is_zero()) a = lb.pow(steps) * a;
    return a;
}

}  // namespace detail

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(b.constant_value().inverse());
    auto var = *Poly::main_variable(a, b);
    if (!b.contains(var)) {
        auto cs = a.coefficients(var);
        for (auto& c : cs) {
            auto q = exact_divide(c, b);
            if (!q) return std::nullopt;
            c = std::move(*q);
        }
        return Poly::from_coefficients(var, cs);
    }
    if (!a.contains(var) || a.degree(var) < b.degree(var)) return std::nullopt;
    const unsigned db = b.degree(var);
    const Poly lb = detail::leading_coeff_in(b, var);
    Poly quotient, rest = a;
    while (!rest.is_zero()) {
        unsigned dr = rest.degree(var);
        if (dr < db) return std::nullopt;
        auto c = exact_divide(detail::leading_coeff_in(rest, var), lb);
        if (!c) return std::nullopt;
        Poly term = *c * Poly::variable(var, dr - db);
        quotient += term;
        rest -= term * b;
    }
    return quotient;
}

Poly gcd(const Poly& a, const Poly& b);

namespace detail {

inline Poly content_in(const Poly& p, const std::string& var) {
    Poly g;
    for (const auto& c : p.coefficients(var)) {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

inline Poly primitive_part_in(const Poly& p, const std::string& var) {
    if (p.is_zero()) return p;
    return *exact_divide(p, content_in(p, var));
}

}  // namespace detail

namespace detail {

/// True when some evaluation of the non-main variables shows that gcd(a, b)
/// has degree 0 in var. Needs lc_var(a), lc_var(b) nonzero at the point.
inline bool gcd_image_is_trivial(const Poly& a, const Poly& b, const std::string& var) {
    std::vector<std::string> others;
    for (const auto& v : a.variables())
        if (v != var) others.push_back(v);
    for (const auto& v : b.variables())
        if (v != var && std::find(others.begin(), others.end(), v) == others.end()) others.push_back(v);
    const Poly la = leading_coeff_in(a, var), lb = leading_coeff_in(b, var);
    for (long attempt = 0; attempt < 4; ++attempt) {
        Poly ea = a, eb = b, ela = la, elb = lb;
        for (std::size_t i = 0; i < others.size(); ++i) {
            Rational point(3 + 7 * attempt + 5 * static_cast<long>(i) + attempt * static_cast<long>(i));
            ea = ea.evaluate(others[i], point);
            eb = eb.evaluate(others[i], point);
            ela = ela.evaluate(others[i], point);
            elb = elb.evaluate(others[i], point);
        }
        if (ela.is_zero() || elb.is_zero()) continue;
        return gcd(ea, eb).is_constant();
    }
    return false;
}

}  // namespace detail

/// Greatest common divisor over Q, normalized to grlex-monic (gcd(0,0) = 0).
/// Recursive in the main variable: contents first, then a subresultant
/// remainder sequence on the primitive parts.
inline Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a == b) return a.monic();
    auto var = *Poly::main_variable(a, b);
    if (!a.contains(var)) return gcd(a, detail::content_in(b, var));
    if (!b.contains(var)) return gcd(detail::content_in(a, var), b);

    Poly ca = detail::content_in(a, var), cb = detail::content_in(b, var);
    Poly g = gcd(ca, cb);
    Poly pa = exact_divide(a, ca)->monic(), pb = exact_divide(b, cb)->monic();
    if (pa.degree(var) < pb.degree(var)) std::swap(pa, pb);
    const bool univariate = pa.variables().size() == 1 && pb.variables().size() == 1;
    if (!univariate && detail::gcd_image_is_trivial(pa, pb, var)) return g.monic();

    if (univariate) {
        // Euclid over Q with monic remainders.
        while (true) {
            Poly r = detail::pseudo_remainder(pa, pb, var);
            if (r.is_zero()) break;
            if (!r.contains(var)) return g.monic();
            pa = std::move(pb);
            pb = r.monic();
        }
        return (g * pb).monic();
    }

    Poly sg(1), sh(1);
    while (true) {
        unsigned delta = pa.degree(var) - pb.degree(var);
        Poly r = detail::pseudo_remainder(pa, pb, var);
        if (r.is_zero()) break;
        if (!r.contains(var)) return g.monic();
        pa = std::move(pb);
        pb = *exact_divide(r, sg * sh.pow(delta));
        sg = detail::leading_coeff_in(pa, var);
        if (delta == 0) continue;
        sh = *exact_divide(sg.pow(delta), sh.pow(delta - 1));
    }
    return (g * detail::primitive_part_in(pb, var)).monic();
}

/// Rational roots (with multiplicity) of a univariate polynomial, sorted ascending.
inline std::vector<Rational> rational_root_find(const Poly& p) {
    if (p.is_zero()) throw ZeroPolynomial("rational_root_find of the zero polynomial");
    if (p.variables().size() > 1) throw DomainError("rational_root_find expects a univariate polynomial");
    std::vector<Rational> roots;
    if (p.is_constant()) return roots;
    const std::string var = p.variables().front();

    // Integer coefficients, low degree first.
    auto cs = p.coefficients(var);
    mpz_class common = 1;
    for (const auto& c : cs) {
        mpz_class d = c.constant_value().denominator();
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<mpz_class> ints;
    for (const auto& c : cs) {
        Rational v = c.constant_value() * Rational(common, mpz_class(1));
        ints.push_back(v.numerator());
    }
    std::size_t low = 0;
    while (ints[low] == 0) {
        roots.emplace_back(0);
        ++low;
    }
    ints.erase(ints.begin(), ints.begin() + static_cast<long>(low));

    auto divisors = [](mpz_class n) {
        n = abs(n);
        std::vector<mpz_class> small, large;
        for (mpz_class d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                small.push_back(d);
                if (d * d != n) large.push_back(n / d);
            }
        }
        small.insert(small.end(), large.rbegin(), large.rend());
        return small;
    };

    // Horner evaluation / synthetic division on integer-scaled coefficients.
    auto eval = [](const std::vector<mpz_class>& c, const mpq_class& x) {
        mpq_class acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + mpq_class(*it);
        return acc;
    };
    auto deflate = [](const std::vector<mpz_class>& c, const mpq_class& x) {
        std::vector<mpq_class> q(c.size() - 1);
        mpq_class acc = 0;
        for (std::size_t i = c.size(); i-- > 1;) {
            acc = acc * x + mpq_class(c[i]);
            q[i - 1] = acc;
        }
        mpz_class l = 1;
        for (auto& v : q) {
            v.canonicalize();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        }
        std::vector<mpz_class> out;
        for (auto& v : q) {
            mpq_class s = v * l;
            s.canonicalize();
            out.push_back(s.get_num());
        }
        return out;
    };

    if (ints.size() > 1) {
        auto ps = divisors(ints.front());
        auto qs = divisors(ints.back());
        std::vector<mpq_class> candidates;
        for (const auto& pn : ps)
            for (const auto& qd : qs) {
                mpq_class c(pn, qd);
                c.canonicalize();
                candidates.push_back(c);
                candidates.push_back(-c);
            }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& c : candidates) {
            while (ints.size() > 1 && eval(ints, c) == 0) {
                roots.emplace_back(c);
                ints = deflate(ints, c);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace sigmadelta
