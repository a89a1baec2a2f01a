#include <gtest/gtest.h>

#include "sigmadelta/dependence.hpp"
#include "test_util.hpp"

using namespace sigmadelta;
using sigmadelta::testing::rf;

namespace {

using Verdict = DependenceVerdict<RatFunc>;

std::vector<Rational> ints(std::initializer_list<long> v) { return std::vector<Rational>(v.begin(), v.end()); }

TowerElem tw(std::string_view text) { return TowerElem(rf(text)); }

}  // namespace

TEST(WronskianMatrix, Examples) {
    auto m = wronskian_matrix<RatFunc>({rf("t"), rf("t^2")}, {{0, 0}, {0, 1}});
    EXPECT_EQ(m, (Matrix<RatFunc>{{rf("t"), rf("t^2")}, {RatFunc(1), rf("2*t")}}));
    auto c = wronskian_matrix<RatFunc>({RatFunc(1), rf("x")}, {{0, 0}, {1, 0}});
    EXPECT_EQ(c, (Matrix<RatFunc>{{RatFunc(1), rf("x")}, {RatFunc(1), rf("x + 1")}}));
    auto e = wronskian_matrix<TowerElem>({TowerElem::eta()}, {{0, 0}});
    EXPECT_EQ(e(0, 0), TowerElem::eta());
    EXPECT_THROW(wronskian_matrix<RatFunc>({rf("t")}, {{0, 0}, {0, 1}}), ShapeError);
}

TEST(ClassicalDeterminant, Examples) {
    EXPECT_EQ(classical_determinant<RatFunc>({RatFunc(1), rf("t"), rf("t^2")}, ClassicalKind::Wronskian), RatFunc(2));
    EXPECT_EQ(classical_determinant<RatFunc>({RatFunc(1), rf("x")}, ClassicalKind::Casoratian), RatFunc(1));
    EXPECT_EQ(classical_determinant<RatFunc>({rf("t"), rf("2*t")}, ClassicalKind::Wronskian), RatFunc(0));
}

TEST(Certificate, Examples) {
    EXPECT_TRUE(verify_dependence_certificate<RatFunc>({rf("t"), rf("5*t")}, ints({5, -1})));
    EXPECT_FALSE(verify_dependence_certificate<RatFunc>({rf("t"), rf("t^2")}, ints({1, 1})));
    EXPECT_TRUE(verify_dependence_certificate<TowerElem>({TowerElem(2) * TowerElem::eta(), TowerElem::eta()}, ints({1, -2})));
    EXPECT_THROW(verify_dependence_certificate<RatFunc>({rf("t")}, ints({1, 2})), ShapeError);
}

TEST(DecideDependence, Examples) {
    auto v = decide_dependence<RatFunc>({rf("t"), rf("t^2")}, RingMode::SimpleRing);
    ASSERT_EQ(v.kind, Verdict::Kind::Independent);
    EXPECT_EQ(v.thetas, (std::vector<ThetaWord>{{0, 0}, {0, 1}}));
    EXPECT_EQ(*v.det, rf("t^2"));

    auto c = decide_dependence<RatFunc>({RatFunc(1), rf("x")}, RingMode::SimpleRing);
    ASSERT_EQ(c.kind, Verdict::Kind::Independent);
    EXPECT_EQ(c.thetas, (std::vector<ThetaWord>{{0, 0}, {1, 0}}));
    EXPECT_EQ(*c.det, RatFunc(1));

    auto xt = decide_dependence<RatFunc>({rf("x"), rf("t")}, RingMode::SimpleRing);
    ASSERT_EQ(xt.kind, Verdict::Kind::Independent);
    EXPECT_TRUE(xt.thetas.front().is_identity());

    auto d = decide_dependence<RatFunc>({rf("t"), rf("5*t")}, RingMode::SimpleRing);
    ASSERT_EQ(d.kind, Verdict::Kind::Dependent);
    EXPECT_EQ(d.constants, ints({5, -1}));

    auto eta = decide_dependence<TowerElem>({TowerElem(2) * TowerElem::eta(), TowerElem::eta()}, RingMode::SimpleRing);
    ASSERT_EQ(eta.kind, DependenceVerdict<TowerElem>::Kind::Dependent);
    EXPECT_EQ(eta.constants, ints({1, -2}));
}

TEST(DecideDependence, Errors) {
    EXPECT_THROW(decide_dependence<RatFunc>({}, RingMode::SimpleRing), EmptyInput);
    EXPECT_THROW(decide_dependence<RatFunc>({rf("t")}, RingMode::NonSimpleFixture), DomainError);
    auto ring = FixtureRing::make({"y"}, {Rational(2)});
    EXPECT_THROW(decide_dependence<FixtureElem>({FixtureElem::generator(ring, 0)}, RingMode::SimpleRing), DomainError);
    EXPECT_THROW(FixtureRing::make({"x"}, {Rational(2)}), DomainError);
}

TEST(DecideDependence, NonSimpleFixtureIsInconclusive) {
    auto ring = FixtureRing::make({"y", "z"}, {Rational(2), Rational(2)});
    FixtureElem y = FixtureElem::generator(ring, 0), z = FixtureElem::generator(ring, 1);
    EXPECT_EQ(apply_sigma(y).poly(), Poly(2) * Poly::variable("y"));
    EXPECT_EQ(apply_sigma_inverse(apply_sigma(y * z)), y * z);
    auto v = decide_dependence<FixtureElem>({y, z}, RingMode::NonSimpleFixture, 4u);
    EXPECT_EQ(v.kind, DependenceVerdict<FixtureElem>::Kind::Inconclusive);
    EXPECT_EQ(v.bound, 4u);
    EXPECT_TRUE(all_determinants_vanish<FixtureElem>({y, z}, 4));
    // sigma^i(y) sigma^j(z) - sigma^i(z) sigma^j(y) directly
    for (unsigned i = 0; i <= 4; ++i)
        for (unsigned j = 0; j <= 4; ++j) {
            FixtureElem d = apply_theta(ThetaWord{i, 0}, y) * apply_theta(ThetaWord{j, 0}, z) -
                            apply_theta(ThetaWord{i, 0}, z) * apply_theta(ThetaWord{j, 0}, y);
            EXPECT_TRUE(d.is_zero());
        }
    // distinct factors make the ring simple enough for the Casoratian to see them
    auto split = FixtureRing::make({"y", "z"}, {Rational(2), Rational(3)});
    auto w = decide_dependence<FixtureElem>({FixtureElem::generator(split, 0), FixtureElem::generator(split, 1)}, RingMode::NonSimpleFixture);
    EXPECT_EQ(w.kind, DependenceVerdict<FixtureElem>::Kind::Independent);
}

TEST(DecideDependence, TowerElements) {
    auto v = decide_dependence<TowerElem>({TowerElem::eta(), TowerElem::eta(-1)}, RingMode::SimpleRing);
    ASSERT_EQ(v.kind, DependenceVerdict<TowerElem>::Kind::Independent);
    EXPECT_FALSE(v.det->is_zero());
    auto s = decide_dependence<TowerElem>({TowerElem::s(), tw("t"), TowerElem::s() * tw("3")}, RingMode::SimpleRing);
    ASSERT_EQ(s.kind, DependenceVerdict<TowerElem>::Kind::Dependent);
    EXPECT_EQ(s.constants, ints({3, 0, -1}));
}

TEST(DeterminantLaws, AlternationAndDuplication) {
    std::mt19937 rng(61);
    std::vector<ThetaWord> words = {{0, 0}, {1, 0}, {0, 1}};
    for (int trial = 0; trial < 10; ++trial) {
        RatFunc a = sigmadelta::testing::random_ratfunc(rng), b = sigmadelta::testing::random_ratfunc(rng),
                c = sigmadelta::testing::random_ratfunc(rng);
        RatFunc d1 = determinant(wronskian_matrix<RatFunc>({a, b, c}, words));
        RatFunc d2 = determinant(wronskian_matrix<RatFunc>({b, a, c}, words));
        EXPECT_EQ(d1, -d2);
        EXPECT_TRUE(determinant(wronskian_matrix<RatFunc>({a, a, c}, words)).is_zero());
    }
}

TEST(DecideDependence, MonotoneInTheBound) {
    std::vector<std::vector<RatFunc>> inputs = {
        {rf("t"), rf("t^2")}, {RatFunc(1), rf("x"), rf("x^2")}, {rf("x"), rf("t"), rf("x*t")}, {rf("1/x"), rf("t/(x+1)")}};
    for (const auto& elems : inputs) {
        auto base = decide_dependence(elems, RingMode::SimpleRing);
        ASSERT_EQ(base.kind, Verdict::Kind::Independent);
        unsigned L = 0;
        for (const auto& w : base.thetas) L = std::max(L, w.length());
        for (unsigned bound = L; bound <= L + 3; ++bound) {
            auto v = decide_dependence(elems, RingMode::SimpleRing, bound);
            EXPECT_EQ(v.kind, Verdict::Kind::Independent);
            EXPECT_EQ(v.thetas, base.thetas);
            EXPECT_EQ(*v.det, *base.det);
        }
        if (L > 0) { EXPECT_EQ(decide_dependence(elems, RingMode::SimpleRing, L - 1).kind, Verdict::Kind::Inconclusive); }
    }
}

TEST(DecideDependence, AgreesWithClassicalTests) {
    std::vector<std::vector<RatFunc>> delta_only = {
        {RatFunc(1), rf("t"), rf("t^2")}, {rf("t"), rf("2*t")}, {rf("1/(t+1)"), rf("t/(t+1)"), RatFunc(1)}, {rf("t^3"), rf("t^2 + 1")}};
    for (const auto& elems : delta_only) {
        bool dependent = classical_determinant(elems, ClassicalKind::Wronskian).is_zero();
        EXPECT_EQ(decide_dependence(elems, RingMode::SimpleRing).kind == Verdict::Kind::Dependent, dependent);
    }
    std::vector<std::vector<RatFunc>> sigma_only = {
        {RatFunc(1), rf("x"), rf("x^2")}, {rf("x"), rf("3*x")}, {rf("1/x"), rf("1/(x+1)")}, {rf("x^2"), rf("x^2 - x"), rf("x")}};
    for (const auto& elems : sigma_only) {
        bool dependent = classical_determinant(elems, ClassicalKind::Casoratian).is_zero();
        EXPECT_EQ(decide_dependence(elems, RingMode::SimpleRing).kind == Verdict::Kind::Dependent, dependent);
    }
}

namespace {

// Oracle for the monomial-basis family: Gaussian elimination with plain
// fractions on the coefficient vectors, counting the rank.
std::size_t oracle_rank(std::vector<std::vector<long>> vecs) {
    std::vector<std::vector<Rational>> m;
    for (const auto& v : vecs) m.emplace_back(v.begin(), v.end());
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 6 && rank < m.size(); ++col) {
        std::size_t p = rank;
        while (p < m.size() && m[p][col].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = rank + 1; i < m.size(); ++i) {
            Rational f = m[i][col] / m[rank][col];
            for (std::size_t k = 0; k < 6; ++k) m[i][k] = m[i][k] - f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST(DecideDependence, BruteForceMonomialBasisOracle) {
    const std::vector<RatFunc> basis = {RatFunc(1), rf("x"), rf("t"), rf("x*t"), rf("x^2"), rf("t^2")};
    std::mt19937 rng(67);
    std::uniform_int_distribution<int> coeff(-2, 2), count(1, 3), pick(0, 5);
    int dependent_seen = 0, independent_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t m = static_cast<std::size_t>(count(rng));
        std::vector<std::vector<long>> vecs(m, std::vector<long>(6, 0));
        // force some dependent instances by copying a scaled earlier vector
        for (std::size_t i = 0; i < m; ++i) {
            if (i > 0 && trial % 3 == 0) {
                for (int k = 0; k < 6; ++k) vecs[i][k] = 2 * vecs[0][k] - vecs[i - 1][k];
                continue;
            }
            for (int k = 0; k < 6; ++k) vecs[i][k] = pick(rng) < 3 ? coeff(rng) : 0;
        }
        std::vector<RatFunc> elems;
        for (const auto& v : vecs) {
            RatFunc e;
            for (int k = 0; k < 6; ++k) e = e + RatFunc(v[k]) * basis[k];
            elems.push_back(e);
        }
        bool oracle_dependent = oracle_rank(vecs) < m;
        auto v = decide_dependence(elems, RingMode::SimpleRing);
        EXPECT_NE(v.kind, Verdict::Kind::Inconclusive) << "trial " << trial;
        EXPECT_EQ(v.kind == Verdict::Kind::Dependent, oracle_dependent) << "trial " << trial;
        if (v.kind == Verdict::Kind::Dependent) {
            EXPECT_TRUE(verify_dependence_certificate(elems, v.constants));
            ++dependent_seen;
        } else if (v.kind == Verdict::Kind::Independent) {
            EXPECT_FALSE(determinant(wronskian_matrix(elems, v.thetas)).is_zero());
            EXPECT_TRUE(v.thetas.front().is_identity());
            ++independent_seen;
        }
    }
    EXPECT_GT(dependent_seen, 5);
    EXPECT_GT(independent_seen, 5);
}
