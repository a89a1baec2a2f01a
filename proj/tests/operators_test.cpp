#include <gtest/gtest.h>

#include "sigmadelta/operators.hpp"
#include "test_util.hpp"

using namespace sigmadelta;
using sigmadelta::testing::random_ratfunc;
using sigmadelta::testing::random_tower;
using sigmadelta::testing::rf;

namespace {

TowerElem tw(std::string_view text) { return TowerElem(rf(text)); }

}  // namespace

TEST(Sigma, RatFuncExamples) {
    EXPECT_EQ(apply_sigma(rf("x^2 + t")), rf("(x+1)^2 + t"));
    EXPECT_EQ(apply_sigma(RatFunc(5)), RatFunc(5));
    EXPECT_EQ(apply_sigma_inverse(rf("1/(x+1)")), rf("1/x"));
}

TEST(Sigma, TowerExamples) {
    TowerElem s = TowerElem::s();
    EXPECT_EQ(apply_sigma(TowerElem::eta()), (tw("t") + s) * TowerElem::eta());
    EXPECT_EQ(apply_sigma_inverse(TowerElem::eta()), (tw("t") - s) * TowerElem::eta());
    EXPECT_EQ(apply_sigma(s), s);
    EXPECT_EQ(apply_sigma(TowerElem(5)), TowerElem(5));
    EXPECT_EQ(apply_sigma(TowerElem::eta(-1)), (tw("t") - s) * TowerElem::eta(-1));
}

TEST(Delta, Examples) {
    EXPECT_EQ(apply_delta(rf("t^3")), rf("3*t^2"));
    EXPECT_EQ(apply_delta(rf("x")), RatFunc(0));
    TowerElem s = TowerElem::s();
    // delta(s) = t/s, i.e. t s / (t^2 - 1)
    EXPECT_EQ(apply_delta(s), tw("t") * s * tw("1/(t^2-1)"));
    EXPECT_EQ(apply_delta(s) * s, tw("t"));
    // delta(eta) = (x-1) eta / s
    EXPECT_EQ(apply_delta(TowerElem::eta()) * s, tw("x - 1") * TowerElem::eta());
}

TEST(Delta, EtaMatchesFormalDerivativeOfPower) {
    // eta stands for (t+s)^(x-1); at an integer x = k the element (t+s)^(k-1)
    // is an honest element of Q(t)(s) whose derivative can be computed
    // without the eta rule. Compare delta(eta)/eta at x = k.
    QuadRatFunc base = TowerElem::coeff(RatFunc::variable("t"), RatFunc(1));
    for (long k = 2; k <= 6; ++k) {
        QuadRatFunc p = base.pow(k - 1);
        QuadRatFunc lhs = apply_delta(p) * p.inverse();
        TowerElem rule = apply_delta(TowerElem::eta()) * TowerElem::eta(-1);
        QuadRatFunc c = rule.coefficient(0);
        QuadRatFunc rhs(c.real().evaluate("x", Rational(k)), c.irrational().evaluate("x", Rational(k)), TowerElem::discriminant());
        EXPECT_EQ(lhs, rhs) << "k=" << k;
    }
}

TEST(Theta, Examples) {
    EXPECT_EQ(apply_theta(ThetaWord{1, 1}, rf("x*t")), rf("x + 1"));
    EXPECT_EQ(apply_theta(ThetaWord{0, 0}, rf("x/t")), rf("x/t"));
    EXPECT_EQ(apply_theta(ThetaWord{2, 0}, rf("1/x")), rf("1/(x+2)"));
}

TEST(Theta, Enumeration) {
    EXPECT_EQ(enumerate_theta(0), (std::vector<ThetaWord>{{0, 0}}));
    EXPECT_EQ(enumerate_theta(1), (std::vector<ThetaWord>{{0, 0}, {0, 1}, {1, 0}}));
    for (unsigned L = 0; L <= 6; ++L) {
        auto words = enumerate_theta(L);
        EXPECT_EQ(words.size(), (L + 1) * (L + 2) / 2);
        EXPECT_TRUE(words.front().is_identity());
        for (std::size_t i = 1; i < words.size(); ++i) {
            const auto& a = words[i - 1];
            const auto& b = words[i];
            EXPECT_TRUE(a.length() < b.length() || (a.length() == b.length() && a.sigma_power < b.sigma_power));
        }
    }
}

TEST(Laws, RatFuncRandomized) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        RatFunc f = random_ratfunc(rng), g = random_ratfunc(rng);
        EXPECT_EQ(apply_sigma(apply_delta(f)), apply_delta(apply_sigma(f)));
        EXPECT_EQ(apply_sigma(f * g), apply_sigma(f) * apply_sigma(g));
        EXPECT_EQ(apply_sigma(f + g), apply_sigma(f) + apply_sigma(g));
        EXPECT_EQ(apply_sigma_inverse(apply_sigma(f)), f);
        EXPECT_EQ(apply_delta(f * g), apply_delta(f) * g + f * apply_delta(g));
    }
}

TEST(Laws, TowerRandomized) {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        TowerElem f = random_tower(rng, 2), g = random_tower(rng, 2);
        EXPECT_EQ(apply_sigma(apply_delta(f)), apply_delta(apply_sigma(f)));
        EXPECT_EQ(apply_sigma(f * g), apply_sigma(f) * apply_sigma(g));
        EXPECT_EQ(apply_sigma_inverse(apply_sigma(f)), f);
        EXPECT_EQ(apply_delta(f * g), apply_delta(f) * g + f * apply_delta(g));
    }
}

TEST(Constants, OnlyRationalsAreFixed) {
    auto is_constant = [](const RatFunc& f) { return apply_sigma(f) == f && apply_delta(f).is_zero(); };
    EXPECT_TRUE(is_constant(RatFunc(7)));
    EXPECT_TRUE(is_constant(RatFunc(Rational(-2) / Rational(9))));
    EXPECT_FALSE(is_constant(rf("x")));
    EXPECT_FALSE(is_constant(rf("t")));
    EXPECT_FALSE(is_constant(rf("x + t")));
    // sigma-invariant but not delta-constant, and the reverse
    EXPECT_FALSE(is_constant(rf("t^2")));
    EXPECT_FALSE(is_constant(rf("1/x")));
}
