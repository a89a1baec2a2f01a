#include <gtest/gtest.h>

#include "sigmadelta/sequence.hpp"
#include "test_util.hpp"

using namespace sigmadelta;
using sigmadelta::testing::random_ratfunc;
using sigmadelta::testing::rf;

namespace {

GermSeq<RatFunc> seq_of(std::function<RatFunc(std::size_t)> f) { return GermSeq<RatFunc>(0, std::move(f)); }

RatFunc r(long p, long q = 1) { return RatFunc(Rational(p) / Rational(q)); }

}  // namespace

TEST(Embed, Examples) {
    auto inv = embed_ratfunc(rf("1/x"), Rational(0));
    EXPECT_EQ(inv.start(), 1u);
    EXPECT_EQ(inv.prefix(4), (std::vector<RatFunc>{r(0), r(1), r(1, 2), r(1, 3)}));

    auto lin = embed_ratfunc(rf("x"), Rational(2));
    EXPECT_EQ(lin.prefix(3), (std::vector<RatFunc>{r(2), r(3), r(4)}));

    auto tx = embed_ratfunc(rf("t*x"), Rational(0));
    EXPECT_EQ(tx.prefix(3), (std::vector<RatFunc>{r(0), rf("t"), rf("2*t")}));
}

TEST(Embed, OffsetIgnoresPolesOffTheOrbit) {
    EXPECT_EQ(embedding_offset(rf("1/((x-3)*(x+2))"), Rational(0)), 4u);
    EXPECT_EQ(embedding_offset(rf("1/(x - 1/2)"), Rational(0)), 0u);
    // x - t never vanishes identically in t
    EXPECT_EQ(embedding_offset(rf("1/(x - t)"), Rational(0)), 0u);
    EXPECT_EQ(embedding_offset(rf("1/((x-5)*t + x - 5)"), Rational(1)), 5u);
}

TEST(Germ, Examples) {
    auto a = seq_of([](std::size_t i) { return i == 0 ? r(0) : r(1); });
    auto b = seq_of([](std::size_t) { return r(1); });
    EXPECT_TRUE(germ_equal(a, b, 4));
    EXPECT_EQ(germ_agreement_index(a, b, 4), std::optional<std::size_t>(1));

    auto id = seq_of([](std::size_t i) { return r(static_cast<long>(i)); });
    auto next = seq_of([](std::size_t i) { return r(static_cast<long>(i) + 1); });
    EXPECT_FALSE(germ_equal(id, next, 8));
    EXPECT_TRUE(germ_equal(id, id, 8));
    EXPECT_THROW(germ_equal(id, id, 0), DomainError);
}

TEST(Germ, MaterializedPrefix) {
    auto m = GermSeq<RatFunc>::materialized({r(3), r(1), r(4), r(1), r(5)});
    EXPECT_EQ(m.at(2), r(4));
    EXPECT_THROW(m.at(5), DomainError);
    EXPECT_TRUE(germ_equal(m, m, 2));
}

TEST(Germ, EquivalenceRelationLaws) {
    // Sequences differing from a base pattern only in an initial segment.
    std::vector<GermSeq<RatFunc>> seqs;
    for (long head = 0; head < 4; ++head) {
        seqs.push_back(seq_of([head](std::size_t i) { return i < static_cast<std::size_t>(head) ? r(99 + head) : r(static_cast<long>(i * i)); }));
        seqs.push_back(seq_of([head](std::size_t i) { return i < static_cast<std::size_t>(head) ? r(-head) : r(static_cast<long>(i) + 7); }));
    }
    const std::size_t w = 6;
    for (const auto& a : seqs) {
        EXPECT_TRUE(germ_equal(a, a, w));
        for (const auto& b : seqs) {
            EXPECT_EQ(germ_equal(a, b, w), germ_equal(b, a, w));
            for (const auto& c : seqs)
                if (germ_equal(a, b, w) && germ_equal(b, c, w)) { EXPECT_TRUE(germ_equal(a, c, w)); }
        }
    }
}

TEST(Germ, ShiftAndDeltaCompatibility) {
    std::mt19937 rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        RatFunc f = random_ratfunc(rng, 2);
        Rational c(trial % 5 - 2);
        EXPECT_TRUE(germ_equal(embed_ratfunc(f, c).shifted(), embed_ratfunc(apply_sigma(f), c), 6)) << f.to_string();
        EXPECT_TRUE(germ_equal(apply_delta(embed_ratfunc(f, c)), embed_ratfunc(apply_delta(f), c), 6)) << f.to_string();
    }
}

TEST(FundamentalSequence, ChebyshevDiagonalization) {
    auto s = chebyshev_system();
    auto U = chebyshev::eigenbasis();
    auto d = chebyshev::eigenvalues();
    auto seq = fundamental_sequence(s.A, Rational(0), U, 10);
    ASSERT_EQ(seq.size(), 11u);
    Matrix<QuadRatFunc> dpow = Matrix<QuadRatFunc>::identity(2);
    for (std::size_t k = 0; k <= 10; ++k) {
        EXPECT_EQ(seq[k], U * dpow) << "s=" << k;
        dpow = dpow * d;
    }
    EXPECT_TRUE(verify_sigma_solution(seq, s.A, Rational(0), 10));
    EXPECT_TRUE(verify_delta_solution(seq, s.B, Rational(0), 10));
}

TEST(FundamentalSequence, Examples) {
    auto id = fundamental_sequence(RatMatrix::identity(2), Rational(3), RatMatrix::identity(2), 4);
    for (const auto& m : id) EXPECT_EQ(m, RatMatrix::identity(2));

    RatMatrix a = RatMatrix::diagonal({rf("x"), RatFunc(1)});
    auto seq = fundamental_sequence(a, Rational(1), RatMatrix::identity(2), 3);
    EXPECT_EQ(seq[3], RatMatrix::diagonal({RatFunc(6), RatFunc(1)}));
    EXPECT_TRUE(verify_sigma_solution(seq, a, Rational(1), 3));

    EXPECT_THROW(fundamental_sequence(a, Rational(-2), RatMatrix::identity(2), 4), InvalidSpecialization);
}

TEST(FundamentalSequence, CorruptionsAreLocated) {
    auto s = chebyshev_system();
    auto seq = fundamental_sequence(s.A, Rational(0), chebyshev::eigenbasis(), 5);
    auto bad = seq;
    bad[3](0, 0) = bad[3](0, 0) + QuadRatFunc(1);
    auto r = verify_sigma_solution(bad, s.A, Rational(0), 5);
    EXPECT_FALSE(r);
    EXPECT_EQ(r.index, 2u);
    EXPECT_TRUE(verify_sigma_solution(seq, s.A, Rational(0), 0));

    auto rd = verify_delta_solution(seq, -s.B, Rational(0), 5);
    EXPECT_FALSE(rd);
    EXPECT_EQ(rd.index, 0u);

    auto zero = std::vector<RatMatrix>(3, RatMatrix::identity(2));
    EXPECT_TRUE(verify_delta_solution(zero, RatMatrix(2, 2), Rational(0), 2));
    EXPECT_THROW(verify_sigma_solution(zero, s.A, Rational(0), 5), ShapeError);
}

TEST(FundamentalSequence, OtherStartPoint) {
    // c = 1/3: delta(U) = B(c) U fails for this U, so only the sigma side holds;
    // with U = I the delta side reduces to delta(W_s) = B(c+s) W_s - W_s B(c).
    auto s = chebyshev_system();
    auto seq = fundamental_sequence(s.A, Rational(1) / Rational(3), RatMatrix::identity(2), 4);
    EXPECT_TRUE(verify_sigma_solution(seq, s.A, Rational(1) / Rational(3), 4));
    RatMatrix bc = substitute(s.B, "x", Rational(1) / Rational(3));
    for (std::size_t k = 0; k <= 4; ++k) {
        RatMatrix bk = substitute(s.B, "x", Rational(1) / Rational(3) + Rational(static_cast<long>(k)));
        EXPECT_EQ(apply_delta(seq[k]), bk * seq[k] - seq[k] * bc);
    }
}

TEST(ChebyshevWitness, RecurrenceSumFormulaAndResiduals) {
    auto rows = chebyshev_witness(10);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[1].t_m, rf("2*t^2 - 1").numerator());
    EXPECT_EQ(rows[4].t_m, rf("16*t^5 - 20*t^3 + 5*t").numerator());
    for (const auto& row : rows) {
        EXPECT_TRUE(row.formula_agrees()) << "m=" << row.m;
        EXPECT_TRUE(row.residuals_zero()) << "m=" << row.m;
    }
    EXPECT_THROW(chebyshev_witness(1), DomainError);
}

TEST(ChebyshevWitness, SumFormulaMatchesCosineIdentity) {
    // Independent oracle: T_m(cos th) = cos(m th) means T_m(1) = 1, T_m(-1) = (-1)^m,
    // T_m(0) = cos(m pi/2), and T_m(1/2) = cos(m pi/3).
    const long cos_third[6] = {2, 1, -1, -2, -1, 1};  // 2 cos(m pi/3)
    for (unsigned m = 1; m <= 12; ++m) {
        Poly t = chebyshev_sum_formula(m);
        EXPECT_EQ(t.evaluate("t", Rational(1)), Poly(1));
        EXPECT_EQ(t.evaluate("t", Rational(-1)), Poly(m % 2 ? -1 : 1));
        long at0 = (m % 2) ? 0 : ((m / 2) % 2 ? -1 : 1);
        EXPECT_EQ(t.evaluate("t", Rational(0)), Poly(at0));
        EXPECT_EQ(t.evaluate("t", Rational(1) / Rational(2)), Poly(Rational(cos_third[m % 6]) / Rational(2)));
    }
}

TEST(ChebyshevWitness, CorruptedSeedShowsUpAtMOne) {
    auto rows = chebyshev_witness(4, rf("2*t^2 + 1").numerator());
    EXPECT_FALSE(rows[0].sigma_residual.is_zero());
    EXPECT_FALSE(rows[1].formula_agrees());
}
