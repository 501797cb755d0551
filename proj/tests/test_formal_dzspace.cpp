#include "des2/formal_dzspace.hpp"

#include <gtest/gtest.h>

using namespace des2;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

BigReal numeric_value(const DZBasis& B, const std::vector<Rational>& v, MzvEvaluator& ev, const BigReal& T)
{
    const int k = B.weight();
    BigReal acc = 0;
    for (PairKind kind : kLevel2Kinds)
        for (int r = 1; r < k; ++r) {
            const Rational& c = v[B.index(kind, r)];
            if (sgn(c) != 0) acc += to_real(c) * ev.regularized(kind, r, k - r).at(T);
        }
    if (sgn(v[B.zo_index()]) != 0) acc += to_real(v[B.zo_index()]) * ev.single(SingleKind::odd, k).at(T);
    return acc;
}

}  // namespace

TEST(FormalDZSpace, BasisLayout)
{
    DZBasis B(6);
    EXPECT_EQ(B.dim(), 16u);
    EXPECT_EQ(B.index(PairKind::eo, 1), 0u);
    EXPECT_EQ(B.index(PairKind::oe, 1), 5u);
    EXPECT_EQ(B.index(PairKind::oo, 5), 14u);
    EXPECT_EQ(B.zo_index(), 15u);
    EXPECT_EQ(B.label(6), "Zoe_2,4");
    EXPECT_EQ(B.label(15), "Zo_6");
    EXPECT_THROW(B.index(PairKind::ee, 1), DomainError);
    EXPECT_THROW(B.index(PairKind::oo, 6), DomainError);
}

TEST(FormalDZSpace, RelationMatrixWeightFour)
{
    auto M = relation_matrix(4);
    ASSERT_EQ(M.rows.rows(), 6u);
    ASSERT_EQ(M.rows.cols(), 10u);
    // ds1 at (r, s) = (1, 3): Zoe_13 + Zeo_31 - (Zoe_13 + Zoe_22 + Zoe_31) - Zoo_31
    std::vector<long> ds1 = {0, 0, 1, 0, -1, -1, 0, 0, -1, 0};
    // ds2 at (2, 2): 2 Zoo_22 + Zo - (2 Zeo_22 + 4 Zeo_31)
    std::vector<long> ds2 = {0, -2, -4, 0, 0, 0, 0, 2, 0, 1};
    for (std::size_t j = 0; j < 10; ++j) {
        EXPECT_EQ(M.rows(0, j), R(ds1[j])) << j;
        EXPECT_EQ(M.rows(4, j), R(ds2[j])) << j;
    }
    EXPECT_EQ(M.labels[0], "ds1(1,3)");
    EXPECT_EQ(M.labels[4], "ds2(2,2)");
}

TEST(FormalDZSpace, OddWeightNeedsPermissive)
{
    EXPECT_THROW(relation_matrix(5), DomainError);
    auto R = relation_matrix(5, true);
    EXPECT_EQ(R.rows.rows(), 8u);
    EXPECT_EQ(R.rows.cols(), 13u);
}

TEST(FormalDZSpace, RowsVanishOnRegularizedValues)
{
    for (int k = 4; k <= 12; k += 2) {
        auto rep = relation_numeric_check(k, 30);
        EXPECT_TRUE(rep.pass()) << k;
        EXPECT_EQ(rep.checks.size(), static_cast<std::size_t>(4 * (k - 1)));
    }
}

TEST(FormalDZSpace, GeneratingFunctionFormSpansSameRelations)
{
    for (int k = 4; k <= 16; k += 2) {
        QMatrix A = relation_matrix(k).rows;
        QMatrix G = genfun_relation_matrix(k);
        QMatrix both = A;
        for (std::size_t i = 0; i < G.rows(); ++i) both.append_row(G.row(i));
        EXPECT_EQ(A.rank(), G.rank()) << k;
        EXPECT_EQ(both.rank(), A.rank()) << k;
    }
}

TEST(FormalDZSpace, SumFormulaCertified)
{
    for (int k = 4; k <= 40; k += 2) {
        auto c = check_sum_formula(k);
        ASSERT_TRUE(c.member) << k;
        EXPECT_TRUE(c.verified) << k;
    }
    EXPECT_THROW(check_sum_formula(7), DomainError);
}

TEST(FormalDZSpace, SubstitutionRelations)
{
    for (int k = 4; k <= 20; k += 2) {
        DZBasis B(k);
        RationalVector first = B.unit(PairKind::eo, 1);
        RationalVector second = B.zo() - R(2) * B.unit(PairKind::eo, 1);
        for (int r = 1; r < k; ++r) {
            first -= B.unit(PairKind::oo, r);
            second += R(r % 2 == 1 ? 2 : -2) * B.unit(PairKind::oo, r);
        }
        auto s = genfun_substitution_relations(k);
        EXPECT_EQ(s.first_at_1_0, first.values()) << k;
        EXPECT_EQ(s.second_at_1_m1, second.values()) << k;
        EXPECT_TRUE(s.first_cert.member && s.first_cert.verified);
        EXPECT_TRUE(s.second_cert.member && s.second_cert.verified);

        // half of the second plus the first is -2 times the sum formula target
        RationalVector combo = R(1, 2) * RationalVector(s.second_at_1_m1) + RationalVector(s.first_at_1_0);
        RationalVector target = R(-1, 4) * B.zo();
        for (int r = 2; r <= k - 2; r += 2) target += B.unit(PairKind::oo, r);
        EXPECT_EQ(combo, R(-2) * target) << k;
    }
}

TEST(FormalDZSpace, TriangularStepConditions)
{
    for (int k = 4; k <= 20; k += 2)
        for (int r = 0; r <= k - 4; r += 2) {
            auto L = lemma2_coefficients(k, r);
            EXPECT_TRUE(L.simplification_holds) << k << "," << r;
            EXPECT_TRUE(L.cond_i) << k << "," << r;
            EXPECT_TRUE(L.cond_ii) << k << "," << r;
            EXPECT_TRUE(L.cond_iii) << k << "," << r;
            EXPECT_TRUE(L.mod_zo.member && L.mod_zo.verified) << k << "," << r;
        }
    EXPECT_THROW(lemma2_coefficients(8, 1), DomainError);
    EXPECT_THROW(lemma2_coefficients(8, 6), DomainError);
}

TEST(FormalDZSpace, TriangularStepSecondSlotClosedForm)
{
    // f|(1 - eps) = f(x) - f(-x), with f(-x) = x^r (x + 2)^(k-2-r) for even r.
    for (int k = 6; k <= 16; k += 2)
        for (int r = 0; r <= k - 4; r += 2) {
            auto L = lemma2_coefficients(k, r);
            const int n = k - 2 - r;
            for (int e = 0; e <= k - 2; ++e) {
                Rational want = 0;
                int t = e - r;  // power of x taken from (x -+ 2)^n
                if (t >= 0 && t <= n) {
                    Integer b = binomial(n, t) * ipow(2, static_cast<unsigned long>(n - t));
                    Rational fx = Rational(b) * ((n - t) % 2 == 0 ? 1 : -1);
                    Rational fmx = Rational(b);
                    want = fx - fmx;
                }
                EXPECT_EQ(L.slots[1].coeff(e), want) << k << "," << r << "," << e;
            }
        }
}

TEST(FormalDZSpace, PoeReductionCertified)
{
    for (int k = 4; k <= 24; k += 2) {
        auto red = poe_reduction(k);
        EXPECT_EQ(red.size(), static_cast<std::size_t>((k - 2) / 2)) << k;
        for (const auto& [r, e] : red) {
            EXPECT_EQ(r % 2, 0);
            EXPECT_TRUE(e.certificate.member && e.certificate.verified) << k << "," << r;
            for (const auto& [i, c] : e.poo) {
                EXPECT_EQ(i % 2, 0);
                EXPECT_LE(i, k - i);
            }
        }
    }
}

TEST(FormalDZSpace, PoeReductionHoldsNumerically)
{
    MzvEvaluator ev(30);
    for (int k : {6, 8, 10}) {
        DZBasis B(k);
        for (const auto& [r, e] : poe_reduction(k)) {
            RationalVector w = B.P_oe(r) - e.zo * B.zo();
            for (const auto& [i, c] : e.poo) w -= c * B.P_oo(i);
            for (int t = 0; t <= 1; ++t) {
                BigReal v = numeric_value(B, w.values(), ev, BigReal(t));
                EXPECT_LT(abs(v), ev.tolerance()) << k << "," << r << ",T=" << t;
            }
        }
    }
}
