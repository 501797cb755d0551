#include "des2/numeric_mzv.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace des2;

namespace {

BigReal tol(int d) { return pow10(-d); }

// Running partial sums of sum_{m>n, parity} m^-r n^-s in long double. The inner tail beyond
// the cutoff M is bracketed by [S_M * tail_lo, zeta^b(s) * tail_hi].
struct Bracket {
    long double lo, hi;
};

Bracket brute_force(PairKind kind, int r, int s, long M)
{
    int a = first_parity(kind) == Parity::even ? 0 : 1;
    int b = second_parity(kind) == Parity::even ? 0 : 1;
    long double sum = 0, inner = 0;  // inner = sum_{n < m, n = b} n^-s
    for (long m = 1; m <= M; ++m) {
        if (m % 2 == a) sum += inner / std::pow((long double)m, r);
        if (m % 2 == b) inner += 1.0L / std::pow((long double)m, s);
    }
    // remaining terms: m > M with m = a, each weighted by inner(m) in [inner(M), zeta^b(s)]
    long double tail = 0;
    for (long m = M + 1; m <= M + 2000000; ++m)
        if (m % 2 == a) tail += 1.0L / std::pow((long double)m, r);
    long double rest = 1.0L / ((r - 1) * 2.0L * std::pow((long double)(M + 2000000), r - 1));
    long double zb = 0;
    for (long n = 1; n <= 4000000; ++n)
        if (n % 2 == b) zb += 1.0L / std::pow((long double)n, s);
    zb += 1.0L / ((s - 1) * 2.0L * std::pow(4000000.0L, s - 1)) + 1e-18L;
    return {sum + inner * tail, sum + zb * (tail + rest)};
}

}  // namespace

TEST(SingleZeta, KnownValues)
{
    MzvEvaluator ev(30);
    BigReal pi = real_pi();
    EXPECT_LT(abs(ev.single_convergent(SingleKind::odd, 2) - pi * pi / 8), tol(30));
    EXPECT_LT(abs(ev.single_convergent(SingleKind::full, 2) - pi * pi / 6), tol(30));
    EXPECT_LT(abs(ev.single_convergent(SingleKind::even, 4) - ev.single_convergent(SingleKind::full, 4) / 16), tol(30));
    auto zo1 = ev.single(SingleKind::odd, 1);
    EXPECT_LT(abs(zo1.c0 - real_log2() / 2), tol(30));
    EXPECT_EQ(zo1.c1, BigReal(0.5));
    auto ze1 = ev.single(SingleKind::even, 1);
    EXPECT_LT(abs(ze1.c0 + real_log2() / 2), tol(30));
}

TEST(DoubleZeta, OddOddTwoTwo)
{
    BigReal pi = real_pi();
    BigReal expected = boost::multiprecision::pow(pi, 4) / 384;
    EXPECT_LT(abs(double_zeta_level2(PairKind::oo, 2, 2, 30) - expected), tol(28));
    MzvEvaluator ev(30);
    BigReal prod = ev.single_convergent(SingleKind::odd, 2) * ev.single_convergent(SingleKind::even, 2);
    EXPECT_LT(abs(ev.level2(PairKind::oe, 2, 2) + ev.level2(PairKind::eo, 2, 2) - prod), tol(28));
    EXPECT_LT(abs(prod - boost::multiprecision::pow(pi, 4) / 192), tol(28));
}

TEST(DoubleZeta, Bounds)
{
    MzvEvaluator ev(30);
    BigReal v = ev.level2(PairKind::oo, 3, 2);
    EXPECT_GT(v, 0);
    EXPECT_LT(v, ev.single_convergent(SingleKind::odd, 3) * ev.single_convergent(SingleKind::odd, 2));
    EXPECT_LT(ev.level1(3, 2), ev.single_convergent(SingleKind::full, 3) * ev.single_convergent(SingleKind::full, 2));
}

TEST(DoubleZeta, LevelOneClassicalIdentities)
{
    MzvEvaluator ev(30);
    EXPECT_LT(abs(ev.level1(2, 1) - ev.single_convergent(SingleKind::full, 3)), tol(28));
    BigReal z6 = ev.single_convergent(SingleKind::full, 6), z12 = ev.single_convergent(SingleKind::full, 12);
    EXPECT_LT(abs(ev.level1(6, 6) - (z6 * z6 - z12) / 2), tol(28));
}

TEST(DoubleZeta, ParityPartition)
{
    MzvEvaluator ev(30);
    for (auto [r, s] : {std::pair{2, 2}, {3, 2}, {4, 3}}) {
        BigReal ee = ev.level2(PairKind::ee, r, s);
        BigReal sum = ev.level2(PairKind::eo, r, s) + ev.level2(PairKind::oe, r, s) + ev.level2(PairKind::oo, r, s);
        EXPECT_LT(abs((boost::multiprecision::pow(BigReal(2), r + s) - 1) * ee - sum), tol(27)) << r << s;
        // ee is the level-one value rescaled
        EXPECT_LT(abs(ee - boost::multiprecision::pow(BigReal(2), -(r + s)) * ev.level1(r, s)), tol(28));
    }
}

TEST(DoubleZeta, DoublingPrecisionKeepsDigits)
{
    for (PairKind kind : {PairKind::eo, PairKind::oe, PairKind::oo}) {
        BigReal a = double_zeta_level2(kind, 3, 1, 30);
        BigReal b = double_zeta_level2(kind, 3, 1, 60);
        EXPECT_LT(abs(a - b), tol(28)) << kind_name(kind);
    }
}

TEST(DoubleZeta, BruteForceBracket)
{
    for (PairKind kind : {PairKind::eo, PairKind::oe, PairKind::oo}) {
        auto br = brute_force(kind, 3, 2, 1000000);
        double v = double_zeta_level2(kind, 3, 2, 30).convert_to<double>();
        EXPECT_GE(v, (double)br.lo - 1e-10) << kind_name(kind);
        EXPECT_LE(v, (double)br.hi + 1e-10) << kind_name(kind);
        EXPECT_LT(br.hi - br.lo, 1e-9);
    }
}

TEST(DoubleZeta, RejectsDivergentIndex)
{
    EXPECT_THROW(double_zeta_level2(PairKind::oo, 1, 3, 30), DomainError);
    EXPECT_THROW(double_zeta_level1(1, 3, 30), DomainError);
    EXPECT_THROW(regularized_dzv(PairKind::oo, 1, 1, 30), DomainError);
}

TEST(Regularized, CoefficientsOfT)
{
    MzvEvaluator ev(30);
    for (int s = 2; s <= 5; ++s) {
        EXPECT_LT(abs(ev.regularized(PairKind::eo, 1, s).c1 - ev.single_convergent(SingleKind::odd, s) / 2), tol(30));
        EXPECT_LT(abs(ev.regularized(PairKind::oe, 1, s).c1 - ev.single_convergent(SingleKind::even, s) / 2), tol(30));
        EXPECT_TRUE(ev.regularized(PairKind::oo, 3, s).convergent());
    }
}

TEST(Prop1, AllSmallIndices)
{
    MzvEvaluator ev(30);
    for (int r = 1; r <= 8; ++r)
        for (int s = 1; r + s <= 9; ++s) {
            if (r == 1 && s == 1) continue;
            auto rep = verify_prop1(r, s, ev);
            EXPECT_TRUE(rep.pass()) << rep.name;
            for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << rep.name << " " << c.name;
        }
}

TEST(SumFormula, EvenWeights)
{
    for (int k : {4, 6, 8, 10}) EXPECT_TRUE(verify_sum_formula_numeric(k, 30).pass()) << k;
    BigReal pi = real_pi();
    EXPECT_LT(abs(zeta_single(SingleKind::odd, 4, 30).c0 - boost::multiprecision::pow(pi, 4) / 96), tol(28));
}

TEST(Kmt, OddWeights)
{
    for (auto [r, s] : {std::pair{2, 3}, {3, 4}, {2, 5}, {4, 3}}) {
        auto rep = verify_kmt(r, s, 30);
        EXPECT_TRUE(rep.pass()) << rep.name;
        // The unswapped reading is off by a macroscopic amount.
        EXPECT_GT(std::stod(rep.data.at("literal_residual")), 1e-3) << rep.name;
    }
    EXPECT_THROW(verify_kmt(2, 2, 30), DomainError);
}

TEST(Kmt, Zeta2Definition)
{
    // sum_{m,n >= 1} (m + 2n)^-2 m^-3 by direct summation.
    long double acc = 0;
    const long M = 20000;
    for (long m = 1; m <= M; ++m) {
        long double inner = 0;
        for (long n = 1; n <= M; ++n) inner += 1.0L / ((long double)(m + 2 * n) * (m + 2 * n));
        // tail in n: ~ 1/(2 (m + 2M))
        inner += 0.5L / (m + 2 * M + 1);
        acc += inner / ((long double)m * m * m);
    }
    MzvEvaluator ev(30);
    EXPECT_NEAR((double)acc, ev.zeta2(2, 3).convert_to<double>(), 2e-8);
}
