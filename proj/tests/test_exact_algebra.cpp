#include "des2/exact/bipoly.hpp"
#include "des2/exact/matrix.hpp"
#include "des2/exact/qseries.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace des2;

namespace {

QSeries<Rational> sigma1_series(std::size_t N)
{
    QSeries<Rational> s(N);
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t d = 1; d <= n; ++d)
            if (n % d == 0) s[n] += d;
    return s;
}

QMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
    return m;
}

}  // namespace

TEST(Rational, FormatsIntegersWithoutDenominator)
{
    EXPECT_EQ(to_string(Rational(5)), "5");
    EXPECT_EQ(to_string(make_rational(-691, 2730)), "-691/2730");
    EXPECT_EQ(to_string(make_rational(4, -8)), "-1/2");
    EXPECT_EQ(parse_rational("6/-4"), make_rational(-3, 2));
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_rational("x"), DomainError);
}

TEST(Rational, BinomialAndPowers)
{
    EXPECT_EQ(binomial(10, 3), 120);
    EXPECT_EQ(binomial(3, 5), 0);
    EXPECT_EQ(binomial(3, -1), 0);
    EXPECT_EQ(pow2(-3), make_rational(1, 8));
    EXPECT_EQ(factorial(12), 479001600);
}

TEST(QSeries, Sigma1SquaredCoefficient)
{
    auto s = sigma1_series(10);
    auto sq = s * s;
    // sum_{a+b=4} sigma(a) sigma(b) = 2*1*4 + 3*3 = 17
    EXPECT_EQ(sq[4], 17);
    EXPECT_EQ(sq[2], 1);
}

TEST(QSeries, MismatchedOrdersTruncateToMinimum)
{
    auto a = sigma1_series(10);
    auto b = sigma1_series(6);
    EXPECT_EQ((a * b).order(), 6u);
    EXPECT_EQ((a + b).order(), 6u);
    EXPECT_EQ((a * b)[4], 17);
}

TEST(QSeries, DivideByQ)
{
    auto s = sigma1_series(8);
    auto d = s.divide_by_q();
    EXPECT_EQ(d.order(), 7u);
    EXPECT_EQ(d[0], 1);
    EXPECT_EQ(d[1], 3);
    QSeries<Rational> c(3);
    c[0] = 1;
    EXPECT_THROW(c.divide_by_q(), ArithmeticError);
}

TEST(QSeries, RingAxiomsOnRandomSeries)
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        QSeries<Rational> a(12), b(12), c(12);
        for (std::size_t n = 0; n <= 12; ++n) {
            a[n] = make_rational(dist(rng), 1 + (dist(rng) + 9) % 5);
            b[n] = dist(rng);
            c[n] = dist(rng);
        }
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
    }
}

TEST(QMatrix, RrefRankAndKernelsOnRandomMatrices)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 2 + trial % 5, c = 2 + (trial * 7) % 6;
        QMatrix m = random_matrix(rng, r, c, -3, 3);
        // Force a dependency now and then.
        if (trial % 3 == 0 && r >= 2)
            for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2 - m(1, j);
        auto rr = m.rref();
        auto right = m.kernel(KernelSide::right);
        auto left = m.kernel(KernelSide::left);
        EXPECT_EQ(rr.rank + right.size(), c);
        EXPECT_EQ(rr.rank + left.size(), r);
        EXPECT_EQ(m.transposed().rank(), rr.rank);
        for (const auto& v : right)
            for (const auto& x : m.apply(v)) EXPECT_EQ(sgn(x), 0);
        for (const auto& v : left)
            for (const auto& x : m.apply_left(v)) EXPECT_EQ(sgn(x), 0);
        for (const auto& v : right) {
            std::size_t lead = 0;
            while (sgn(v[lead]) == 0) ++lead;
            EXPECT_GT(sgn(v[lead]), 0);
            for (const auto& x : v) EXPECT_EQ(x.get_den(), 1);
        }
    }
}

TEST(QMatrix, KernelBasisIsNormalized)
{
    QMatrix m = QMatrix::from_ints({{2, 4, 6}, {1, 2, 3}});
    auto k = m.kernel(KernelSide::right);
    ASSERT_EQ(k.size(), 2u);
    EXPECT_EQ(k[0], (std::vector<Rational>{3, 0, -1}));
    EXPECT_EQ(k[1], (std::vector<Rational>{0, 3, -2}));
}

TEST(QMatrix, RowSpaceMembershipCertificate)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        QMatrix m = random_matrix(rng, 3, 5, -4, 4);
        std::vector<Rational> c = {Rational(trial), Rational(-2, 3), Rational(1, 5)};
        auto v = m.apply_left(c);
        auto mem = m.in_row_space(v);
        ASSERT_TRUE(mem.member);
        EXPECT_EQ(m.apply_left(mem.coefficients), v);
    }
    QMatrix e = QMatrix::from_ints({{1, 0, 0}, {0, 1, 0}});
    EXPECT_FALSE(e.in_row_space({0, 0, 1}).member);
}

TEST(QMatrix, Determinant)
{
    EXPECT_EQ(QMatrix::from_ints({{2, 1}, {7, 4}}).determinant(), 1);
    EXPECT_EQ(QMatrix::from_ints({{1, 2}, {2, 4}}).determinant(), 0);
    EXPECT_EQ(QMatrix::from_ints({{0, 1, 0}, {1, 0, 0}, {0, 0, 3}}).determinant(), -3);
}

TEST(BiPoly, UnimodularSubstitutionRoundTrip)
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dist(-5, 5);
    BiPoly<Rational> p(6);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; i + j <= 6; ++j) p.at(i, j) = dist(rng);
    // (X, Y) -> (2X + Y, 3X + 2Y) has inverse (2X - Y, -3X + 2Y).
    auto q = p.substitute({2, 1}, {3, 2});
    auto back = q.substitute({2, -1}, {-3, 2});
    EXPECT_EQ(back, p);
    EXPECT_EQ(p.substitute({1, 0}, {0, 1}), p);
    EXPECT_EQ(p.swapped().swapped(), p);
}

TEST(BiPoly, EvaluationMatchesSubstitution)
{
    BiPoly<Rational> p(3);
    p.at(2, 1) = 3;
    p.at(0, 2) = -1;
    p.at(1, 0) = 5;
    auto q = p.substitute({1, 1}, {1, -1});
    EXPECT_EQ(q.evaluate(2, 3), p.evaluate(5, -1));
}

TEST(BiPoly, ExactDivisionByXMinusY)
{
    BiPoly<Rational> f(4);
    f.at(2, 0) = 1;
    f.at(1, 1) = 2;
    f.at(0, 1) = 3;
    // (X - Y) * f
    auto prod = f.substitute({1, 0}, {0, 1});
    BiPoly<Rational> g(5);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j) {
            g.at(i + 1, j) += f.coeff(i, j);
            g.at(i, j + 1) -= f.coeff(i, j);
        }
    EXPECT_EQ(g.divide_by_x_minus_y().truncated(4), prod);
    BiPoly<Rational> h(2);
    h.at(1, 0) = 1;
    EXPECT_THROW(h.divide_by_x_minus_y(), ArithmeticError);
    EXPECT_THROW(h.swapped().divide_by_x(), ArithmeticError);
}

TEST(BiPoly, NonlinearSubstitutionRejected)
{
    BiPoly<Rational> p(2), x(2), y(2), sq(2);
    p.at(1, 1) = 1;
    x.at(1, 0) = 1;
    y.at(0, 1) = 1;
    sq.at(2, 0) = 1;
    EXPECT_NO_THROW(bipoly_substitute(p, x, y));
    EXPECT_THROW(bipoly_substitute(p, sq, y), DomainError);
}
