#include "des2/poly_action.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace des2;

namespace {

Poly random_poly(std::mt19937& rng, int k)
{
    std::uniform_int_distribution<int> dist(-6, 6);
    Poly p(k);
    for (int i = 0; i <= k - 2; ++i) p.at(i) = dist(rng);
    return p;
}

ProjMatrix random_matrix(std::mt19937& rng)
{
    std::uniform_int_distribution<int> dist(-3, 3);
    while (true) {
        ProjMatrix m(dist(rng), dist(rng), dist(rng), dist(rng));
        if (m.det() != 0) return m;
    }
}

}  // namespace

TEST(ProjMatrix, NormalizationMakesNegativesEqual)
{
    ProjMatrix m(1, 2, -3, 4);
    EXPECT_EQ(m, ProjMatrix(-1, -2, 3, -4));
    EXPECT_EQ(m.c(), 3);
    EXPECT_EQ(ProjMatrix(2, 1, 0, -1).d(), 1);
}

TEST(ProjMatrix, GroupIdentities)
{
    for (const auto& check : verify_group_identities()) EXPECT_TRUE(check.holds) << check.name;
    EXPECT_NE(ProjMatrix::T(), ProjMatrix::S());
}

TEST(Slash, ConstantsAreTranslationInvariant)
{
    for (int k = 4; k <= 14; k += 2) {
        Poly one = Poly::monomial(k, 0);
        EXPECT_TRUE(slash_ring(one, ProjMatrix::identity() - ProjMatrix::T()).is_zero());
    }
}

TEST(Slash, TopMonomialFixedByTM)
{
    for (int k = 4; k <= 20; k += 2) {
        Poly top = Poly::monomial(k, k - 2);
        EXPECT_EQ(slash(top, ProjMatrix::T() * ProjMatrix::M()), top) << k;
    }
}

TEST(Slash, ShiftedPowersInvariantUnderTSTe)
{
    ProjMatrix g = ProjMatrix::T() * ProjMatrix::S() * ProjMatrix::T() * ProjMatrix::epsilon();
    for (int k = 4; k <= 16; k += 2)
        for (int r = 0; r <= k - 2; r += 2) {
            Poly f = Poly::x_power_times_shift(k, r);
            EXPECT_EQ(slash(f, g), f) << "k=" << k << " r=" << r;
        }
}

TEST(Slash, RightActionAndProjectivity)
{
    std::mt19937 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        int k = 4 + 2 * (trial % 5);
        Poly f = random_poly(rng, k);
        ProjMatrix g1 = random_matrix(rng), g2 = random_matrix(rng);
        EXPECT_EQ(slash(slash(f, g1), g2), slash(f, g1 * g2));
        ProjMatrix neg(-g1.a(), -g1.b(), -g1.c(), -g1.d());
        EXPECT_EQ(slash(f, neg), slash(f, g1));
    }
}

TEST(Slash, HomogeneousFormCommutesWithAction)
{
    for (int k = 4; k <= 12; k += 2)
        for (int i = 0; i <= k - 2; ++i) {
            ProjMatrix g(2, 1, 1, 1);
            Poly f = Poly::monomial(k, i);
            // F(aX + bY, cX + dY) is the homogenization of f | g.
            auto lhs = f.homogenize().substitute({g.a(), g.b()}, {g.c(), g.d()});
            EXPECT_EQ(Poly::dehomogenize(lhs, k), slash(f, g));
        }
}

TEST(Slash, EvenPolynomialKilledByOneMinusEpsilonTimesOnePlusEpsilon)
{
    std::mt19937 rng(1);
    GroupRingElement one_minus = ProjMatrix::identity() - ProjMatrix::epsilon();
    GroupRingElement one_plus = ProjMatrix::identity() + ProjMatrix::epsilon();
    for (int k = 4; k <= 12; k += 2) {
        Poly f = random_poly(rng, k);
        EXPECT_TRUE(slash_ring(slash_ring(f, one_minus), one_plus).is_zero());
        EXPECT_TRUE(slash_ring(f, GroupRingElement()).is_zero());
    }
}

TEST(GroupRing, LevelTwoOperatorExpansion)
{
    using P = ProjMatrix;
    GroupRingElement lhs = (P::identity() - P::T()) * (P::identity() + P::M()) * GroupRingElement(P::T_prime());
    GroupRingElement rhs = GroupRingElement(P::T_prime()) - GroupRingElement(P::T() * P::T_prime()) -
                           GroupRingElement(P::T_transpose()) + GroupRingElement(P::M() * P::T_prime());
    EXPECT_EQ(lhs, rhs);
}

TEST(Slash, ZeroDeterminantRejected)
{
    EXPECT_THROW(slash(Poly::monomial(6, 1), ProjMatrix(1, 2, 2, 4)), DomainError);
    EXPECT_THROW(slash(Poly::monomial(5, 1), ProjMatrix::T()), DomainError);
}
