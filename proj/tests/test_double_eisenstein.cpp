#include "des2/double_eisenstein.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace des2;

namespace {

const Parity kO = Parity::odd;
const Parity kE = Parity::even;

Rational R(long p, long q = 1) { return make_rational(p, q); }

// Coefficient of X^(r-1) Y^(s-1) in (1/4) sum_{u,v} tw(u) tw(v) e^{-(uX+vY)/2} q^u/(1-q^u) q^(u+v)/(1-q^(u+v)).
QSeries<Rational> g2_from_generating_function(PairKind kind, int r, int s, std::size_t N)
{
    bool tu = first_parity(kind) == kO, tv = second_parity(kind) == kO;
    QSeries<Rational> out(N);
    for (std::size_t u = 1; u <= N; ++u)
        for (std::size_t v = 1; u + (u + v) <= N; ++v) {
            // q^u/(1-q^u) * q^(u+v)/(1-q^(u+v)) = sum_{a,b >= 1} q^(ua + (u+v)b)
            Rational w = R(1, 4) * qpow(R(-static_cast<long>(u), 2), r - 1) * qpow(R(-static_cast<long>(v), 2), s - 1) /
                         Rational(factorial(r - 1) * factorial(s - 1));
            if (tu && u % 2) w = -w;
            if (tv && v % 2) w = -w;
            for (std::size_t a = 1; u * a + (u + v) <= N; ++a)
                for (std::size_t b = 1; u * a + (u + v) * b <= N; ++b) out[u * a + (u + v) * b] += w;
        }
    return out;
}

}  // namespace

TEST(DoubleEisenstein, G2SpecValues)
{
    EXPECT_EQ(g2_series(PairKind::oo, 1, 1, 10)[3], R(1, 4));
    EXPECT_EQ(g2_series(PairKind::eo, 1, 1, 10)[3], R(-1, 4));
    for (PairKind k : {PairKind::eo, PairKind::oe, PairKind::oo, PairKind::ee}) {
        auto g = g2_series(k, 2, 3, 10);
        EXPECT_EQ(g[0], 0);
        EXPECT_EQ(g[1], 0);
        EXPECT_EQ(g[2], 0);
    }
}

TEST(DoubleEisenstein, G2MatchesGeneratingFunction)
{
    const std::size_t N = 30;
    for (PairKind k : {PairKind::eo, PairKind::oe, PairKind::oo, PairKind::ee})
        for (int r = 1; r <= 5; ++r)
            for (int s = 1; s <= 5; ++s)
                EXPECT_EQ(g2_series(k, r, s, N), g2_from_generating_function(k, r, s, N)) << kind_name(k) << r << s;
}

TEST(DoubleEisenstein, BetaEpsilonCombExamples)
{
    const std::size_t N = 20;
    SeriesCache c(N);
    EXPECT_EQ(beta2_series(PairKind::oo, 2, 2, c)[1], R(5, 384));
    auto b = beta_constants(2);
    EXPECT_EQ(beta2_series(PairKind::oo, 2, 2, c), c.g(kO, 2).scaled(2 * b.beta_e + b.beta_o));
    for (PairKind k : kLevel2Kinds)
        for (int r = 1; r <= 5; ++r)
            for (int s = 1; s <= 5; ++s) {
                EXPECT_EQ(beta2_series(k, r, s, c)[0], 0);
                EXPECT_EQ(C_series(k, r, s, c)[0], 0);
            }
    EXPECT_TRUE(epsilon_series(PairKind::oo, 4, 3, c).is_zero());
    EXPECT_EQ(epsilon_series(PairKind::eo, 2, 3, c), c.gbar(kO, 3));

    // eps^oe_{1,1} - eps^eo_{1,1} = 2 gbar_0^o - 2 gbar_0^e + g_1^o - g_1^e + (alpha_2 - alpha_1), alpha_2 = -alpha_1
    auto diff = epsilon_series(PairKind::oe, 1, 1, c) - epsilon_series(PairKind::eo, 1, 1, c);
    auto alpha1 = c.gbar(kO, 0) - c.gbar(kE, 0).scaled(R(1, 2));
    auto expect = c.gbar(kO, 0).scaled(R(2)) - c.gbar(kE, 0).scaled(R(2)) + c.g(kO, 1) - c.g(kE, 1) - alpha1.scaled(R(2));
    EXPECT_EQ(diff, expect);
    EXPECT_EQ(alpha_series(2, c), -alpha_series(1, c));

    EXPECT_EQ(C_series(PairKind::oo, 2, 2, c)[1], R(-1, 384));
    for (PairKind k : kLevel2Kinds)
        for (int r = 3; r <= 6; ++r)
            for (int s = 2; s <= 5; ++s) EXPECT_EQ(C_series(k, r, s, c), c.g2(k, r, s) + beta2_series(k, r, s, c));
}

TEST(DoubleEisenstein, ImaginaryStratumExamples)
{
    SeriesCache c(30);
    EXPECT_TRUE(I_series(PairKind::oo, 2, 2, c).is_zero());
    for (int r = 1; r <= 8; ++r)
        for (int s = 1; s <= 8; ++s) {
            if (r == 1 && s == 1) continue;
            auto I = I_series(PairKind::eo, r, s, c);
            for (std::size_t n = 0; n <= I.order(); ++n) {
                EXPECT_EQ(I[n].rational_part(), 0);
                for (const auto& [sym, v] : I[n].symbols()) EXPECT_NE(sym.family, ZetaFamily::Ze);
            }
        }
    EXPECT_THROW(I_series(PairKind::oo, 1, 1, c), DomainError);
    EXPECT_THROW(G_series(PairKind::eo, 1, 1, 10), DomainError);
    EXPECT_THROW(I_series(PairKind::ee, 2, 2, c), DomainError);
}

TEST(DoubleEisenstein, EvenIndexImaginaryStratumVanishesExactlyWhenBracketsDo)
{
    SeriesCache c(20);
    for (int k = 4; k <= 16; k += 2)
        for (int r = 2; r < k; r += 2) {
            int s = k - r;
            bool brackets_vanish = true;
            for (int p = 1; p < k; p += 2) {
                Integer b = sign_pow(s) * binomial(p - 1, s - 1) + sign_pow(p + r) * binomial(p - 1, r - 1);
                if (sgn(b) != 0 || p == s) brackets_vanish = false;
            }
            EXPECT_EQ(I_series(PairKind::oo, r, s, c).is_zero(), brackets_vanish) << r << "," << s;
        }
}

// Fourier expansion assembled term by term: the single-zeta factor is rational at even p
// and a formal symbol at odd p; only p > 1 enters.
TEST(DoubleEisenstein, ConvergentRangeMatchesFourierExpansion)
{
    const std::size_t N = 30;
    SeriesCache c(N);
    auto zeta_part = [&](Parity zp, int p, const QSeries<Rational>& g, QSeries<Rational>& comb, SymSeries& imag,
                         const Rational& coeff) {
        if (sgn(coeff) == 0) return;
        if (p % 2 == 0) {
            Rational z = zeta_tilde_even(p) * (zp == kO ? 1 - pow2(-p) : pow2(-p));
            comb += g.scaled(coeff * z);
        } else {
            ZetaSymbol sym{zp == kO ? ZetaFamily::Zo : ZetaFamily::Ze, p};
            for (std::size_t n = 1; n <= N; ++n) imag[n].add(sym, coeff * g[n]);
        }
    };
    for (int r = 3; r <= 10; ++r)
        for (int s = 2; r + s <= 12; ++s) {
            const int k = r + s;
            for (PairKind kind : kLevel2Kinds) {
                QSeries<Rational> comb = c.g2(kind, r, s);
                SymSeries imag(N);
                for (int p = 2; p < k; ++p) {
                    const auto& ge = c.g(kE, k - p);
                    const auto& go = c.g(kO, k - p);
                    Rational bs = Rational(sign_pow(s) * binomial(p - 1, s - 1));
                    Rational br = Rational(sign_pow(p + r) * binomial(p - 1, r - 1));
                    Rational d = p == s ? 1 : 0;
                    if (kind == PairKind::eo) {
                        zeta_part(kO, p, ge, comb, imag, bs + d);
                        zeta_part(kO, p, go, comb, imag, br);
                    } else if (kind == PairKind::oe) {
                        zeta_part(kO, p, go, comb, imag, bs);
                        zeta_part(kE, p, go, comb, imag, d);
                        zeta_part(kO, p, ge, comb, imag, br);
                    } else {
                        zeta_part(kE, p, go, comb, imag, bs + br);
                        zeta_part(kO, p, go, comb, imag, d);
                    }
                }
                auto G = G_series(kind, r, s, c);
                EXPECT_EQ(G.comb, comb) << kind_name(kind) << r << s;
                EXPECT_EQ(G.imag, imag) << kind_name(kind) << r << s;
                EXPECT_EQ(G.constant.tag(), "zt_" + kind_name(kind) + "(" + std::to_string(r) + "," + std::to_string(s) + ")");
            }
        }
}

TEST(DoubleEisenstein, DoubleShuffleAllStrataUpToWeight12)
{
    SeriesCache cache(30);
    MzvEvaluator ev(30);
    for (int k = 3; k <= 12; ++k)
        for (int r = 1; r < k; ++r) {
            auto rep = verify_theorem3(r, k - r, cache, ev);
            ASSERT_EQ(rep.checks.size(), 16u);
            for (const auto& chk : rep.checks) {
                EXPECT_TRUE(chk.pass) << rep.name << " " << chk.stratum << " " << chk.name
                                      << (chk.first_failure ? " n=" + std::to_string(chk.first_failure->n) + " " +
                                                                  chk.first_failure->lhs + " vs " + chk.first_failure->rhs
                                                            : "");
            }
        }
}

TEST(DoubleEisenstein, DoubleShuffleWeightFive)
{
    auto rep = verify_theorem3(3, 2, 40, 30);
    EXPECT_TRUE(rep.pass());
    int strata = 0;
    for (const auto& c : rep.checks) strata |= c.stratum == "comb" ? 1 : c.stratum == "imag" ? 2 : c.stratum == "constant" ? 4 : 8;
    EXPECT_EQ(strata, 7);
    EXPECT_TRUE(verify_theorem3(1, 2, 20, 30).pass());
}

TEST(DoubleEisenstein, ImaginaryLemma)
{
    SeriesCache cache(30);
    for (int k = 3; k <= 14; ++k) {
        auto rep = verify_imag_lemma(k, cache);
        for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << rep.name << " " << c.name;
        EXPECT_EQ(rep.data.at("first_identity_lhs_reading"), "g") << k;
        EXPECT_EQ(rep.data.at("second_identity_lhs_reading"), "g") << k;
        EXPECT_EQ(rep.data.at("second_identity_unswapped_rhs"), "fails") << k;
    }
    EXPECT_THROW(verify_imag_lemma(2, cache), DomainError);
}

TEST(DoubleEisenstein, CombinatorialLemma)
{
    SeriesCache cache(30);
    for (int k : {3, 4, 7, 12}) {
        auto rep = verify_comb_lemma(k, cache);
        for (const auto& c : rep.checks)
            EXPECT_TRUE(c.pass) << rep.name << " " << c.name
                                << (c.first_failure ? " " + c.first_failure->lhs + " vs " + c.first_failure->rhs : "");
    }
}

TEST(DoubleEisenstein, BetaGeneratingFunctions)
{
    SeriesCache cache(30);
    const int D = 10;
    EXPECT_EQ(beta_generating(PairKind::oo, D, cache), beta_closed_form(kO, kO, kE, kO, D, cache));
    EXPECT_EQ(beta_generating(PairKind::oe, D, cache), beta_closed_form(kE, kO, kO, kE, D, cache));
    EXPECT_EQ(beta_generating(PairKind::eo, D, cache), beta_closed_form(kO, kE, kO, kO, D, cache));
}

TEST(DoubleEisenstein, LatticeSumAgreesWithQExpansion)
{
    EXPECT_EQ(lattice_eval(PairKind::oo, 4, 3, {0, 1}, 0).value, std::complex<double>(0, 0));
    EXPECT_THROW(lattice_eval(PairKind::oo, 2, 3, {0, 1}, 10), DomainError);
    MzvEvaluator ev(30);
    const std::complex<double> tau(0, 1);
    for (auto [kind, r, s] : {std::tuple{PairKind::oo, 4, 3}, std::tuple{PairKind::eo, 3, 2}}) {
        auto lat = lattice_eval(kind, r, s, tau, 400);
        auto G = G_series(kind, r, s, 40, 30);
        auto q = evaluate_q_expansion(G, tau, ev);
        double diff = std::abs(lat.value - q);
        EXPECT_LT(diff, 1e-3);
        EXPECT_LT(diff, 0.05 * std::abs(q)) << kind_name(kind) << " lattice " << lat.value << " q " << q;
        EXPECT_GT(lat.tail_bound, 0);
    }
}
