#pragma once

#include "des2/exact/qseries.hpp"
#include "des2/exact/rational.hpp"
#include "des2/symbolic.hpp"

#include <cstddef>
#include <mutex>
#include <string>
#include <vector>

namespace des2 {

enum class Parity { even, odd };

inline std::string parity_name(Parity p) { return p == Parity::even ? "e" : "o"; }

/// Bernoulli number B_n from X/(e^X - 1), so B_1 = -1/2. Values are cached.
inline Rational bernoulli(unsigned n)
{
    static std::mutex mu;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= n) {
        // sum_{j=0}^{m} binom(m+1, j) B_j = 0
        std::size_t m = table.size();
        Rational acc = 0;
        for (std::size_t j = 0; j < m; ++j) acc += Rational(binomial(static_cast<long>(m + 1), static_cast<long>(j))) * table[j];
        table.push_back(-acc / Rational(static_cast<long>(m + 1)));
    }
    return table[n];
}

/// Bernoulli polynomial B_n(x).
inline Rational bernoulli_poly(unsigned n, const Rational& x)
{
    Rational acc = 0;
    for (unsigned j = 0; j <= n; ++j) acc += Rational(binomial(n, j)) * bernoulli(j) * qpow(x, n - j);
    return acc;
}

/// Normalized zeta value at an even argument: (2 pi i)^(-k) zeta(k) = -B_k / (2 k!).
inline Rational zeta_tilde_even(int k)
{
    if (k < 2 || k % 2 != 0) throw DomainError("zeta_tilde_even needs even k >= 2");
    return -bernoulli(static_cast<unsigned>(k)) / Rational(2 * factorial(static_cast<unsigned long>(k)));
}

struct BetaConstants {
    int r = 1;
    Rational beta_e;
    Rational beta_o;
    Rational beta;  // -B_r / (2 r!), coefficient of X^(r-1) in (1/2)(1/X - 1/(e^X - 1))
};

inline BetaConstants beta_constants(int r)
{
    if (r < 1) throw DomainError("beta constants need r >= 1");
    Rational B = bernoulli(static_cast<unsigned>(r));
    Integer fact = factorial(static_cast<unsigned long>(r));
    BetaConstants out;
    out.r = r;
    out.beta = -B / Rational(2 * fact);
    out.beta_e = out.beta * pow2(-r);
    out.beta_o = out.beta * (1 - pow2(-r));
    return out;
}

inline Rational beta_of(Parity p, int r)
{
    auto b = beta_constants(r);
    return p == Parity::even ? b.beta_e : b.beta_o;
}

/// Divisor lists and twisted divisor power sums for 1..max_n. Immutable after construction.
class DivisorTable {
public:
    explicit DivisorTable(std::size_t max_n) : divs_(max_n + 1)
    {
        for (std::size_t d = 1; d <= max_n; ++d)
            for (std::size_t n = d; n <= max_n; n += d) divs_[n].push_back(static_cast<long>(d));
    }

    std::size_t max_n() const { return divs_.size() - 1; }
    const std::vector<long>& divisors(std::size_t n) const { return divs_.at(n); }

    /// sigma_j(n) = sum_{d | n} d^j
    Integer sigma(unsigned j, std::size_t n) const
    {
        Integer s = 0;
        for (long d : divisors(n)) s += ipow(d, j);
        return s;
    }
    /// sum_{d | n} (-1)^d d^j
    Integer alternating(unsigned j, std::size_t n) const
    {
        Integer s = 0;
        for (long d : divisors(n)) {
            if (d % 2 == 0)
                s += ipow(d, j);
            else
                s -= ipow(d, j);
        }
        return s;
    }
    /// sum_{d | n, n/d odd} d^j
    Integer odd_quotient(unsigned j, std::size_t n) const
    {
        Integer s = 0;
        for (long d : divisors(n))
            if ((static_cast<long>(n) / d) % 2 == 1) s += ipow(d, j);
        return s;
    }

private:
    std::vector<std::vector<long>> divs_;
};

/// Scalar (-1)^r / (2^r (r-1)!) shared by g_r^e, g_r^o.
inline Rational g_scalar(int r)
{
    return Rational(sign_pow(r)) / Rational(ipow(2, static_cast<unsigned long>(r)) * factorial(static_cast<unsigned long>(r - 1)));
}

/// g_r^e = c_r sum u^(r-1) q^(um), g_r^o = c_r sum (-1)^u u^(r-1) q^(um).
inline QSeries<Rational> g_series(Parity p, int r, std::size_t N, const DivisorTable* table = nullptr)
{
    if (r < 1) throw DomainError("g_r needs r >= 1");
    DivisorTable local(table ? 0 : N);
    const DivisorTable& t = table ? *table : local;
    if (t.max_n() < N) throw DomainError("divisor table too small");
    Rational c = g_scalar(r);
    QSeries<Rational> s(N);
    for (std::size_t n = 1; n <= N; ++n) {
        Integer v = p == Parity::even ? t.sigma(static_cast<unsigned>(r - 1), n) : t.alternating(static_cast<unsigned>(r - 1), n);
        s[n] = c * Rational(v);
    }
    return s;
}

/// gbar_r = -sum_m m phi_{r+1}(q^(2m)); coefficient of q^n is
/// -(-1)^(r+1)/(2^(r+1) r!) sum_{um=n} m (+-1)^u u^r.
inline QSeries<Rational> gbar_series(Parity p, int r, std::size_t N, const DivisorTable* table = nullptr)
{
    if (r < 0) throw DomainError("gbar_r needs r >= 0");
    DivisorTable local(table ? 0 : N);
    const DivisorTable& t = table ? *table : local;
    if (t.max_n() < N) throw DomainError("divisor table too small");
    Rational c = Rational(sign_pow(r)) /
                 Rational(ipow(2, static_cast<unsigned long>(r + 1)) * factorial(static_cast<unsigned long>(r)));
    QSeries<Rational> s(N);
    for (std::size_t n = 1; n <= N; ++n) {
        Integer acc = 0;
        for (long u : t.divisors(n)) {
            Integer term = ipow(u, static_cast<unsigned long>(r)) * (static_cast<long>(n) / u);
            if (p == Parity::odd && u % 2 == 1) term = -term;
            acc += term;
        }
        s[n] = c * Rational(acc);
    }
    return s;
}

enum class EisensteinKind { full, cusp_inf, cusp_0, G_o, G_e };

inline std::string eisenstein_kind_name(EisensteinKind k)
{
    switch (k) {
    case EisensteinKind::full: return "full";
    case EisensteinKind::cusp_inf: return "cusp_inf";
    case EisensteinKind::cusp_0: return "cusp_0";
    case EisensteinKind::G_o: return "G_o";
    case EisensteinKind::G_e: return "G_e";
    }
    return "?";
}

/// Eisenstein series normalized by (2 pi i)^(-k): exact q-part plus a constant that is rational for
/// even k and a formal zeta symbol for odd k.
struct EisensteinSeries {
    EisensteinKind kind = EisensteinKind::full;
    int k = 0;
    SymbolicScalar constant;
    QSeries<Rational> q_part;
};

inline EisensteinSeries eisenstein_series(EisensteinKind kind, int k, std::size_t N)
{
    if (k < 1) throw DomainError("Eisenstein series need k >= 1");
    DivisorTable t(N);
    EisensteinSeries out;
    out.kind = kind;
    out.k = k;
    out.q_part = QSeries<Rational>(N);
    bool even = k % 2 == 0;
    Rational c = Rational(sign_pow(k)) / Rational(factorial(static_cast<unsigned long>(k - 1)));
    auto odd_constant = [&](ZetaFamily f) { return SymbolicScalar(ZetaSymbol{f, k}); };
    switch (kind) {
    case EisensteinKind::full:
        for (std::size_t n = 1; n <= N; ++n) out.q_part[n] = c * Rational(t.sigma(static_cast<unsigned>(k - 1), n));
        out.constant = even ? SymbolicScalar(zeta_tilde_even(k)) : odd_constant(ZetaFamily::Z);
        break;
    case EisensteinKind::cusp_inf:
    case EisensteinKind::G_o:
        out.q_part = g_series(Parity::odd, k, N, &t);
        out.constant = even ? SymbolicScalar(beta_constants(k).beta_o) : odd_constant(ZetaFamily::Zo);
        break;
    case EisensteinKind::G_e:
        out.q_part = g_series(Parity::even, k, N, &t);
        out.constant = even ? SymbolicScalar(beta_constants(k).beta_e) : odd_constant(ZetaFamily::Ze);
        break;
    case EisensteinKind::cusp_0:
        for (std::size_t n = 1; n <= N; ++n)
            out.q_part[n] = c * Rational(t.odd_quotient(static_cast<unsigned>(k - 1), n));
        break;
    }
    return out;
}

/// Delta = q prod (1 - q^n)^24 via the logarithmic-derivative recurrence
/// n a_n = -24 sum_{j=1}^{n} sigma_1(j) a_(n-j) for prod (1 - q^n)^24 = sum a_n q^n.
inline QSeries<Rational> delta_series(std::size_t N)
{
    if (N < 1) throw DomainError("delta_series needs N >= 1");
    DivisorTable t(N);
    std::vector<Integer> sig(N + 1), a(N);
    for (std::size_t j = 1; j <= N; ++j) sig[j] = t.sigma(1, j);
    a[0] = 1;
    for (std::size_t n = 1; n < N; ++n) {
        Integer acc = 0;
        for (std::size_t j = 1; j <= n; ++j) acc += sig[j] * a[n - j];
        acc *= -24;
        mpz_divexact_ui(a[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
    }
    QSeries<Rational> d(N);
    for (std::size_t n = 1; n <= N; ++n) d[n] = Rational(a[n - 1]);
    return d;
}

/// rho_{k,l}(n) = sum_{a+b=n} sum_{u|a, v|b, a/u > b/v} u^k v^l (direct double divisor sum).
inline Integer rho(int k, int l, long n)
{
    if (k < 0 || l < 0) throw DomainError("rho needs k, l >= 0");
    if (n < 1) throw DomainError("rho needs n >= 1");
    Integer acc = 0;
    for (long a = 1; a < n; ++a) {
        long b = n - a;
        for (long u = 1; u <= a; ++u) {
            if (a % u) continue;
            for (long v = 1; v <= b; ++v) {
                if (b % v) continue;
                if (a * v > b * u) acc += ipow(u, static_cast<unsigned long>(k)) * ipow(v, static_cast<unsigned long>(l));
            }
        }
    }
    return acc;
}

/// sum_n rho_{k,l}(n) q^n through q^N, via sum_{m > m'} sum_{u,v} u^k v^l q^(um + vm').
inline QSeries<Rational> rho_series(int k, int l, std::size_t N)
{
    if (k < 0 || l < 0) throw DomainError("rho needs k, l >= 0");
    std::vector<Integer> acc(N + 1);
    std::vector<Integer> pk(N + 1), pl(N + 1);
    for (std::size_t i = 1; i <= N; ++i) {
        pk[i] = ipow(static_cast<long>(i), static_cast<unsigned long>(k));
        pl[i] = ipow(static_cast<long>(i), static_cast<unsigned long>(l));
    }
    for (std::size_t m = 2; m <= N; ++m)
        for (std::size_t u = 1; u * m < N; ++u)
            for (std::size_t mp = 1; mp < m; ++mp)
                for (std::size_t v = 1; u * m + v * mp <= N; ++v) acc[u * m + v * mp] += pk[u] * pl[v];
    QSeries<Rational> s(N);
    for (std::size_t n = 1; n <= N; ++n) s[n] = Rational(acc[n]);
    return s;
}

}  // namespace des2
