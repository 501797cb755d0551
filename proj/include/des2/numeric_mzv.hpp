#pragma once

#include "des2/eisenstein_q.hpp"
#include "des2/exact/rational.hpp"
#include "des2/kinds.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <deque>
#include <ios>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace des2 {

/// Working type: 160 significant decimal digits; requested precisions stay below kMaxDigits so at
/// least 20 guard digits remain.
using BigReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<160>,
                                              boost::multiprecision::et_off>;

inline constexpr int kDefaultDigits = 30;
inline constexpr int kMaxDigits = 140;

inline BigReal to_real(const Rational& q)
{
    BigReal x;
    mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return x;
}

inline BigReal real_pi()
{
    BigReal x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

inline BigReal real_log2()
{
    BigReal x;
    mpfr_const_log2(x.backend().data(), MPFR_RNDN);
    return x;
}

inline BigReal pow10(int e) { return boost::multiprecision::pow(BigReal(10), e); }

/// Decimal rendering with the given number of significant digits (scientific notation).
inline std::string format_real(const BigReal& x, int digits)
{
    return x.str(digits, std::ios_base::scientific);
}

/// c0 + c1 T with T the formal regularization variable.
struct RegularizedValue {
    BigReal c0;
    BigReal c1;
    std::string tag;

    BigReal at(const BigReal& T) const { return c0 + c1 * T; }
    bool convergent() const { return c1 == 0; }
};

enum class SingleKind { even, odd, full };

inline std::string single_kind_name(SingleKind k)
{
    switch (k) {
    case SingleKind::even: return "e";
    case SingleKind::odd: return "o";
    case SingleKind::full: return "full";
    }
    return "?";
}

namespace detail {

// B_{2j} as BigReal; deque keeps references stable while the table grows.
inline const BigReal& bernoulli_real(unsigned n)
{
    static std::mutex mu;
    static std::deque<BigReal> table;
    std::lock_guard<std::mutex> lock(mu);
    while (table.size() <= n) table.push_back(to_real(bernoulli(static_cast<unsigned>(table.size()))));
    return table[n];
}

inline void check_digits(int digits)
{
    if (digits < 5 || digits > kMaxDigits)
        throw DomainError("digits must lie in [5, " + std::to_string(kMaxDigits) + "]");
}

}  // namespace detail

/// Numeric evaluator at a fixed target precision. Memoizes values; not shared across threads.
class MzvEvaluator {
public:
    explicit MzvEvaluator(int digits = kDefaultDigits) : digits_(digits)
    {
        detail::check_digits(digits);
        eps_ = pow10(-(digits + 15));
    }

    int digits() const { return digits_; }
    /// Tolerance used by verifications: 10^-(digits-10).
    BigReal tolerance() const { return pow10(-(digits_ - 10)); }

    /// Hurwitz zeta sum_{j >= 0} (x + j)^-e for integer e >= 2, x > 0.
    BigReal hurwitz(int e, const BigReal& x) const
    {
        if (e < 2) throw DomainError("hurwitz needs e >= 2");
        BigReal acc = 0;
        BigReal y = x;
        const BigReal shift_to = BigReal(digits_ + 20);
        while (y < shift_to) {
            acc += boost::multiprecision::pow(y, -e);
            y += 1;
        }
        BigReal ye = boost::multiprecision::pow(y, -e);
        acc += ye * y / (e - 1) + ye / 2;
        // sum_j B_{2j}/(2j)! (e)_{2j-1} y^{1-e-2j}
        BigReal rising = e;       // (e)_{2j-1}
        BigReal fact = 2;         // (2j)!
        BigReal ypow = ye / y;    // y^{-e-1}
        BigReal inv_y2 = 1 / (y * y);
        BigReal prev = -1;
        for (unsigned j = 1; j < 400; ++j) {
            BigReal term = detail::bernoulli_real(2 * j) / fact * rising * ypow;
            BigReal mag = abs(term);
            acc += term;
            if (mag < eps_ * abs(acc)) break;
            if (prev >= 0 && mag > prev) break;  // asymptotic series started to diverge
            prev = mag;
            rising *= BigReal(e + 2 * j - 1) * BigReal(e + 2 * j);
            fact *= BigReal(2 * j + 1) * BigReal(2 * j + 2);
            ypow *= inv_y2;
        }
        return acc;
    }

    /// zeta(k), zeta^o(k) or zeta^e(k) for k >= 2.
    BigReal single_convergent(SingleKind kind, int k)
    {
        if (k < 2) throw DomainError("single zeta value diverges at k = 1; use single()");
        auto key = std::make_pair(static_cast<int>(kind), k);
        if (auto it = single_memo_.find(key); it != single_memo_.end()) return it->second;
        BigReal v;
        switch (kind) {
        case SingleKind::full: v = hurwitz(k, BigReal(1)); break;
        case SingleKind::odd: v = boost::multiprecision::pow(BigReal(2), -k) * hurwitz(k, BigReal(0.5)); break;
        case SingleKind::even: v = boost::multiprecision::pow(BigReal(2), -k) * hurwitz(k, BigReal(1)); break;
        }
        single_memo_.emplace(key, v);
        return v;
    }

    /// Single value with the regularization zeta^o(1) = (T + log 2)/2, zeta^e(1) = (T - log 2)/2, zeta(1) = T.
    RegularizedValue single(SingleKind kind, int k)
    {
        RegularizedValue out;
        out.tag = "zeta_" + single_kind_name(kind) + "(" + std::to_string(k) + ")";
        if (k >= 2) {
            out.c0 = single_convergent(kind, k);
            out.c1 = 0;
            return out;
        }
        if (k != 1) throw DomainError("single zeta needs k >= 1");
        BigReal l2 = real_log2();
        switch (kind) {
        case SingleKind::full: out.c0 = 0; out.c1 = 1; break;
        case SingleKind::odd: out.c0 = l2 / 2; out.c1 = BigReal(0.5); break;
        case SingleKind::even: out.c0 = -l2 / 2; out.c1 = BigReal(0.5); break;
        }
        return out;
    }

    BigReal single_parity(Parity p, int k) { return single_convergent(p == Parity::even ? SingleKind::even : SingleKind::odd, k); }

    /// sum_{m > n > 0} m^-r n^-s with m, n restricted by parity (level 2) or unrestricted (full).
    BigReal level2(PairKind kind, int r, int s)
    {
        if (r < 2) throw DomainError("double zeta value needs r >= 2 for convergence; use regularized_dzv");
        if (s < 1) throw DomainError("double zeta value needs s >= 1");
        auto key = std::make_tuple(static_cast<int>(kind), r, s);
        if (auto it = pair_memo_.find(key); it != pair_memo_.end()) return it->second;
        int a = first_parity(kind) == Parity::even ? 0 : 1;
        int b = second_parity(kind) == Parity::even ? 0 : 1;
        BigReal v = double_sum(2, a, b, r, s);
        pair_memo_.emplace(key, v);
        return v;
    }

    BigReal level1(int r, int s)
    {
        if (r < 2) throw DomainError("double zeta value needs r >= 2 for convergence");
        if (s < 1) throw DomainError("double zeta value needs s >= 1");
        auto key = std::make_tuple(-1, r, s);
        if (auto it = pair_memo_.find(key); it != pair_memo_.end()) return it->second;
        BigReal v = double_sum(1, 0, 0, r, s);
        pair_memo_.emplace(key, v);
        return v;
    }

    /// Level-2 double zeta value for all r, s >= 1 except (1, 1); r = 1 uses the regularization
    /// formulas with L = -log 2.
    RegularizedValue regularized(PairKind kind, int r, int s)
    {
        if (r == 1 && s == 1) throw DomainError("(r, s) = (1, 1) has no regularized value");
        if (r < 1 || s < 1) throw DomainError("indices must be positive");
        RegularizedValue out;
        out.tag = "zeta_" + kind_name(kind) + "(" + std::to_string(r) + "," + std::to_string(s) + ")";
        if (r >= 2) {
            out.c0 = level2(kind, r, s);
            out.c1 = 0;
            return out;
        }
        BigReal L = -real_log2();
        BigReal zo = single_convergent(SingleKind::odd, s);
        BigReal ze = single_convergent(SingleKind::even, s);
        switch (kind) {
        case PairKind::eo:
            out.c1 = zo / 2;
            out.c0 = L * zo / 2 - level2(PairKind::oe, s, 1);
            break;
        case PairKind::oe:
            out.c1 = ze / 2;
            out.c0 = -L * ze / 2 - level2(PairKind::eo, s, 1);
            break;
        case PairKind::oo:
            out.c1 = zo / 2;
            out.c0 = -L * zo / 2 - level2(PairKind::oo, s, 1) - single_convergent(SingleKind::odd, s + 1);
            break;
        case PairKind::ee: throw DomainError("regularized ee values are not defined here");
        }
        return out;
    }

    /// zeta_2(r, s) = sum_{m, n >= 1} (m + 2n)^-r m^-s = zeta^oo(r, s) + 2^-(r+s) zeta(r, s).
    BigReal zeta2(int r, int s)
    {
        return level2(PairKind::oo, r, s) + boost::multiprecision::pow(BigReal(2), -(r + s)) * level1(r, s);
    }

private:
    // sum over n >= n_first, n = b mod step, of n^-s H(n), H(n) = sum_{m > n, m = a mod step} m^-r.
    BigReal double_sum(int step, int a, int b, int r, int s)
    {
        int n_first = step == 1 ? 1 : (b == 0 ? 2 : 1);
        int delta = step == 1 ? 1 : (a == b ? 2 : 1);
        Rational theta = make_rational(delta, step);
        int n0 = 2 * (digits_ + 10) + 20;
        while ((n0 - n_first) % step != 0) ++n0;

        // Direct part: downward recursion for H from a Hurwitz value at the top.
        BigReal direct = 0;
        int n_top = n0 - step;
        if (n_top >= n_first) {
            int m_first = n_top + delta;
            BigReal H = boost::multiprecision::pow(BigReal(step), -r) *
                        hurwitz(r, BigReal(m_first) / BigReal(step));
            for (int n = n_top; n >= n_first; n -= step) {
                direct += H * boost::multiprecision::pow(BigReal(n), -s);
                // H(n - step) = H(n) + sum_{m = n - step + 1}^{n} [m = a mod step] m^-r
                for (int m = n - step + 1; m <= n; ++m)
                    if (m >= 1 && (step == 1 || m % 2 == a)) H += boost::multiprecision::pow(BigReal(m), -r);
            }
        }

        // Tail: H(n) ~ sum_k c_k n^(1-r-k), c_k = step^(k-1) (-1)^k B_k(theta) (r)_(k-1) / k!.
        BigReal tail = 0;
        BigReal prev = -1;
        Rational rising = Rational(1, r - 1);  // (r)_(-1)
        for (int k = 0; k < 600; ++k) {
            if (k >= 1) rising *= (k == 1) ? Rational(r - 1) : Rational(r + k - 2);
            Rational ck = Rational(sign_pow(k)) * bernoulli_poly(static_cast<unsigned>(k), theta) * rising /
                          Rational(factorial(static_cast<unsigned long>(k)));
            if (step == 2) ck *= pow2(k - 1);
            if (sgn(ck) == 0) continue;
            int e = r + s + k - 1;
            BigReal inner = boost::multiprecision::pow(BigReal(step), -e) * hurwitz(e, BigReal(n0) / BigReal(step));
            BigReal term = to_real(ck) * inner;
            BigReal mag = abs(term);
            tail += term;
            if (mag < eps_) break;
            if (prev >= 0 && mag > prev) break;
            prev = mag;
        }
        return direct + tail;
    }

    int digits_;
    BigReal eps_;
    std::map<std::pair<int, int>, BigReal> single_memo_;
    std::map<std::tuple<int, int, int>, BigReal> pair_memo_;
};

inline RegularizedValue zeta_single(SingleKind kind, int k, int digits = kDefaultDigits)
{
    return MzvEvaluator(digits).single(kind, k);
}

inline BigReal double_zeta_level2(PairKind kind, int r, int s, int digits = kDefaultDigits)
{
    return MzvEvaluator(digits).level2(kind, r, s);
}

inline RegularizedValue regularized_dzv(PairKind kind, int r, int s, int digits = kDefaultDigits)
{
    return MzvEvaluator(digits).regularized(kind, r, s);
}

inline BigReal double_zeta_level1(int r, int s, int digits = kDefaultDigits)
{
    return MzvEvaluator(digits).level1(r, s);
}

/// One numeric comparison lhs = rhs within a tolerance.
struct NumericCheck {
    std::string name;
    BigReal lhs;
    BigReal rhs;
    BigReal tolerance;
    bool pass = false;

    BigReal residual() const { return abs(lhs - rhs); }
};

inline NumericCheck make_check(std::string name, const BigReal& lhs, const BigReal& rhs, const BigReal& tol)
{
    NumericCheck c{std::move(name), lhs, rhs, tol, false};
    c.pass = c.residual() <= tol;
    return c;
}

struct NumericReport {
    std::string name;
    std::vector<NumericCheck> checks;
    std::map<std::string, std::string> data;  // informational values, not gated

    bool pass() const
    {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

/// Both chains of the double shuffle relations for zeta^o zeta^e and zeta^o zeta^o, at T = 0 and T = 1.
inline NumericReport verify_prop1(int r, int s, MzvEvaluator& ev)
{
    if (r < 1 || s < 1 || (r == 1 && s == 1)) throw DomainError("prop1 needs r, s >= 1 and (r, s) != (1, 1)");
    NumericReport rep;
    rep.name = "prop1(" + std::to_string(r) + "," + std::to_string(s) + ")";
    const int k = r + s;
    const BigReal tol = ev.tolerance();
    auto Z = [&](PairKind kind, int i, int j) { return ev.regularized(kind, i, j); };
    auto zo_r = ev.single(SingleKind::odd, r), ze_s = ev.single(SingleKind::even, s), zo_s = ev.single(SingleKind::odd, s);
    auto zo_k = ev.single(SingleKind::odd, k);
    for (int t = 0; t <= 1; ++t) {
        BigReal T = t;
        std::string at = "@T=" + std::to_string(t);
        BigReal lhs1 = zo_r.at(T) * ze_s.at(T);
        BigReal mid1 = Z(PairKind::oe, r, s).at(T) + Z(PairKind::eo, s, r).at(T);
        BigReal rhs1 = 0;
        for (int i = 1; i < k; ++i) {
            int j = k - i;
            rhs1 += to_real(Rational(binomial(i - 1, r - 1))) * Z(PairKind::oe, i, j).at(T) +
                    to_real(Rational(binomial(i - 1, s - 1))) * Z(PairKind::oo, i, j).at(T);
        }
        BigReal lhs2 = zo_r.at(T) * zo_s.at(T);
        BigReal mid2 = Z(PairKind::oo, r, s).at(T) + Z(PairKind::oo, s, r).at(T) + zo_k.at(T);
        BigReal rhs2 = 0;
        for (int i = 1; i < k; ++i)
            rhs2 += to_real(Rational(binomial(i - 1, r - 1) + binomial(i - 1, s - 1))) * Z(PairKind::eo, i, k - i).at(T);
        rep.checks.push_back(make_check("oe:product=stuffle" + at, lhs1, mid1, tol));
        rep.checks.push_back(make_check("oe:stuffle=shuffle" + at, mid1, rhs1, tol));
        rep.checks.push_back(make_check("oo:product=stuffle" + at, lhs2, mid2, tol));
        rep.checks.push_back(make_check("oo:stuffle=shuffle" + at, mid2, rhs2, tol));
    }
    return rep;
}

inline NumericReport verify_prop1(int r, int s, int digits = kDefaultDigits)
{
    MzvEvaluator ev(digits);
    return verify_prop1(r, s, ev);
}

/// sum_{r even} zeta^oo(r, k - r) = zeta^o(k) / 4.
inline NumericReport verify_sum_formula_numeric(int k, int digits = kDefaultDigits)
{
    if (k < 4 || k % 2 != 0) throw DomainError("numeric sum formula needs even k >= 4");
    MzvEvaluator ev(digits);
    BigReal lhs = 0;
    for (int r = 2; r <= k - 2; r += 2) lhs += ev.level2(PairKind::oo, r, k - r);
    BigReal rhs = ev.single_convergent(SingleKind::odd, k) / 4;
    NumericReport rep;
    rep.name = "sum_formula_numeric(" + std::to_string(k) + ")";
    rep.checks.push_back(make_check("sum zeta^oo(r,k-r) = zeta^o(k)/4", lhs, rhs, ev.tolerance()));
    return rep;
}

/// Komori-Matsumoto-Tsumura identity for odd weight. The identity holds with
/// zeta_2(r, s) := sum m^-r (m + 2n)^-s, i.e. the argument order swapped relative to the
/// (m + 2n)^-r m^-s reading; the residual of that reading is reported under data["literal_residual"].
inline NumericReport verify_kmt(int r, int s, int digits = kDefaultDigits)
{
    if (r < 2 || s < 2) throw DomainError("KMT identity needs r, s >= 2");
    const int k = r + s;
    if (k % 2 == 0) throw DomainError("KMT identity needs odd weight r + s");
    MzvEvaluator ev(digits);
    auto zeta = [&](int i) -> BigReal {
        if (i == 0) return BigReal(-0.5);
        return ev.single_convergent(SingleKind::full, i);
    };
    BigReal rhs = -zeta(k);
    for (int i = 0; i <= k - 3; i += 2) {
        Rational c = pow2(-k + i + 1) * Rational(binomial(k - i - 1, r - 1) + binomial(k - i - 1, s - 1));
        rhs += to_real(c) * zeta(i) * zeta(k - i);
    }
    auto pref = [](int e) { return BigReal(1 + sign_pow(e)); };
    // zeta_2 in the (m+2n)^-a m^-b reading is ev.zeta2(a, b); the working convention swaps arguments.
    BigReal lhs = pref(r) * ev.zeta2(s, r) + pref(s) * ev.zeta2(r, s);
    BigReal literal = pref(r) * ev.zeta2(r, s) + pref(s) * ev.zeta2(s, r);
    NumericReport rep;
    rep.name = "kmt(" + std::to_string(r) + "," + std::to_string(s) + ")";
    rep.checks.push_back(make_check("kmt", lhs, rhs, ev.tolerance()));
    rep.data["literal_residual"] = format_real(abs(literal - rhs), 6);
    return rep;
}

}  // namespace des2
