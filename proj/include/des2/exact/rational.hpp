#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace des2 {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for malformed input or out-of-domain arguments.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an exact operation has no exact result (nonzero remainder, singular system, ...).
class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline std::string to_string(const Integer& x) { return x.get_str(); }

// Integers print without a denominator.
inline std::string to_string(const Rational& x)
{
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) throw DomainError("not a rational: '" + s + "'");
    if (r.get_den() == 0) throw DomainError("zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den)
{
    if (den == 0) throw ArithmeticError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Binomial coefficient; zero outside 0 <= k <= n.
inline Integer binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Integer ipow(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer ipow(long base, unsigned long e) { return ipow(Integer(base), e); }

/// 2^e for any integer e.
inline Rational pow2(long e)
{
    Integer p = ipow(2, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) return Rational(p);
    Rational r(Integer(1), p);
    return r;
}

inline Rational qpow(const Rational& x, unsigned long e)
{
    Rational r(ipow(x.get_num(), e), ipow(x.get_den(), e));
    return r;
}

constexpr int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Rescales v to a primitive integer vector whose first nonzero entry is positive.
inline void make_primitive(std::vector<Rational>& v)
{
    Integer den = 1, g = 0;
    for (const auto& x : v) den = lcm(den, x.get_den());
    for (auto& x : v) {
        x *= den;
        g = gcd(g, x.get_num());
    }
    if (g == 0) return;
    int lead = 0;
    for (const auto& x : v)
        if (sgn(x) != 0) {
            lead = sgn(x);
            break;
        }
    Rational scale(Integer(lead), g);
    for (auto& x : v) x *= scale;
}

}  // namespace des2
