#pragma once

#include "des2/exact/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace des2 {

/// Integer linear form a*X + b*Y.
struct LinearForm {
    long x = 0;
    long y = 0;
};

/// Polynomial in X, Y of total degree <= D with coefficients in a module S over Q.
/// Coefficients are stored for all (i, j) with i + j <= D; higher terms produced by
/// products are discarded.
template <class S>
class BiPoly {
public:
    using value_type = S;

    BiPoly() : BiPoly(0) {}
    explicit BiPoly(int degree, const S& zero = S{}) : degree_(degree), zero_(zero)
    {
        if (degree < 0) throw DomainError("negative degree bound");
        c_.assign(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2), zero);
    }

    int degree_bound() const { return degree_; }
    const S& zero() const { return zero_; }

    const S& coeff(int i, int j) const
    {
        if (i < 0 || j < 0 || i + j > degree_) return zero_;
        return c_[index(i, j)];
    }
    S& at(int i, int j)
    {
        if (i < 0 || j < 0 || i + j > degree_) throw DomainError("monomial outside the degree bound");
        return c_[index(i, j)];
    }

    BiPoly& operator+=(const BiPoly& o)
    {
        for (int i = 0; i <= degree_; ++i)
            for (int j = 0; i + j <= degree_; ++j) at(i, j) += o.coeff(i, j);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o)
    {
        for (int i = 0; i <= degree_; ++i)
            for (int j = 0; i + j <= degree_; ++j) at(i, j) -= o.coeff(i, j);
        return *this;
    }
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }

    template <class C>
    BiPoly scaled(const C& c) const
    {
        BiPoly r = *this;
        for (auto& x : r.c_) x *= c;
        return r;
    }

    /// P(Y, X).
    BiPoly swapped() const
    {
        BiPoly r(degree_, zero_);
        for (int i = 0; i <= degree_; ++i)
            for (int j = 0; i + j <= degree_; ++j) r.at(j, i) = coeff(i, j);
        return r;
    }

    /// P(aX + bY, cX + dY) for integer linear forms; degrees are preserved so nothing truncates.
    BiPoly substitute(LinearForm xi, LinearForm eta) const
    {
        BiPoly r(degree_, zero_);
        for (int i = 0; i <= degree_; ++i) {
            std::vector<Rational> xi_pow = expand_power(xi, i);
            for (int j = 0; i + j <= degree_; ++j) {
                const S& c = coeff(i, j);
                if (is_zero_value(c)) continue;
                std::vector<Rational> eta_pow = expand_power(eta, j);
                for (int t = 0; t <= i; ++t) {
                    if (sgn(xi_pow[t]) == 0) continue;
                    for (int u = 0; u <= j; ++u) {
                        if (sgn(eta_pow[u]) == 0) continue;
                        // X^t Y^(i-t) * X^u Y^(j-u)
                        Rational w = xi_pow[t] * eta_pow[u];
                        S term = c;
                        term *= w;
                        r.at(t + u, i + j - t - u) += term;
                    }
                }
            }
        }
        return r;
    }

    /// Evaluation at rational (x, y).
    S evaluate(const Rational& x, const Rational& y) const
    {
        S acc = zero_;
        for (int i = 0; i <= degree_; ++i)
            for (int j = 0; i + j <= degree_; ++j) {
                const S& c = coeff(i, j);
                if (is_zero_value(c)) continue;
                Rational w = qpow(x, static_cast<unsigned long>(i)) * qpow(y, static_cast<unsigned long>(j));
                S term = c;
                term *= w;
                acc += term;
            }
        return acc;
    }

    /// Exact quotient by X; throws if a pure Y^j term is present.
    BiPoly divide_by_x() const
    {
        BiPoly r(degree_ > 0 ? degree_ - 1 : 0, zero_);
        for (int j = 0; j <= degree_; ++j)
            if (!is_zero_value(coeff(0, j))) throw ArithmeticError("polynomial is not divisible by X");
        for (int i = 1; i <= degree_; ++i)
            for (int j = 0; i + j <= degree_; ++j) r.at(i - 1, j) = coeff(i, j);
        return r;
    }

    /// Exact quotient by (X - Y), computed per homogeneous component; throws on a nonzero remainder.
    BiPoly divide_by_x_minus_y() const
    {
        BiPoly r(degree_ > 0 ? degree_ - 1 : 0, zero_);
        if (!is_zero_value(coeff(0, 0))) throw ArithmeticError("polynomial is not divisible by X - Y");
        for (int d = 1; d <= degree_; ++d) {
            // p_i = coefficient of X^i Y^(d-i); q_i of X^i Y^(d-1-i).
            // p_0 = -q_0, p_i = q_(i-1) - q_i, p_d = q_(d-1).
            S q = zero_;
            q -= coeff(0, d);
            r.at(0, d - 1) = q;
            for (int i = 1; i < d; ++i) {
                S next = q;
                next -= coeff(i, d - i);
                r.at(i, d - 1 - i) = next;
                q = next;
            }
            S rem = coeff(d, 0);
            rem -= q;
            if (!is_zero_value(rem)) throw ArithmeticError("polynomial is not divisible by X - Y");
        }
        return r;
    }

    bool is_zero() const
    {
        for (const auto& x : c_)
            if (!is_zero_value(x)) return false;
        return true;
    }

    /// Same polynomial with the degree bound lowered (terms above it dropped).
    BiPoly truncated(int degree) const
    {
        BiPoly r(degree, zero_);
        for (int i = 0; i <= degree; ++i)
            for (int j = 0; i + j <= degree; ++j) r.at(i, j) = coeff(i, j);
        return r;
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b)
    {
        int D = a.degree_ > b.degree_ ? a.degree_ : b.degree_;
        for (int i = 0; i <= D; ++i)
            for (int j = 0; i + j <= D; ++j) {
                S d = a.coeff(i, j);
                d -= b.coeff(i, j);
                if (!is_zero_value(d)) return false;
            }
        return true;
    }

private:
    std::size_t index(int i, int j) const
    {
        int d = i + j;
        return static_cast<std::size_t>(d * (d + 1) / 2 + i);
    }

    static bool is_zero_value(const S& x)
    {
        using des2::is_zero;
        return is_zero(x);
    }

    // Coefficients of (aX + bY)^n indexed by the X exponent.
    static std::vector<Rational> expand_power(LinearForm f, int n)
    {
        std::vector<Rational> out(static_cast<std::size_t>(n + 1));
        for (int t = 0; t <= n; ++t) {
            Integer v = binomial(n, t) * ipow(f.x, static_cast<unsigned long>(t)) *
                        ipow(f.y, static_cast<unsigned long>(n - t));
            out[t] = Rational(v);
        }
        return out;
    }

    int degree_;
    S zero_;
    std::vector<S> c_;
};

template <class S>
bool is_zero(const BiPoly<S>& p)
{
    return p.is_zero();
}

/// Univariate data sum_p a_p X^(p-1) (p = 1..) as a bivariate polynomial in X.
template <class S>
BiPoly<S> bipoly_in_x(const std::vector<S>& a_by_power, int degree, const S& zero)
{
    BiPoly<S> r(degree, zero);
    for (int i = 0; i <= degree && i < static_cast<int>(a_by_power.size()); ++i) r.at(i, 0) = a_by_power[i];
    return r;
}

/// Product f(X) * g(Y) of univariate coefficient lists (index = exponent), truncated to the degree bound.
template <class S, class Mul>
BiPoly<S> outer_product(const std::vector<S>& fx, const std::vector<S>& gy, int degree, const S& zero, Mul mul)
{
    BiPoly<S> r(degree, zero);
    for (int i = 0; i <= degree && i < static_cast<int>(fx.size()); ++i)
        for (int j = 0; i + j <= degree && j < static_cast<int>(gy.size()); ++j) r.at(i, j) = mul(fx[i], gy[j]);
    return r;
}

/// Truncated product of two bivariate polynomials with a user-supplied coefficient product.
template <class R, class A, class B, class Mul>
BiPoly<R> bipoly_mul(const BiPoly<A>& a, const BiPoly<B>& b, int degree, const R& zero, Mul mul)
{
    BiPoly<R> r(degree, zero);
    for (int i = 0; i <= a.degree_bound(); ++i)
        for (int j = 0; i + j <= a.degree_bound() && i + j <= degree; ++j) {
            const A& x = a.coeff(i, j);
            for (int s = 0; s <= b.degree_bound() && i + j + s <= degree; ++s)
                for (int t = 0; s + t <= b.degree_bound() && i + j + s + t <= degree; ++t)
                    r.at(i + s, j + t) += mul(x, b.coeff(s, t));
        }
    return r;
}

/// Substitution given arbitrary images; rejects anything that is not an integer linear form.
template <class S>
BiPoly<S> bipoly_substitute(const BiPoly<S>& p, const BiPoly<Rational>& x_image, const BiPoly<Rational>& y_image)
{
    auto as_linear = [](const BiPoly<Rational>& f) {
        for (int i = 0; i <= f.degree_bound(); ++i)
            for (int j = 0; i + j <= f.degree_bound(); ++j) {
                if (i + j == 1) continue;
                if (sgn(f.coeff(i, j)) != 0) throw DomainError("substitution is not a linear form");
            }
        const Rational& a = f.coeff(1, 0);
        const Rational& b = f.coeff(0, 1);
        if (a.get_den() != 1 || b.get_den() != 1) throw DomainError("substitution has non-integer coefficients");
        if (!a.get_num().fits_slong_p() || !b.get_num().fits_slong_p())
            throw DomainError("substitution coefficients out of range");
        return LinearForm{a.get_num().get_si(), b.get_num().get_si()};
    };
    return p.substitute(as_linear(x_image), as_linear(y_image));
}

}  // namespace des2
