#pragma once

#include "des2/exact/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace des2 {

/// Truncated power series sum_{n=0}^{N} c_n q^n over a coefficient ring S.
/// Binary operations on series of different orders truncate to the smaller order.
template <class S>
class QSeries {
public:
    using value_type = S;

    QSeries() : c_(1, S{}) {}
    explicit QSeries(std::size_t order, const S& zero = S{}) : c_(order + 1, zero) {}

    static QSeries from_coeffs(std::vector<S> coeffs)
    {
        if (coeffs.empty()) throw DomainError("series needs at least one coefficient");
        QSeries s;
        s.c_ = std::move(coeffs);
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const std::vector<S>& coeffs() const { return c_; }

    const S& operator[](std::size_t n) const { return c_.at(n); }
    S& operator[](std::size_t n) { return c_.at(n); }

    QSeries truncated(std::size_t order) const
    {
        QSeries r = *this;
        r.c_.resize(std::min(order, this->order()) + 1);
        return r;
    }

    QSeries& operator+=(const QSeries& o)
    {
        shrink_to(o.order());
        for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
        return *this;
    }
    QSeries& operator-=(const QSeries& o)
    {
        shrink_to(o.order());
        for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
        return *this;
    }
    template <class C>
    QSeries& operator*=(const C& scalar)
    {
        for (auto& x : c_) x *= scalar;
        return *this;
    }

    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator-(QSeries a)
    {
        for (auto& x : a.c_) x = -x;
        return a;
    }

    /// Scalar multiple; the scalar ring C must act on S.
    template <class C>
    QSeries scaled(const C& scalar) const
    {
        QSeries r = *this;
        r *= scalar;
        return r;
    }

    /// Cauchy product truncated to the smaller order.
    friend QSeries operator*(const QSeries& a, const QSeries& b) { return multiply(a, b); }

    /// Product with a series over a ring acting on S (e.g. rational series times symbolic series).
    template <class T>
    QSeries times(const QSeries<T>& b) const
    {
        std::size_t N = std::min(order(), b.order());
        QSeries r(N, zero_like());
        for (std::size_t i = 0; i <= N; ++i) {
            if (is_zero_value(c_[i])) continue;
            for (std::size_t j = 0; i + j <= N; ++j)
                if (!is_zero_value(b[j])) r.c_[i + j] += c_[i] * b[j];
        }
        return r;
    }

    /// Exact division by q; throws if the constant term is nonzero.
    QSeries divide_by_q() const
    {
        if (!is_zero_value(c_[0])) throw ArithmeticError("series has a nonzero constant term; not divisible by q");
        if (c_.size() == 1) return QSeries(0, zero_like());
        return from_coeffs(std::vector<S>(c_.begin() + 1, c_.end()));
    }

    /// Multiplication by q^m (order preserved, top terms drop).
    QSeries shifted(std::size_t m) const
    {
        QSeries r(order(), zero_like());
        for (std::size_t n = 0; n + m <= order(); ++n) r.c_[n + m] = c_[n];
        return r;
    }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const S& x) { return is_zero_value(x); });
    }

    friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

private:
    static QSeries multiply(const QSeries& a, const QSeries& b)
    {
        std::size_t N = std::min(a.order(), b.order());
        QSeries r(N, a.zero_like());
        for (std::size_t i = 0; i <= N; ++i) {
            if (is_zero_value(a.c_[i])) continue;
            for (std::size_t j = 0; i + j <= N; ++j)
                if (!is_zero_value(b.c_[j])) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    static bool is_zero_value(const S& x)
    {
        using des2::is_zero;
        return is_zero(x);
    }

    S zero_like() const
    {
        S z = c_[0];
        z -= c_[0];
        return z;
    }

    void shrink_to(std::size_t order)
    {
        if (order < this->order()) c_.resize(order + 1);
    }

    std::vector<S> c_;
};

/// Index of the first differing coefficient up to the common order, if any.
template <class S>
std::optional<std::size_t> first_mismatch(const QSeries<S>& a, const QSeries<S>& b, std::size_t from = 0)
{
    std::size_t N = std::min(a.order(), b.order());
    for (std::size_t n = from; n <= N; ++n)
        if (!(a[n] == b[n])) return n;
    return std::nullopt;
}

template <class S>
bool is_zero(const QSeries<S>& s)
{
    return s.is_zero();
}

template <class S>
QSeries<S> series_mul(const QSeries<S>& a, const QSeries<S>& b)
{
    return a * b;
}

template <class S>
QSeries<S> series_add(const QSeries<S>& a, const QSeries<S>& b)
{
    return a + b;
}

template <class S, class C>
QSeries<S> series_scale(const QSeries<S>& a, const C& c)
{
    return a.scaled(c);
}

template <class S>
QSeries<S> series_div_q(const QSeries<S>& a)
{
    return a.divide_by_q();
}

template <class S>
QSeries<S> series_truncate(const QSeries<S>& a, std::size_t order)
{
    return a.truncated(order);
}

}  // namespace des2
