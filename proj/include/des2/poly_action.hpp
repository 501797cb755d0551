#pragma once

#include "des2/exact/bipoly.hpp"
#include "des2/exact/rational.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace des2 {

/// Integer 2x2 matrix modulo sign. Stored with (c, d) lexicographically positive.
class ProjMatrix {
public:
    ProjMatrix() : ProjMatrix(1, 0, 0, 1) {}
    ProjMatrix(long a, long b, long c, long d) : a_(a), b_(b), c_(c), d_(d) { normalize(); }

    long a() const { return a_; }
    long b() const { return b_; }
    long c() const { return c_; }
    long d() const { return d_; }
    long det() const { return a_ * d_ - b_ * c_; }

    friend ProjMatrix operator*(const ProjMatrix& x, const ProjMatrix& y)
    {
        return ProjMatrix(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
                          x.c_ * y.b_ + x.d_ * y.d_);
    }
    friend bool operator==(const ProjMatrix& x, const ProjMatrix& y) { return x.key() == y.key(); }
    friend bool operator!=(const ProjMatrix& x, const ProjMatrix& y) { return !(x == y); }
    friend bool operator<(const ProjMatrix& x, const ProjMatrix& y) { return x.key() < y.key(); }

    static ProjMatrix identity() { return {1, 0, 0, 1}; }
    static ProjMatrix T() { return {1, 1, 0, 1}; }
    static ProjMatrix S() { return {0, -1, 1, 0}; }
    static ProjMatrix epsilon() { return {-1, 0, 0, 1}; }
    static ProjMatrix delta() { return {0, 1, 1, 0}; }
    static ProjMatrix M() { return {-1, -1, 2, 1}; }
    static ProjMatrix T_prime() { return {1, 0, -1, 1}; }
    static ProjMatrix T_transpose() { return {1, 0, 1, 1}; }

    std::string to_string() const
    {
        return "[[" + std::to_string(a_) + "," + std::to_string(b_) + "],[" + std::to_string(c_) + "," +
               std::to_string(d_) + "]]";
    }

private:
    std::tuple<long, long, long, long> key() const { return {a_, b_, c_, d_}; }

    void normalize()
    {
        bool flip = false;
        if (c_ != 0)
            flip = c_ < 0;
        else if (d_ != 0)
            flip = d_ < 0;
        else if (a_ != 0)
            flip = a_ < 0;
        else
            flip = b_ < 0;
        if (flip) {
            a_ = -a_;
            b_ = -b_;
            c_ = -c_;
            d_ = -d_;
        }
    }

    long a_, b_, c_, d_;
};

/// Finite integer combination of projective matrices.
class GroupRingElement {
public:
    GroupRingElement() = default;
    GroupRingElement(const ProjMatrix& m, long coeff = 1) { add(m, coeff); }

    static GroupRingElement one() { return GroupRingElement(ProjMatrix::identity()); }

    const std::map<ProjMatrix, long>& terms() const { return terms_; }

    GroupRingElement& add(const ProjMatrix& m, long coeff)
    {
        long& c = terms_[m];
        c += coeff;
        if (c == 0) terms_.erase(m);
        return *this;
    }

    GroupRingElement& operator+=(const GroupRingElement& o)
    {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o)
    {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y)
    {
        GroupRingElement r;
        for (const auto& [m1, c1] : x.terms_)
            for (const auto& [m2, c2] : y.terms_) r.add(m1 * m2, c1 * c2);
        return r;
    }
    friend GroupRingElement operator*(long s, GroupRingElement x)
    {
        GroupRingElement r;
        if (s == 0) return r;
        for (const auto& [m, c] : x.terms_) r.add(m, s * c);
        return r;
    }
    friend bool operator==(const GroupRingElement& x, const GroupRingElement& y) { return x.terms_ == y.terms_; }

    bool is_zero() const { return terms_.empty(); }

private:
    std::map<ProjMatrix, long> terms_;
};

inline GroupRingElement operator+(const ProjMatrix& a, const ProjMatrix& b)
{
    return GroupRingElement(a) + GroupRingElement(b);
}
inline GroupRingElement operator-(const ProjMatrix& a, const ProjMatrix& b)
{
    return GroupRingElement(a) - GroupRingElement(b);
}

/// Polynomial in one variable of degree <= k - 2, carrying the weight k.
class Poly {
public:
    Poly() : Poly(2) {}
    explicit Poly(int k) : k_(k)
    {
        if (k < 2) throw DomainError("weight must be at least 2");
        c_.assign(static_cast<std::size_t>(k - 1), Rational(0));
    }
    Poly(int k, std::vector<Rational> coeffs) : Poly(k)
    {
        if (coeffs.size() > c_.size()) throw DomainError("polynomial degree exceeds k-2");
        for (std::size_t i = 0; i < coeffs.size(); ++i) c_[i] = coeffs[i];
    }

    static Poly monomial(int k, int i, const Rational& c = 1)
    {
        Poly p(k);
        p.at(i) = c;
        return p;
    }

    /// x^r (x - 2)^(k-2-r).
    static Poly x_power_times_shift(int k, int r)
    {
        Poly p(k);
        int e = k - 2 - r;
        for (int t = 0; t <= e; ++t) p.at(r + t) = Rational(binomial(e, t) * ipow(-2, static_cast<unsigned long>(e - t)));
        return p;
    }

    int weight() const { return k_; }
    int max_degree() const { return k_ - 2; }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& coeff(int i) const { return c_.at(static_cast<std::size_t>(i)); }
    Rational& at(int i)
    {
        if (i < 0 || i > k_ - 2) throw DomainError("exponent outside 0..k-2");
        return c_[static_cast<std::size_t>(i)];
    }

    Poly& operator+=(const Poly& o)
    {
        check_weight(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        check_weight(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Poly& operator*=(const Rational& s)
    {
        for (auto& x : c_) x *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.k_ == b.k_ && a.c_ == b.c_; }

    bool is_zero() const
    {
        for (const auto& x : c_)
            if (sgn(x) != 0) return false;
        return true;
    }

    bool is_even() const
    {
        for (std::size_t i = 1; i < c_.size(); i += 2)
            if (sgn(c_[i]) != 0) return false;
        return true;
    }

    /// F(X, Y) = Y^(k-2) f(X / Y).
    BiPoly<Rational> homogenize() const
    {
        BiPoly<Rational> F(k_ - 2);
        for (int i = 0; i <= k_ - 2; ++i) F.at(i, k_ - 2 - i) = c_[static_cast<std::size_t>(i)];
        return F;
    }

    static Poly dehomogenize(const BiPoly<Rational>& F, int k)
    {
        Poly p(k);
        for (int i = 0; i <= F.degree_bound(); ++i)
            for (int j = 0; i + j <= F.degree_bound(); ++j) {
                if (sgn(F.coeff(i, j)) == 0) continue;
                if (i + j != k - 2) throw DomainError("polynomial is not homogeneous of degree k-2");
                p.at(i) += F.coeff(i, j);
            }
        return p;
    }

private:
    void check_weight(const Poly& o) const
    {
        if (o.k_ != k_) throw DomainError("weight mismatch");
    }

    int k_;
    std::vector<Rational> c_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

/// (f | gamma)(x) = (cx + d)^(k-2) f((ax + b)/(cx + d)).
inline Poly slash(const Poly& f, const ProjMatrix& g, int k)
{
    if (k != f.weight()) throw DomainError("weight of polynomial and action differ");
    if (k < 4 || k % 2 != 0) throw DomainError("slash action needs even k >= 4");
    if (g.det() == 0) throw DomainError("matrix has zero determinant");
    // sum_i f_i (ax + b)^i (cx + d)^(k-2-i)
    int n = k - 2;
    auto expand = [](long lin, long cst, int e) {
        std::vector<Integer> out(static_cast<std::size_t>(e + 1));
        for (int t = 0; t <= e; ++t)
            out[t] = binomial(e, t) * ipow(lin, static_cast<unsigned long>(t)) * ipow(cst, static_cast<unsigned long>(e - t));
        return out;
    };
    Poly r(k);
    for (int i = 0; i <= n; ++i) {
        const Rational& fi = f.coeff(i);
        if (sgn(fi) == 0) continue;
        auto p1 = expand(g.a(), g.b(), i);
        auto p2 = expand(g.c(), g.d(), n - i);
        for (int s = 0; s <= i; ++s) {
            if (p1[s] == 0) continue;
            for (int t = 0; t <= n - i; ++t)
                if (p2[t] != 0) r.at(s + t) += fi * Rational(p1[s] * p2[t]);
        }
    }
    return r;
}

inline Poly slash(const Poly& f, const ProjMatrix& g) { return slash(f, g, f.weight()); }

inline Poly slash_ring(const Poly& f, const GroupRingElement& e, int k)
{
    Poly r(k);
    for (const auto& [m, c] : e.terms()) r += Rational(c) * slash(f, m, k);
    return r;
}

inline Poly slash_ring(const Poly& f, const GroupRingElement& e) { return slash_ring(f, e, f.weight()); }

struct IdentityCheck {
    std::string name;
    bool holds = false;
};

/// Projective identities among the named generators.
inline std::vector<IdentityCheck> verify_group_identities()
{
    using P = ProjMatrix;
    const P T = P::T(), S = P::S(), e = P::epsilon(), d = P::delta(), M = P::M(), I = P::identity();
    std::vector<IdentityCheck> out;
    out.push_back({"TSTST=S", T * S * T * S * T == S});
    out.push_back({"TeT=e", T * e * T == e});
    out.push_back({"eS=d", e * S == d});
    out.push_back({"de=S", d * e == S});
    out.push_back({"ed=S", e * d == S});
    out.push_back({"M^2=1", M * M == I});
    out.push_back({"(Te)^2=1", (T * e) * (T * e) == I});
    out.push_back({"T!=S", T != S});
    return out;
}

}  // namespace des2
