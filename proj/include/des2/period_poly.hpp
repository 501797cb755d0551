#pragma once

#include "des2/exact/matrix.hpp"
#include "des2/exact/rational.hpp"
#include "des2/poly_action.hpp"

#include <string>
#include <vector>

namespace des2 {

enum class WkFlavor { plus_zero, minus, plus };

inline std::string to_string(WkFlavor f)
{
    switch (f) {
    case WkFlavor::plus_zero: return "plus_zero";
    case WkFlavor::minus: return "minus";
    case WkFlavor::plus: return "plus";
    }
    return "?";
}

struct WkSpace {
    int k = 0;
    WkFlavor flavor = WkFlavor::plus_zero;
    std::vector<Poly> basis;
    std::size_t dim() const { return basis.size(); }
};

namespace detail {

inline void require_even_weight(int k)
{
    if (k < 4 || k % 2 != 0) throw DomainError("weight must be even and >= 4");
}

inline GroupRingElement level2_operator()
{
    using P = ProjMatrix;
    return (GroupRingElement(P::identity()) - GroupRingElement(P::T())) *
           (GroupRingElement(P::identity()) + GroupRingElement(P::M()));
}

/// Kernel of P -> P|op restricted to span{x^e : e in exps}.
inline std::vector<Poly> restricted_kernel(int k, const std::vector<int>& exps, const GroupRingElement& op)
{
    if (exps.empty()) return {};
    QMatrix A(static_cast<std::size_t>(k - 1), exps.size());
    for (std::size_t c = 0; c < exps.size(); ++c) {
        Poly img = slash_ring(Poly::monomial(k, exps[c]), op, k);
        for (int i = 0; i <= k - 2; ++i) A(static_cast<std::size_t>(i), c) = img.coeff(i);
    }
    std::vector<Poly> out;
    for (const auto& v : A.kernel(KernelSide::right)) {
        Poly p(k);
        for (std::size_t c = 0; c < exps.size(); ++c) p.at(exps[c]) = v[c];
        out.push_back(p);
    }
    return out;
}

inline std::vector<int> exponents(int from, int to, int parity)
{
    std::vector<int> e;
    for (int i = from; i <= to; ++i)
        if (((i % 2) + 2) % 2 == parity) e.push_back(i);
    return e;
}

}  // namespace detail

/// Direct kernel of P -> P|(1-T)(1+M) on all even polynomials of degree <= k-2.
inline WkSpace wk_plus_direct(int k)
{
    detail::require_even_weight(k);
    return {k, WkFlavor::plus, detail::restricted_kernel(k, detail::exponents(0, k - 2, 0), detail::level2_operator())};
}

inline WkSpace wk_basis(int k, WkFlavor flavor)
{
    detail::require_even_weight(k);
    const auto op = detail::level2_operator();
    switch (flavor) {
    case WkFlavor::plus_zero:
        return {k, flavor, detail::restricted_kernel(k, detail::exponents(2, k - 4, 0), op)};
    case WkFlavor::minus:
        return {k, flavor, detail::restricted_kernel(k, detail::exponents(1, k - 3, 1), op)};
    case WkFlavor::plus: {
        WkSpace s{k, flavor, {Poly::monomial(k, 0), Poly::monomial(k, k - 2)}};
        for (auto& p : wk_basis(k, WkFlavor::plus_zero).basis) s.basis.push_back(p);
        return s;
    }
    }
    throw DomainError("unknown flavor");
}

/// True when P|(1-T)(1+M) = 0.
inline bool in_wk(const Poly& p) { return slash_ring(p, detail::level2_operator()).is_zero(); }

/// Rows j = 1, 3, ..., k-3; column c = 1..k/2-2 is the unknown a_{k-2-2c}, the coefficient of x^(k-2-2c).
inline QMatrix lineq_system(int k)
{
    detail::require_even_weight(k);
    const int cols = k / 2 - 2;
    std::vector<std::vector<Rational>> rows;
    for (int j = 1; j <= k - 3; j += 2) {
        std::vector<Rational> row(static_cast<std::size_t>(cols));
        for (int c = 1; c <= cols; ++c) {
            int i = 2 * c;
            row[c - 1] = Rational(binomial(i, j) - binomial(i, k - 2 - j));
        }
        rows.push_back(row);
    }
    return QMatrix::from_rows(rows, static_cast<std::size_t>(cols));
}

struct QkMatrix {
    int k = 0;
    int level = 2;
    QMatrix matrix;
};

/// Column j (1..k/2-2) pairs with Ze(2j+1) g_{k-2j-1}; the kernel coordinate j is the coefficient of x^(k-2-2j).
inline QkMatrix qk_matrix(int k, int level)
{
    detail::require_even_weight(k);
    if (level != 1 && level != 2) throw DomainError("level must be 1 or 2");
    const int cols = k / 2 - 2;
    std::vector<std::vector<Rational>> rows;
    if (level == 2) {
        for (int i = 1; i <= k / 2 - 1; ++i) {
            std::vector<Rational> row(static_cast<std::size_t>(cols));
            for (int j = 1; j <= cols; ++j) row[j - 1] = Rational(binomial(2 * j, k - 2 * i - 1) - binomial(2 * j, 2 * i - 1));
            rows.push_back(row);
        }
    } else {
        for (int i = 1; i <= k - 3; ++i) {
            std::vector<Rational> row(static_cast<std::size_t>(cols));
            long sign = i % 2 == 0 ? 1 : -1;
            for (int j = 1; j <= cols; ++j) {
                Integer v = sign * (binomial(2 * j, i) - binomial(2 * j, k - 2 - i));
                if (k - 2 - i == 2 * j) v += 1;
                row[j - 1] = Rational(v);
            }
            rows.push_back(row);
        }
    }
    return {k, level, QMatrix::from_rows(rows, static_cast<std::size_t>(cols))};
}

/// Row i of the level-2 matrix equals row 2i-1 of the level-1 matrix.
inline bool minor_embedding_check(int k)
{
    if (k < 6) throw DomainError("minor embedding needs k >= 6");
    QMatrix q2 = qk_matrix(k, 2).matrix, q1 = qk_matrix(k, 1).matrix;
    for (std::size_t i = 0; i < q2.rows(); ++i)
        if (q2.row(i) != q1.row(2 * i)) return false;
    return true;
}

inline Poly period_polynomial_from_kernel(int k, int level, const std::vector<Rational>& v)
{
    QMatrix Q = qk_matrix(k, level).matrix;
    if (v.size() != Q.cols()) throw DomainError("kernel vector has the wrong length");
    for (const auto& x : Q.apply(v))
        if (sgn(x) != 0) throw DomainError("vector is not in the right kernel");
    Poly p(k);
    for (std::size_t j = 1; j <= v.size(); ++j) p.at(k - 2 - 2 * static_cast<int>(j)) = v[j - 1];
    return p;
}

inline std::vector<Poly> qk_kernel_polynomials(int k, int level)
{
    std::vector<Poly> out;
    for (const auto& v : qk_matrix(k, level).matrix.kernel(KernelSide::right))
        out.push_back(period_polynomial_from_kernel(k, level, v));
    return out;
}

/// True when both families span the same subspace of polynomials.
inline bool same_span(const std::vector<Poly>& a, const std::vector<Poly>& b)
{
    auto to_rows = [](const std::vector<Poly>& ps) {
        std::vector<std::vector<Rational>> rows;
        for (const auto& p : ps) rows.push_back(p.coeffs());
        return rows;
    };
    std::size_t n = !a.empty() ? a[0].coeffs().size() : (!b.empty() ? b[0].coeffs().size() : 0);
    QMatrix A = QMatrix::from_rows(to_rows(a), n), B = QMatrix::from_rows(to_rows(b), n);
    QMatrix both = A;
    for (const auto& r : to_rows(b)) both.append_row(r);
    std::size_t ra = A.rank();
    return ra == B.rank() && ra == both.rank();
}

/// dim S_k(SL_2(Z)) for even k >= 4.
inline int dim_cusp_level1(int k)
{
    detail::require_even_weight(k);
    return k / 12 - (k % 12 == 2 ? 1 : 0);
}

}  // namespace des2
