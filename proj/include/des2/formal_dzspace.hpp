#pragma once

#include "des2/exact/bipoly.hpp"
#include "des2/exact/matrix.hpp"
#include "des2/exact/rational.hpp"
#include "des2/kinds.hpp"
#include "des2/numeric_mzv.hpp"
#include "des2/poly_action.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace des2 {

/// Coordinates of the formal double zeta space of weight k. Basis order: Z^eo_{r,k-r} (r = 1..k-1),
/// then Z^oe, then Z^oo in the same r order, then Z^o_k last.
class DZBasis {
public:
    explicit DZBasis(int k) : k_(k)
    {
        if (k < 3) throw DomainError("formal double zeta space needs k >= 3");
    }

    int weight() const { return k_; }
    std::size_t dim() const { return static_cast<std::size_t>(3 * (k_ - 1) + 1); }

    std::size_t index(PairKind kind, int r) const
    {
        if (r < 1 || r >= k_) throw DomainError("index r outside 1..k-1");
        std::size_t block;
        switch (kind) {
        case PairKind::eo: block = 0; break;
        case PairKind::oe: block = 1; break;
        case PairKind::oo: block = 2; break;
        default: throw DomainError("kind ee has no formal symbol");
        }
        return block * static_cast<std::size_t>(k_ - 1) + static_cast<std::size_t>(r - 1);
    }
    std::size_t zo_index() const { return dim() - 1; }

    std::string label(std::size_t i) const
    {
        if (i == zo_index()) return "Zo_" + std::to_string(k_);
        static const char* names[] = {"eo", "oe", "oo"};
        int r = static_cast<int>(i % static_cast<std::size_t>(k_ - 1)) + 1;
        return std::string("Z") + names[i / static_cast<std::size_t>(k_ - 1)] + "_" + std::to_string(r) + "," +
               std::to_string(k_ - r);
    }

    RationalVector unit(PairKind kind, int r) const
    {
        RationalVector v(dim());
        v[index(kind, r)] = 1;
        return v;
    }
    RationalVector zo() const
    {
        RationalVector v(dim());
        v[zo_index()] = 1;
        return v;
    }

    /// P^oe_{r,s} = Z^oe_{r,s} + Z^eo_{s,r}
    RationalVector P_oe(int r) const { return unit(PairKind::oe, r) + unit(PairKind::eo, k_ - r); }
    /// P^oo_{r,s} = Z^oo_{r,s} + Z^oo_{s,r} + Z^o_k
    RationalVector P_oo(int r) const { return unit(PairKind::oo, r) + unit(PairKind::oo, k_ - r) + zo(); }

private:
    int k_;
};

struct RelationSet {
    int k = 0;
    QMatrix rows;
    std::vector<std::string> labels;
};

/// Rows are LHS - RHS of (ds1) for r = 1..k-1, followed by (ds2) for r = 1..k-1.
inline RelationSet relation_matrix(int k, bool permissive = false)
{
    if (k < 3) throw DomainError("relation matrix needs k >= 3");
    if (k % 2 != 0 && !permissive) throw DomainError("relation matrix is restricted to even weight (pass permissive for odd k)");
    DZBasis B(k);
    RelationSet out;
    out.k = k;
    std::vector<std::vector<Rational>> rows;
    for (int r = 1; r < k; ++r) {
        int s = k - r;
        RationalVector v = B.unit(PairKind::oe, r) + B.unit(PairKind::eo, s);
        for (int i = 1; i < k; ++i) {
            v -= B.unit(PairKind::oe, i) * Rational(binomial(i - 1, r - 1));
            v -= B.unit(PairKind::oo, i) * Rational(binomial(i - 1, s - 1));
        }
        rows.push_back(v.values());
        out.labels.push_back("ds1(" + std::to_string(r) + "," + std::to_string(s) + ")");
    }
    for (int r = 1; r < k; ++r) {
        int s = k - r;
        RationalVector v = B.unit(PairKind::oo, r) + B.unit(PairKind::oo, s) + B.zo();
        for (int i = 1; i < k; ++i) v -= B.unit(PairKind::eo, i) * Rational(binomial(i - 1, r - 1) + binomial(i - 1, s - 1));
        rows.push_back(v.values());
        out.labels.push_back("ds2(" + std::to_string(r) + "," + std::to_string(s) + ")");
    }
    out.rows = QMatrix::from_rows(rows, B.dim());
    return out;
}

/// A target vector together with a row-space certificate c (c^T rows = target).
struct MembershipCertificate {
    std::vector<Rational> target;
    bool member = false;
    std::vector<Rational> coefficients;
    bool verified = false;  // recomputed c^T rows == target
};

inline MembershipCertificate certify(const QMatrix& rows, const std::vector<Rational>& target)
{
    MembershipCertificate c;
    c.target = target;
    auto m = rows.in_row_space(target);
    c.member = m.member;
    if (m.member) {
        c.coefficients = m.coefficients;
        c.verified = rows.apply_left(m.coefficients) == target;
    }
    return c;
}

/// Sum formula: sum_{r even} Z^oo_{r,k-r} - Z^o_k / 4 lies in the relation span.
inline MembershipCertificate check_sum_formula(int k)
{
    if (k < 4 || k % 2 != 0) throw DomainError("sum formula needs even k >= 4");
    DZBasis B(k);
    RationalVector t = B.zo() * Rational(-1, 4);
    for (int r = 2; r <= k - 2; r += 2) t += B.unit(PairKind::oo, r);
    return certify(relation_matrix(k).rows, t.values());
}

/// Generating function sum_{r+s=k} Z^{kind}_{r,s} X^(r-1) Y^(s-1) with DZ-vector coefficients.
inline BiPoly<RationalVector> dz_generating(PairKind kind, int k)
{
    DZBasis B(k);
    BiPoly<RationalVector> P(k - 2, RationalVector(B.dim()));
    for (int r = 1; r < k; ++r) P.at(r - 1, k - r - 1) = B.unit(kind, r);
    return P;
}

struct GenfunIdentities {
    BiPoly<RationalVector> first;   // LHS - RHS of the (ds1) generating-function identity
    BiPoly<RationalVector> second;  // LHS - RHS of the (ds2) generating-function identity
};

inline GenfunIdentities genfun_identities(int k)
{
    DZBasis B(k);
    const LinearForm X{1, 0}, Y{0, 1}, XpY{1, 1};
    auto Zeo = dz_generating(PairKind::eo, k), Zoe = dz_generating(PairKind::oe, k), Zoo = dz_generating(PairKind::oo, k);
    GenfunIdentities g;
    g.first = Zoe + Zeo.swapped() - Zoe.substitute(XpY, Y) - Zoo.substitute(XpY, X);
    BiPoly<RationalVector> dd(k - 2, RationalVector(B.dim()));  // Z^o (X^(k-1) - Y^(k-1)) / (X - Y)
    for (int a = 0; a <= k - 2; ++a) dd.at(a, k - 2 - a) = B.zo();
    g.second = Zoo + Zoo.swapped() + dd - Zeo.substitute(XpY, Y) - Zeo.substitute(XpY, X);
    return g;
}

/// One row per monomial of the two generating-function identities.
inline QMatrix genfun_relation_matrix(int k)
{
    auto g = genfun_identities(k);
    std::vector<std::vector<Rational>> rows;
    for (const auto* P : {&g.first, &g.second})
        for (int i = 0; i <= k - 2; ++i) rows.push_back(P->coeff(i, k - 2 - i).values());
    return QMatrix::from_rows(rows, DZBasis(k).dim());
}

struct SubstitutionRelations {
    std::vector<Rational> first_at_1_0;   // (ds1) identity at X = 1, Y = 0
    std::vector<Rational> second_at_1_m1; // (ds2) identity at X = 1, Y = -1
    MembershipCertificate first_cert;
    MembershipCertificate second_cert;
};

inline SubstitutionRelations genfun_substitution_relations(int k)
{
    if (k < 4 || k % 2 != 0) throw DomainError("substitution relations need even k >= 4");
    auto g = genfun_identities(k);
    SubstitutionRelations out;
    out.first_at_1_0 = g.first.evaluate(1, 0).values();
    out.second_at_1_m1 = g.second.evaluate(1, -1).values();
    QMatrix R = relation_matrix(k).rows;
    out.first_cert = certify(R, out.first_at_1_0);
    out.second_cert = certify(R, out.second_at_1_m1);
    return out;
}

/// Specializes every relation row to numeric (regularized) double zeta values at T.
inline NumericReport relation_numeric_check(int k, int digits = kDefaultDigits, bool permissive = false)
{
    RelationSet R = relation_matrix(k, permissive);
    DZBasis B(k);
    MzvEvaluator ev(digits);
    NumericReport rep;
    rep.name = "relations_numeric(k=" + std::to_string(k) + ")";
    for (int t = 0; t <= 1; ++t) {
        BigReal T = t;
        std::vector<BigReal> val(B.dim());
        for (PairKind kind : kLevel2Kinds)
            for (int r = 1; r < k; ++r) val[B.index(kind, r)] = ev.regularized(kind, r, k - r).at(T);
        val[B.zo_index()] = ev.single(SingleKind::odd, k).at(T);
        for (std::size_t i = 0; i < R.rows.rows(); ++i) {
            BigReal acc = 0;
            for (std::size_t j = 0; j < B.dim(); ++j)
                if (sgn(R.rows(i, j)) != 0) acc += to_real(R.rows(i, j)) * val[j];
            rep.checks.push_back(make_check(R.labels[i] + "@T=" + std::to_string(t), acc, BigReal(0), ev.tolerance()));
        }
    }
    return rep;
}

struct Lemma2Result {
    int k = 0;
    int r = 0;
    Poly f;
    std::vector<Poly> slots;             // three inhomogeneous slots of the simplified expression
    std::vector<Poly> slots_unreduced;   // same slots computed with g = f|T eps / 2 before simplification
    std::vector<Rational> a, b, c;       // index i - 1 for i = 1..k-1 (j = k - i)
    bool cond_i = false;                 // a_{i,j} = b_{j,i}
    bool cond_ii = false;                // c_{i,j} = c_{j,i}
    bool cond_iii = false;               // a = b = c = 0 for odd i, j
    bool simplification_holds = false;   // slots == slots_unreduced
    std::vector<Rational> relation;      // sum a Z^eo + b Z^oe + c Z^oo as a DZ vector (Z^o coordinate 0)
    MembershipCertificate mod_zo;        // membership with the Z^o column dropped
};

inline Lemma2Result lemma2_coefficients(int k, int r)
{
    if (k < 4 || k % 2 != 0) throw DomainError("triangular reduction needs even k >= 4");
    if (r < 0 || r > k - 4 || r % 2 != 0) throw DomainError("triangular reduction needs even r with 0 <= r <= k-4");
    using P = ProjMatrix;
    const P T = P::T(), S = P::S(), e = P::epsilon(), d = P::delta(), I = P::identity();
    Lemma2Result out;
    out.k = k;
    out.r = r;
    out.f = Poly::x_power_times_shift(k, r);
    const Poly& f = out.f;
    if (!(slash(f, T * S * T * e) == f)) throw DomainError("f is not fixed by TST eps");

    auto sl = [&](const Poly& p, const GroupRingElement& g) { return slash_ring(p, g, k); };
    auto one_minus_e = GroupRingElement(I) - GroupRingElement(e);
    out.slots = {sl(f, GroupRingElement(d) * one_minus_e), sl(f, one_minus_e), Rational(-1) * sl(f, GroupRingElement(T) * one_minus_e)};

    Poly g = Rational(1, 2) * slash(f, T * e);
    Poly s1 = slash(f, d) - sl(g, GroupRingElement(T * S * T) + GroupRingElement(T * S * e));
    Poly s2 = sl(f, GroupRingElement(I) - GroupRingElement(T * S * T));
    Poly s3 = Rational(-1) * (slash(f, T * S * e) - sl(g, GroupRingElement(I) + GroupRingElement(d)));
    out.slots_unreduced = {s1, s2, s3};
    out.simplification_holds = out.slots == out.slots_unreduced;

    auto coeffs = [&](const Poly& p) {
        std::vector<Rational> v(static_cast<std::size_t>(k - 1));
        for (int i = 1; i < k; ++i) v[i - 1] = p.coeff(i - 1) / Rational(binomial(k - 2, i - 1));
        return v;
    };
    out.a = coeffs(out.slots[0]);
    out.b = coeffs(out.slots[1]);
    out.c = coeffs(out.slots[2]);
    out.cond_i = out.cond_ii = out.cond_iii = true;
    for (int i = 1; i < k; ++i) {
        int j = k - i;
        if (out.a[i - 1] != out.b[j - 1]) out.cond_i = false;
        if (out.c[i - 1] != out.c[j - 1]) out.cond_ii = false;
        if (i % 2 == 1 && (sgn(out.a[i - 1]) || sgn(out.b[i - 1]) || sgn(out.c[i - 1]))) out.cond_iii = false;
    }

    DZBasis B(k);
    RationalVector rel(B.dim());
    for (int i = 1; i < k; ++i) {
        rel[B.index(PairKind::eo, i)] = out.a[i - 1];
        rel[B.index(PairKind::oe, i)] = out.b[i - 1];
        rel[B.index(PairKind::oo, i)] = out.c[i - 1];
    }
    out.relation = rel.values();
    std::vector<Rational> reduced(out.relation.begin(), out.relation.end() - 1);
    out.mod_zo = certify(relation_matrix(k).rows.without_column(B.zo_index()), reduced);
    return out;
}

/// P^oe_{r,k-r} = sum_{i <= j even} coeff * P^oo_{i,j} + zo * Z^o_k, certified by row-space membership.
struct PoeExpression {
    int r = 0;
    std::map<int, Rational> poo;  // key i for P^oo_{i,k-i}, i <= k - i
    Rational zo;
    MembershipCertificate certificate;  // for P^oe - sum coeff P^oo - zo Z^o, expanded in the Z basis
};

inline std::map<int, PoeExpression> poe_reduction(int k)
{
    if (k < 4 || k % 2 != 0) throw DomainError("P^oe reduction needs even k >= 4");
    DZBasis B(k);
    // Expression of P^oe_i as a combination of P^oo_{j,k-j}, j <= k/2, mod Z^o.
    std::map<int, std::map<int, Rational>> expr;
    for (int r = k - 4; r >= 0; r -= 2) {
        Lemma2Result L = lemma2_coefficients(k, r);
        if (!(L.cond_i && L.cond_ii && L.cond_iii)) throw ArithmeticError("triangular reduction conditions failed");
        // sum_i b_{i,k-i} P^oe_{i,k-i} + sum_{i<j} c_{ij} P^oo_{ij} + sum_i c_{ii}/2 P^oo_{ii} = 0 mod Z^o
        std::map<int, Rational> rhs;  // move P^oo terms to the right
        for (int i = 2; i <= k - 2; i += 2) {
            int j = k - i;
            if (i > j) continue;
            Rational c = L.c[i - 1];
            if (i == j) c /= 2;
            if (sgn(c) != 0) rhs[i] -= c;
        }
        const int lead = r + 2;
        Rational diag = L.b[lead - 1];
        if (sgn(diag) == 0) throw ArithmeticError("singular triangular step");
        for (int i = lead + 2; i <= k - 2; i += 2) {
            const Rational& bi = L.b[i - 1];
            if (sgn(bi) == 0) continue;
            for (const auto& [j, v] : expr.at(i)) rhs[j] -= bi * v;
        }
        for (int i = 1; i < k; ++i)
            if (i % 2 == 1 && sgn(L.b[i - 1]) != 0) throw ArithmeticError("odd index in triangular reduction relation");
        for (auto& [j, v] : rhs) v /= diag;
        expr[lead] = rhs;
    }

    QMatrix R = relation_matrix(k).rows;
    QMatrix Raug = R;
    Raug.append_row(B.zo().values());
    std::map<int, PoeExpression> out;
    for (auto& [i, combo] : expr) {
        PoeExpression pe;
        pe.r = i;
        RationalVector w = B.P_oe(i);
        for (const auto& [j, v] : combo) {
            if (sgn(v) == 0) continue;
            pe.poo[j] = v;
            w -= B.P_oo(j) * v;
        }
        auto m = Raug.in_row_space(w.values());
        if (!m.member) throw ArithmeticError("P^oe reduction is not a consequence of the relations");
        pe.zo = m.coefficients.back();
        w -= B.zo() * pe.zo;
        pe.certificate = certify(R, w.values());
        out.emplace(i, std::move(pe));
    }
    return out;
}

}  // namespace des2
