#pragma once

#include "des2/exact/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace des2 {

/// Dense vector over Q with the vector-space operations used by the generic containers.
class RationalVector {
public:
    RationalVector() = default;
    explicit RationalVector(std::size_t n) : v_(n) {}
    RationalVector(std::vector<Rational> v) : v_(std::move(v)) {}
    RationalVector(std::initializer_list<long> xs)
    {
        for (long x : xs) v_.emplace_back(x);
    }

    std::size_t size() const { return v_.size(); }
    const Rational& operator[](std::size_t i) const { return v_.at(i); }
    Rational& operator[](std::size_t i) { return v_.at(i); }
    const std::vector<Rational>& values() const { return v_; }
    std::vector<Rational>& values() { return v_; }

    RationalVector& operator+=(const RationalVector& o)
    {
        if (!conform(o)) return *this;
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
        return *this;
    }
    RationalVector& operator-=(const RationalVector& o)
    {
        if (!conform(o)) return *this;
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
        return *this;
    }
    RationalVector& operator*=(const Rational& c)
    {
        for (auto& x : v_) x *= c;
        return *this;
    }
    friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
    friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
    friend RationalVector operator-(RationalVector a)
    {
        for (auto& x : a.v_) x = -x;
        return a;
    }
    friend RationalVector operator*(RationalVector a, const Rational& c) { return a *= c; }
    friend RationalVector operator*(const Rational& c, RationalVector a) { return a *= c; }
    friend bool operator==(const RationalVector& a, const RationalVector& b) { return a.v_ == b.v_; }

    bool is_zero() const
    {
        for (const auto& x : v_)
            if (sgn(x) != 0) return false;
        return true;
    }

private:
    // An empty vector acts as a zero of any length. Returns false when o is such a zero.
    bool conform(const RationalVector& o)
    {
        if (o.v_.empty()) return false;
        if (v_.empty()) v_.resize(o.v_.size());
        if (o.v_.size() != v_.size()) throw DomainError("vector length mismatch");
        return true;
    }

    std::vector<Rational> v_;
};

inline bool is_zero(const RationalVector& v) { return v.is_zero(); }

enum class KernelSide { left, right };

class QMatrix;

struct RrefResult {
    std::vector<std::vector<Rational>> reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

/// Certificate for v in the row space of M: coefficients c with c^T M = v.
struct RowSpaceMembership {
    bool member = false;
    std::vector<Rational> coefficients;
};

/// Dense matrix over Q, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols_if_empty = 0)
    {
        std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
        QMatrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw DomainError("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static QMatrix from_ints(std::initializer_list<std::initializer_list<long>> rows)
    {
        std::vector<std::vector<Rational>> r;
        for (const auto& row : rows) {
            std::vector<Rational> v;
            for (long x : row) v.emplace_back(x);
            r.push_back(std::move(v));
        }
        return from_rows(r);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_.at(i * cols_ + j); }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_.at(i * cols_ + j); }

    std::vector<Rational> row(std::size_t i) const
    {
        return std::vector<Rational>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    std::vector<std::vector<Rational>> to_rows() const
    {
        std::vector<std::vector<Rational>> r;
        for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
        return r;
    }

    void append_row(const std::vector<Rational>& r)
    {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw DomainError("row length mismatch");
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    QMatrix transposed() const
    {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Submatrix of the given rows and columns.
    QMatrix select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const
    {
        QMatrix m(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
        return m;
    }

    QMatrix without_column(std::size_t col) const
    {
        std::vector<std::size_t> rs, cs;
        for (std::size_t i = 0; i < rows_; ++i) rs.push_back(i);
        for (std::size_t j = 0; j < cols_; ++j)
            if (j != col) cs.push_back(j);
        return select(rs, cs);
    }

    std::vector<Rational> apply(const std::vector<Rational>& x) const
    {
        if (x.size() != cols_) throw DomainError("dimension mismatch in matrix-vector product");
        std::vector<Rational> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    std::vector<Rational> apply_left(const std::vector<Rational>& c) const
    {
        if (c.size() != rows_) throw DomainError("dimension mismatch in vector-matrix product");
        std::vector<Rational> y(cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[j] += c[i] * (*this)(i, j);
        return y;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    RrefResult rref() const
    {
        RrefResult out;
        out.reduced = to_rows();
        auto& m = out.reduced;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && sgn(m[p][c]) == 0) ++p;
            if (p == rows_) continue;
            std::swap(m[p], m[r]);
            Rational inv = 1 / m[r][c];
            for (auto& x : m[r]) x *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || sgn(m[i][c]) == 0) continue;
                Rational f = m[i][c];
                for (std::size_t j = c; j < cols_; ++j) m[i][j] -= f * m[r][j];
            }
            out.pivot_columns.push_back(c);
            ++r;
        }
        out.rank = r;
        return out;
    }

    std::size_t rank() const { return rref().rank; }

    /// Normalized kernel basis: rref of the raw basis, each vector made primitive integral with
    /// positive leading entry.
    std::vector<std::vector<Rational>> kernel(KernelSide side = KernelSide::right) const
    {
        if (side == KernelSide::left) return transposed().kernel(KernelSide::right);
        RrefResult rr = rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : rr.pivot_columns) is_pivot[c] = true;
        QMatrix raw(0, cols_);
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Rational> v(cols_);
            v[f] = 1;
            for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivot_columns[i]] = -rr.reduced[i][f];
            raw.append_row(v);
        }
        if (raw.rows() == 0) return {};
        RrefResult canon = raw.rref();
        std::vector<std::vector<Rational>> basis(canon.reduced.begin(), canon.reduced.begin() + canon.rank);
        for (auto& v : basis) make_primitive(v);
        return basis;
    }

    /// Decides whether v is a linear combination of the rows; returns a certificate when it is.
    RowSpaceMembership in_row_space(const std::vector<Rational>& v) const
    {
        if (v.size() != cols_) throw DomainError("vector length does not match column count");
        // Solve M^T c = v via rref of the augmented system.
        QMatrix aug(cols_, rows_ + 1);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) aug(j, i) = (*this)(i, j);
        for (std::size_t j = 0; j < cols_; ++j) aug(j, rows_) = v[j];
        RrefResult rr = aug.rref();
        RowSpaceMembership out;
        if (!rr.pivot_columns.empty() && rr.pivot_columns.back() == rows_) return out;
        out.member = true;
        out.coefficients.assign(rows_, Rational(0));
        for (std::size_t i = 0; i < rr.rank; ++i) out.coefficients[rr.pivot_columns[i]] = rr.reduced[i][rows_];
        return out;
    }

    /// Determinant of a square matrix via elimination.
    Rational determinant() const
    {
        if (rows_ != cols_) throw DomainError("determinant of a non-square matrix");
        auto m = to_rows();
        Rational det = 1;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t p = c;
            while (p < rows_ && sgn(m[p][c]) == 0) ++p;
            if (p == rows_) return 0;
            if (p != c) {
                std::swap(m[p], m[c]);
                det = -det;
            }
            det *= m[c][c];
            for (std::size_t i = c + 1; i < rows_; ++i) {
                if (sgn(m[i][c]) == 0) continue;
                Rational f = m[i][c] / m[c][c];
                for (std::size_t j = c; j < cols_; ++j) m[i][j] -= f * m[c][j];
            }
        }
        return det;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

inline RrefResult rref_rank(const QMatrix& m) { return m.rref(); }

inline std::vector<std::vector<Rational>> kernel(const QMatrix& m, KernelSide side)
{
    return m.kernel(side);
}

inline RowSpaceMembership in_row_space(const QMatrix& m, const std::vector<Rational>& v)
{
    return m.in_row_space(v);
}

}  // namespace des2
