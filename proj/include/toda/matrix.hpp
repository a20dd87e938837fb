#pragma once

// Dense square/rectangular matrices over the Expr ring or its fraction field.
// Inversion goes through the adjugate and the determinant, so no pivoting on
// entries that may be symbolically zero is ever needed.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "toda/errors.hpp"
#include "toda/expr.hpp"
#include "toda/rational_expr.hpp"

namespace toda {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, const T& fill)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

    static Matrix identity(int n_lattice, int size) {
        Matrix m(size, size, T(n_lattice));
        for (int i = 0; i < size; ++i)
            m(i, i) = T(Expr::constant(n_lattice, 1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    template <class F>
    auto map(F&& f) const {
        using U = decltype(f(data_.front()));
        Matrix<U> r(rows_, cols_, f(data_.front()));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

inline RationalExpr to_rational(const Expr& e) { return RationalExpr(e); }
inline RationalExpr to_rational(const RationalExpr& e) { return e; }

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw DomainError("matrix shapes do not compose");
    Matrix<T> r(a.rows(), b.cols(), T(a(0, 0).n()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            T s(a(0, 0).n());
            for (int k = 0; k < a.cols(); ++k)
                if (!a(i, k).is_zero() && !b(k, j).is_zero())
                    s = s + a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

template <class T>
Matrix<T> operator*(const Rational& c, const Matrix<T>& a) {
    return a.map([&](const T& v) { return T(c * v); });
}

template <class T>
Matrix<RationalExpr> to_rational(const Matrix<T>& m) {
    return m.map([](const T& v) { return to_rational(v); });
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
    Matrix<T> r(a.cols(), a.rows(), a(0, 0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(j, i) = a(i, j);
    return r;
}

template <class T>
bool equals(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!equals(a(i, j), b(i, j)))
                return false;
    return true;
}

template <class T>
bool is_zero(const Matrix<T>& a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero())
                return false;
    return true;
}

/// Determinant of the submatrix keeping the listed rows and columns.
/// Laplace expansion memoized over column subsets: O(m 2^m) ring products.
template <class T>
T minor_determinant(const Matrix<T>& a, const std::vector<int>& rows, const std::vector<int>& cols) {
    const int m = static_cast<int>(rows.size());
    if (m != static_cast<int>(cols.size()))
        throw DomainError("minor must be square");
    const int n_lattice = a(0, 0).n();
    if (m == 0)
        return T(Expr::constant(n_lattice, 1));
    if (m > 20)
        throw DomainError("matrix too large for exact determinant");
    const std::uint32_t full = (1u << m) - 1u;
    std::vector<std::optional<T>> table(static_cast<std::size_t>(full) + 1);
    table[0] = T(Expr::constant(n_lattice, 1));
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int r = std::popcount(mask) - 1;
        T acc(n_lattice);
        int k = 0;
        for (int c = 0; c < m; ++c) {
            if (!(mask & (1u << c)))
                continue;
            const T& entry = a(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
            const auto& sub = table[mask & ~(1u << c)];
            if (!entry.is_zero() && sub && !sub->is_zero()) {
                T term = entry * *sub;
                acc = ((r + k) % 2 == 0) ? acc + term : acc - term;
            }
            ++k;
        }
        table[mask] = std::move(acc);
    }
    return *table[full];
}

template <class T>
T determinant(const Matrix<T>& a) {
    if (a.rows() != a.cols())
        throw DomainError("determinant of a non-square matrix");
    std::vector<int> idx(static_cast<std::size_t>(a.rows()));
    for (int i = 0; i < a.rows(); ++i)
        idx[static_cast<std::size_t>(i)] = i;
    return minor_determinant(a, idx, idx);
}

template <class T>
Matrix<T> adjugate(const Matrix<T>& a) {
    const int m = a.rows();
    if (m != a.cols())
        throw DomainError("adjugate of a non-square matrix");
    Matrix<T> adj(m, m, T(a(0, 0).n()));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::vector<int> rows, cols;
            for (int r = 0; r < m; ++r)
                if (r != i)
                    rows.push_back(r);
            for (int c = 0; c < m; ++c)
                if (c != j)
                    cols.push_back(c);
            T cof = minor_determinant(a, rows, cols);
            adj(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

/// Exact inverse over the fraction field; SingularError on a zero determinant.
template <class T>
Matrix<RationalExpr> inverse(const Matrix<T>& a) {
    const RationalExpr det = to_rational(determinant(a));
    if (det.is_zero())
        throw SingularError("matrix is symbolically singular");
    return to_rational(adjugate(a)).map([&](const RationalExpr& v) { return v / det; });
}

} // namespace toda
