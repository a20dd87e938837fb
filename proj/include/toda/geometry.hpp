#pragma once

// Vector fields, one-forms and two-forms on the 2n-dimensional phase space,
// with the Lie derivative and the exterior derivative (curl). Coefficients may
// depend on t; t is a parameter here, never a coordinate.

#include <string>
#include <vector>

#include "toda/expr.hpp"
#include "toda/matrix.hpp"
#include "toda/rational_expr.hpp"

namespace toda {

namespace detail {

inline void require_same_lattice(int a, int b) {
    if (a != b)
        throw DomainError("objects belong to lattices of different size (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
}

inline Symbol coord(int a) { return Symbol::x(a + 1); }   // 0-based component index

} // namespace detail

class VectorField {
public:
    VectorField() = default;
    VectorField(int n, std::vector<Expr> components);
    static VectorField zero(int n) { return VectorField(n, std::vector<Expr>(static_cast<std::size_t>(2 * n), Expr(n))); }

    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    const Expr& operator[](int a) const { return c_[static_cast<std::size_t>(a)]; }
    Expr& operator[](int a) { return c_[static_cast<std::size_t>(a)]; }
    const std::vector<Expr>& components() const { return c_; }
    bool is_zero() const;

    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const Rational& c, const VectorField& v);
    friend VectorField operator*(const Expr& c, const VectorField& v);
    friend bool operator==(const VectorField& a, const VectorField& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

    VectorField diff(Symbol s) const;
    std::vector<double> eval(const PhaseState& state) const;

private:
    int n_ = 0;
    std::vector<Expr> c_;
};

/// Lagrangian one-form l_a together with its companion scalar l_0.
template <class S>
struct BasicOneForm {
    int n = 0;
    std::vector<S> components;
    S scalar_part;

    BasicOneForm() = default;
    BasicOneForm(int lattice, std::vector<S> comps, S scalar)
        : n(lattice), components(std::move(comps)), scalar_part(std::move(scalar)) {
        if (components.size() != static_cast<std::size_t>(2 * n))
            throw DomainError("one-form needs 2n components");
    }
    BasicOneForm(int lattice, std::vector<S> comps) : BasicOneForm(lattice, std::move(comps), S(lattice)) {}

    const S& operator[](int a) const { return components[static_cast<std::size_t>(a)]; }
    int dim() const { return 2 * n; }
    bool is_zero() const {
        for (const auto& c : components)
            if (!c.is_zero())
                return false;
        return true;
    }
};

using OneForm = BasicOneForm<Expr>;
using RationalOneForm = BasicOneForm<RationalExpr>;

/// Antisymmetric 2n x 2n matrix of Lagrange brackets.
template <class S>
class BasicSigma {
public:
    BasicSigma() = default;
    explicit BasicSigma(Matrix<S> m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() % 2 != 0)
            throw DomainError("Lagrange bracket matrix must be 2n x 2n");
        for (int a = 0; a < m_.rows(); ++a)
            for (int b = a; b < m_.cols(); ++b)
                if (!equals(m_(a, b), -m_(b, a)))
                    throw DomainError("Lagrange bracket matrix is not antisymmetric at (" + std::to_string(a + 1) +
                                      "," + std::to_string(b + 1) + ")");
    }

    int n() const { return m_.rows() / 2; }
    int dim() const { return m_.rows(); }
    const S& operator()(int a, int b) const { return m_(a, b); }
    const Matrix<S>& matrix() const { return m_; }

private:
    Matrix<S> m_;
};

using SigmaMatrix = BasicSigma<Expr>;
using RationalSigma = BasicSigma<RationalExpr>;

// ---------------------------------------------------------------------------
// Lie derivatives. All sums run over the 2n phase coordinates only.

/// L_X S = X^a d_a S.
template <class S>
S lie_derivative(const VectorField& X, const S& scalar) {
    detail::require_same_lattice(X.n(), scalar.n());
    S r(X.n());
    for (int a = 0; a < X.dim(); ++a)
        if (!X[a].is_zero())
            r = r + X[a] * scalar.diff(detail::coord(a));
    return r;
}

/// (L_X Y)^a = X^b d_b Y^a - Y^b d_b X^a.
VectorField lie_derivative(const VectorField& X, const VectorField& Y);

/// (L_X w)_a = X^b d_b w_a + w_b d_a X^b. The scalar part is not transported
/// (it depends on the flow, see complete_scalar_part).
template <class S>
BasicOneForm<S> lie_derivative(const VectorField& X, const BasicOneForm<S>& w) {
    detail::require_same_lattice(X.n(), w.n);
    const int d = X.dim();
    std::vector<S> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        S acc(X.n());
        for (int b = 0; b < d; ++b) {
            if (!X[b].is_zero() && !w[a].is_zero())
                acc = acc + X[b] * w[a].diff(detail::coord(b));
            if (!w[b].is_zero()) {
                Expr dx = X[b].diff(detail::coord(a));
                if (!dx.is_zero())
                    acc = acc + w[b] * S(dx);
            }
        }
        out.push_back(std::move(acc));
    }
    return BasicOneForm<S>(X.n(), std::move(out));
}

/// (L_X s)_ab = X^c d_c s_ab + s_cb d_a X^c + s_ac d_b X^c.
template <class S>
BasicSigma<S> lie_derivative(const VectorField& X, const BasicSigma<S>& s) {
    detail::require_same_lattice(X.n(), s.n());
    const int d = X.dim();
    std::vector<std::vector<Expr>> jac(static_cast<std::size_t>(d));   // jac[a][c] = d_a X^c
    for (int a = 0; a < d; ++a)
        for (int c = 0; c < d; ++c)
            jac[static_cast<std::size_t>(a)].push_back(X[c].diff(detail::coord(a)));
    Matrix<S> r(d, d, S(X.n()));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            S acc(X.n());
            for (int c = 0; c < d; ++c) {
                if (!X[c].is_zero() && !s(a, b).is_zero())
                    acc = acc + X[c] * s(a, b).diff(detail::coord(c));
                const Expr& dax = jac[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
                if (!dax.is_zero() && !s(c, b).is_zero())
                    acc = acc + s(c, b) * S(dax);
                const Expr& dbx = jac[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
                if (!dbx.is_zero() && !s(a, c).is_zero())
                    acc = acc + s(a, c) * S(dbx);
            }
            r(a, b) = std::move(acc);
        }
    return BasicSigma<S>(std::move(r));
}

/// Mixed (1,1) tensor with the first index covariant: T_a^b, stored as row a,
/// column b. (L_X T)_a^b = X^c d_c T_a^b + T_c^b d_a X^c - T_a^c d_c X^b.
template <class S>
Matrix<S> lie_derivative_mixed(const VectorField& X, const Matrix<S>& T) {
    const int d = X.dim();
    if (T.rows() != d || T.cols() != d)
        throw DomainError("mixed tensor must be 2n x 2n");
    Matrix<S> r(d, d, S(X.n()));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            S acc(X.n());
            for (int c = 0; c < d; ++c) {
                if (!X[c].is_zero())
                    acc = acc + X[c] * T(a, b).diff(detail::coord(c));
                const Expr dax = X[c].diff(detail::coord(a));
                if (!dax.is_zero())
                    acc = acc + T(c, b) * S(dax);
                const Expr dcx = X[b].diff(detail::coord(c));
                if (!dcx.is_zero())
                    acc = acc - T(a, c) * S(dcx);
            }
            r(a, b) = std::move(acc);
        }
    return r;
}

/// sigma_ab = d_b l_a - d_a l_b.
template <class S>
BasicSigma<S> curl(const BasicOneForm<S>& l) {
    const int d = l.dim();
    Matrix<S> m(d, d, S(l.n));
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            S v = l[a].diff(detail::coord(b)) - l[b].diff(detail::coord(a));
            m(b, a) = -v;
            m(a, b) = std::move(v);
        }
    return BasicSigma<S>(std::move(m));
}

/// l_0 = -l_a f^a.
template <class S>
BasicOneForm<S> complete_scalar_part(BasicOneForm<S> l, const VectorField& f) {
    detail::require_same_lattice(l.n, f.n());
    S acc(l.n);
    for (int a = 0; a < l.dim(); ++a)
        if (!f[a].is_zero())
            acc = acc - l[a] * S(f[a]);
    l.scalar_part = std::move(acc);
    return l;
}

/// Component-wise gradient of a scalar.
template <class S>
std::vector<S> gradient(const S& s) {
    std::vector<S> g;
    for (int a = 0; a < 2 * s.n(); ++a)
        g.push_back(s.diff(detail::coord(a)));
    return g;
}

/// Residual of d(sigma) = 0: the cyclic sum s_ab,c + s_bc,a + s_ca,b for every a<b<c.
template <class S>
std::vector<S> closedness_residual(const BasicSigma<S>& s) {
    std::vector<S> out;
    const int d = s.dim();
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            for (int c = b + 1; c < d; ++c) {
                S v = s(a, b).diff(detail::coord(c)) + s(b, c).diff(detail::coord(a)) + s(c, a).diff(detail::coord(b));
                if (!v.is_zero())
                    out.push_back(std::move(v));
            }
    return out;
}

/// sigma . f (contracting the second index).
template <class S>
std::vector<S> contract(const BasicSigma<S>& s, const VectorField& f) {
    std::vector<S> out;
    for (int a = 0; a < s.dim(); ++a) {
        S acc(s.n());
        for (int b = 0; b < s.dim(); ++b)
            if (!f[b].is_zero() && !s(a, b).is_zero())
                acc = acc + s(a, b) * S(f[b]);
        out.push_back(std::move(acc));
    }
    return out;
}

template <class S>
BasicOneForm<S> scale(const Rational& c, const BasicOneForm<S>& l) {
    BasicOneForm<S> r = l;
    for (auto& v : r.components)
        v = c * v;
    r.scalar_part = c * r.scalar_part;
    return r;
}

template <class S>
BasicSigma<S> scale(const Rational& c, const BasicSigma<S>& s) {
    return BasicSigma<S>(c * s.matrix());
}

template <class S>
bool equals(const BasicOneForm<S>& a, const BasicOneForm<S>& b) {
    if (a.n != b.n)
        return false;
    for (int i = 0; i < a.dim(); ++i)
        if (!equals(a[i], b[i]))
            return false;
    return true;
}

template <class S>
bool equals(const BasicSigma<S>& a, const BasicSigma<S>& b) {
    return equals(a.matrix(), b.matrix());
}

} // namespace toda
