#include "toda/geometry.hpp"

namespace toda {

VectorField::VectorField(int n, std::vector<Expr> components) : n_(n), c_(std::move(components)) {
    if (c_.size() != static_cast<std::size_t>(2 * n))
        throw DomainError("vector field needs 2n components");
    for (const auto& c : c_)
        detail::require_same_lattice(n, c.n());
}

bool VectorField::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero())
            return false;
    return true;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    detail::require_same_lattice(a.n_, b.n_);
    VectorField r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] += b.c_[i];
    return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    detail::require_same_lattice(a.n_, b.n_);
    VectorField r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] -= b.c_[i];
    return r;
}

VectorField operator*(const Rational& c, const VectorField& v) {
    VectorField r = v;
    for (auto& e : r.c_)
        e *= c;
    return r;
}

VectorField operator*(const Expr& c, const VectorField& v) {
    VectorField r = v;
    for (auto& e : r.c_)
        e = c * e;
    return r;
}

VectorField VectorField::diff(Symbol s) const {
    VectorField r = *this;
    for (auto& e : r.c_)
        e = e.diff(s);
    return r;
}

std::vector<double> VectorField::eval(const PhaseState& state) const {
    std::vector<double> out;
    out.reserve(c_.size());
    for (const auto& e : c_)
        out.push_back(e.eval(state));
    return out;
}

VectorField lie_derivative(const VectorField& X, const VectorField& Y) {
    detail::require_same_lattice(X.n(), Y.n());
    const int d = X.dim();
    std::vector<Expr> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        Expr acc(X.n());
        for (int b = 0; b < d; ++b) {
            if (!X[b].is_zero())
                acc += X[b] * Y[a].diff(detail::coord(b));
            if (!Y[b].is_zero())
                acc -= Y[b] * X[a].diff(detail::coord(b));
        }
        out.push_back(std::move(acc));
    }
    return VectorField(X.n(), std::move(out));
}

} // namespace toda
