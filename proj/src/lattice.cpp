#include "toda/lattice.hpp"

#include <cmath>

namespace toda {

namespace {

// Copies an expression of the n-ring into the 2n-ring used for first-order
// Lagrangians: coordinates keep their index, t and E_j map to the new slots.
Expr embed_doubled(const Expr& e) {
    const int n = e.n();
    const int big = 2 * n;
    Expr out(big);
    for (const auto& [m, c] : e.terms()) {
        Monomial bm(big);
        for (int a = 0; a < 2 * n; ++a)
            bm.set_exponent(a, m.exponent(a));
        bm.set_exponent(2 * big, m.exponent(2 * n));
        for (int j = 1; j < n; ++j)
            bm.set_exponent(2 * big + j, m.exponent(2 * n + j));
        out += Expr::monomial(big, c, bm);
    }
    return out;
}

Symbol velocity(int n, int a) { return Symbol::x(2 * n + a); }   // a is 1-based

} // namespace

PhaseState to_phase_state(const SecondOrderState& s) {
    if (s.q.size() != s.qdot.size() || s.q.empty())
        throw DomainError("q and qdot must have the same nonzero length");
    std::vector<double> x = s.q;
    x.insert(x.end(), s.qdot.begin(), s.qdot.end());
    return PhaseState(std::move(x), s.time);
}

VectorField flow_field(const LatticeConfig& cfg) {
    const int n = cfg.n;
    std::vector<Expr> f;
    for (int j = 1; j <= n; ++j)
        f.push_back(Expr::x(n, n + j));
    for (int j = 1; j <= n; ++j)
        f.push_back(Expr::atom(n, j - 1) - Expr::atom(n, j));
    return VectorField(n, std::move(f));
}

Expr hamiltonian0(const LatticeConfig& cfg) {
    const int n = cfg.n;
    Expr h(n);
    for (int j = 1; j <= n; ++j)
        h += Rational(1, 2) * Expr::x(n, n + j).pow(2);
    for (int i = 1; i < n; ++i)
        h += Expr::atom(n, i);
    return h;
}

Expr total_momentum(const LatticeConfig& cfg) {
    Expr p(cfg.n);
    for (int j = 1; j <= cfg.n; ++j)
        p += Expr::x(cfg.n, cfg.n + j);
    return p;
}

void flow_rhs(int n, const double* x, double* dxdt) {
    for (int j = 0; j < n; ++j)
        dxdt[j] = x[n + j];
    double left = 0.0;   // E_(j-1), zero at the boundary
    for (int j = 0; j < n; ++j) {
        const double right = (j + 1 < n) ? std::exp(x[j] - x[j + 1]) : 0.0;
        dxdt[n + j] = left - right;
        left = right;
    }
}

std::vector<double> second_order_residual(const LatticeConfig& cfg, std::span<const double> q,
                                          std::span<const double> qddot) {
    const auto n = static_cast<std::size_t>(cfg.n);
    if (q.size() != n || qddot.size() != n)
        throw DomainError("second-order data must have n entries");
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double left = k > 0 ? std::exp(q[k - 1] - q[k]) : 0.0;
        const double right = k + 1 < n ? std::exp(q[k] - q[k + 1]) : 0.0;
        r[k] = qddot[k] - left + right;
    }
    return r;
}

Lagrangians lagrangians(const LatticeConfig& cfg) {
    const int n = cfg.n;
    Expr l2(n);
    for (int k = 1; k <= n; ++k)
        l2 += Rational(1, 2) * Expr::x(n, n + k).pow(2);
    for (int k = 1; k < n; ++k)
        l2 -= Expr::atom(n, k);

    const int big = 2 * n;
    Expr l1 = -embed_doubled(hamiltonian0(cfg));
    for (int i = 1; i <= n; ++i)
        l1 += Expr::x(big, n + i) * Expr::x(big, 2 * n + i);
    return {std::move(l2), std::move(l1)};
}

std::vector<Expr> second_order_momenta(const LatticeConfig& cfg, const Expr& l2) {
    std::vector<Expr> p;
    for (int j = 1; j <= cfg.n; ++j)
        p.push_back(l2.diff(Symbol::x(cfg.n + j)));
    return p;
}

double first_order_on_shell(const LatticeConfig& cfg, const Expr& l1, const PhaseState& state) {
    const int n = cfg.n;
    if (l1.n() != 2 * n || state.n() != n)
        throw DomainError("first-order Lagrangian and state disagree on n");
    std::vector<double> f(static_cast<std::size_t>(2 * n));
    flow_rhs(n, state.x.data(), f.data());
    std::vector<double> ext = state.x;
    ext.insert(ext.end(), f.begin(), f.end());
    return l1.eval(PhaseState(std::move(ext), state.time));
}

std::vector<Expr> first_order_euler_lagrange_on_shell(const LatticeConfig& cfg, const Expr& l1) {
    const int n = cfg.n;
    const int big = 2 * n;
    if (l1.n() != big)
        throw DomainError("first-order Lagrangian must live in the doubled ring");
    const VectorField f = flow_field(cfg);
    std::vector<Expr> out;
    for (int a = 1; a <= 2 * n; ++a) {
        const Expr p = l1.diff(velocity(n, a));
        Expr dpdt = p.diff(Symbol::time());
        for (int b = 1; b <= 2 * n; ++b)
            dpdt += p.diff(Symbol::x(b)) * Expr::x(big, 2 * n + b);
        Expr el = l1.diff(Symbol::x(a)) - dpdt;
        for (int b = 1; b <= 2 * n; ++b)
            el = el.substitute(velocity(n, b), embed_doubled(f[b - 1]));
        out.push_back(std::move(el));
    }
    return out;
}

} // namespace toda
