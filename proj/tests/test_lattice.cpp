#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "toda/dynamics.hpp"
#include "toda/lattice.hpp"

using namespace toda;
using toda::test::P;

TEST_CASE("lattice size must be at least two") {
    CHECK_THROWS_AS(LatticeConfig(1), DomainError);
    CHECK_NOTHROW(LatticeConfig(2));
}

TEST_CASE("flow field") {
    const VectorField f = flow_field(LatticeConfig(2));
    CHECK(f[0] == P(2, "x3"));
    CHECK(f[1] == P(2, "x4"));
    CHECK(f[2] == P(2, "-E1"));
    CHECK(f[3] == P(2, "E1"));
    const std::vector<double> at_rest = f.eval(PhaseState({0, 0, 0, 0}, 0));
    CHECK(at_rest == std::vector<double>{0, 0, -1, 1});

    const VectorField f3 = flow_field(LatticeConfig(3));
    CHECK(f3[4] == P(3, "E1 - E2"));
    for (int n = 2; n <= 6; ++n) {
        const VectorField fn = flow_field(LatticeConfig(n));
        for (int a = 0; a < 2 * n; ++a)
            CHECK_FALSE(fn[a].depends_on(Symbol::time()));
    }
}

TEST_CASE("numeric flow agrees with the symbolic flow") {
    std::mt19937_64 rng(3);
    for (int n = 2; n <= 5; ++n) {
        const VectorField f = flow_field(LatticeConfig(n));
        const PhaseState s = toda::test::random_state(rng, n);
        std::vector<double> rhs(static_cast<std::size_t>(2 * n));
        flow_rhs(n, s.x.data(), rhs.data());
        const std::vector<double> sym = f.eval(s);
        for (int a = 0; a < 2 * n; ++a)
            CHECK(rhs[static_cast<std::size_t>(a)] == doctest::Approx(sym[static_cast<std::size_t>(a)]).epsilon(1e-14));
    }
}

TEST_CASE("energy") {
    CHECK(hamiltonian0(LatticeConfig(2)) == P(2, "1/2*x3^2 + 1/2*x4^2 + E1"));
    CHECK(hamiltonian0(LatticeConfig(2)).eval(PhaseState({0, 0, 0, 0}, 0)) == doctest::Approx(1.0));
    // 1/2 (1 + 1 + 1) + e^0 + e^0
    CHECK(hamiltonian0(LatticeConfig(3)).eval(PhaseState({0, 0, 0, 1, 1, 1}, 0)) == doctest::Approx(3.5));
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i)
        CHECK(hamiltonian0(LatticeConfig(3)).eval(toda::test::random_state(rng, 3, 3.0)) > 0.0);
}

TEST_CASE("energy and total momentum are first integrals of the flow") {
    for (int n = 2; n <= 6; ++n) {
        const LatticeConfig cfg(n);
        const VectorField f = flow_field(cfg);
        CHECK(lie_derivative(f, hamiltonian0(cfg)).is_zero());
        CHECK(lie_derivative(f, total_momentum(cfg)).is_zero());
        CHECK_FALSE(lie_derivative(f, Expr::x(n, 1)).is_zero());
    }
}

TEST_CASE("second-order residual") {
    const LatticeConfig cfg(2);
    const double c = 0.4;
    const std::vector<double> q = {c, c}, zero = {0, 0};
    const std::vector<double> r = second_order_residual(cfg, q, zero);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(-1.0));

    std::mt19937_64 rng(4);
    const PhaseState s = toda::test::random_state(rng, 3);
    std::vector<double> f(6);
    flow_rhs(3, s.x.data(), f.data());
    const std::vector<double> qs(s.x.begin(), s.x.begin() + 3), qdd(f.begin() + 3, f.end());
    for (double v : second_order_residual(LatticeConfig(3), qs, qdd))
        CHECK(v == 0.0);
    CHECK_THROWS_AS(second_order_residual(cfg, std::vector<double>{0, 0, 0}, zero), DomainError);
}

TEST_CASE("second-order residual along an integrated trajectory") {
    const LatticeConfig cfg(2);
    const Trajectory traj = integrate(cfg, PhaseState({0.1, -0.3, 0.5, -0.2}, 0), 10.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        const auto& d = traj.derivatives[i];
        const std::vector<double> q(s.x.begin(), s.x.begin() + 2), qdd(d.begin() + 2, d.end());
        for (double v : second_order_residual(cfg, q, qdd))
            worst = std::max(worst, std::abs(v));
        // the recorded derivative of the positions is the momentum
        CHECK(d[0] == doctest::Approx(s.x[2]));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("Lagrangians") {
    const LatticeConfig cfg(2);
    const Lagrangians L = lagrangians(cfg);
    CHECK(L.second_order == P(2, "1/2*x3^2 + 1/2*x4^2 - E1"));
    CHECK(L.second_order.eval(PhaseState({0, 0, 0, 0}, 0)) == doctest::Approx(-1.0));
    CHECK(first_order_on_shell(cfg, L.first_order, PhaseState({0, 0, 0, 0}, 0)) == doctest::Approx(-1.0));

    const std::vector<Expr> p = second_order_momenta(cfg, L.second_order);
    CHECK(p[0] == Expr::x(2, 3));
    CHECK(p[1] == Expr::x(2, 4));

    for (int n = 2; n <= 4; ++n) {
        const LatticeConfig c(n);
        const Lagrangians Ln = lagrangians(c);
        const VectorField f = flow_field(c);
        // Newton's equations: dL2/dq^k is the acceleration f^(n+k).
        for (int k = 1; k <= n; ++k)
            CHECK(Ln.second_order.diff(Symbol::x(k)) == f[n + k - 1]);
        for (const Expr& el : first_order_euler_lagrange_on_shell(c, Ln.first_order))
            CHECK(el.is_zero());
    }
    CHECK_THROWS_AS(first_order_euler_lagrange_on_shell(cfg, L.second_order), DomainError);
}

TEST_CASE("second-order state converts to phase space") {
    const PhaseState s = to_phase_state(SecondOrderState{{1, 2}, {3, 4}, 0.5});
    CHECK(s.x == std::vector<double>{1, 2, 3, 4});
    CHECK(s.time == 0.5);
    CHECK_THROWS_AS(to_phase_state(SecondOrderState{{1}, {3, 4}, 0}), DomainError);
}
