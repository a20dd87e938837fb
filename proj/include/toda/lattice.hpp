#pragma once

// The open (non-periodic) Toda chain: first-order flow, energy, and the
// second-order / first-order Lagrangians.

#include <vector>

#include "toda/expr.hpp"
#include "toda/geometry.hpp"

namespace toda {

struct LatticeConfig {
    int n = 2;

    LatticeConfig() = default;
    explicit LatticeConfig(int particles) : n(particles) {
        if (n < 2)
            throw DomainError("lattice needs at least two particles, got " + std::to_string(n));
    }
};

/// Second-order data q, qdot for the same chain.
struct SecondOrderState {
    std::vector<double> q;
    std::vector<double> qdot;
    double time = 0.0;
};

PhaseState to_phase_state(const SecondOrderState& s);

/// f^j = x^(n+j), f^(n+j) = E_(j-1) - E_j with E_0 = E_n = 0.
VectorField flow_field(const LatticeConfig& cfg);

/// H = 1/2 sum (x^(n+j))^2 + sum E_i.
Expr hamiltonian0(const LatticeConfig& cfg);

/// Total momentum sum x^(n+j).
Expr total_momentum(const LatticeConfig& cfg);

/// Numeric flow, same formula as flow_field without the symbolic detour.
void flow_rhs(int n, const double* x, double* dxdt);

/// Per-particle residual qddot^k - E_(k-1) + E_k of the Newton equations.
std::vector<double> second_order_residual(const LatticeConfig& cfg, std::span<const double> q,
                                          std::span<const double> qddot);

/// Second-order Lagrangian in the ring of the same n: slot x^(n+k) stands for qdot^k.
/// First-order Lagrangian in the ring of size 2n: slots x^1..x^2n are the phase
/// coordinates and x^(2n+a) stands for the velocity xdot^a.
struct Lagrangians {
    Expr second_order;
    Expr first_order;
};

Lagrangians lagrangians(const LatticeConfig& cfg);

/// Momentum p_j = dL2/dqdot^j, expressed in the second-order ring.
std::vector<Expr> second_order_momenta(const LatticeConfig& cfg, const Expr& l2);

/// Substitutes xdot = f into the first-order Lagrangian and evaluates.
double first_order_on_shell(const LatticeConfig& cfg, const Expr& l1, const PhaseState& state);

/// Euler-Lagrange expressions dL/dx^a - d/dt dL/dxdot^a of the first-order
/// Lagrangian, with xdot replaced by the flow. Zero vector iff the Lagrangian
/// reproduces the flow.
std::vector<Expr> first_order_euler_lagrange_on_shell(const LatticeConfig& cfg, const Expr& l1);

} // namespace toda
