#pragma once

// The five symmetry vector fields of the Toda flow, the Master equation, and
// the Lie algebra they span.

#include <string>
#include <vector>

#include "toda/geometry.hpp"
#include "toda/lattice.hpp"
#include "toda/report.hpp"

namespace toda {

constexpr int kSymmetryCount = 5;

/// eta_(kind) for kind in 1..5, generated from the closed n-particle formulas.
VectorField symmetry_field(int kind, const LatticeConfig& cfg);

/// d eta/dt + (d eta/dx) f - (d f/dx) eta. Zero iff eta is a symmetry of f.
VectorField master_residual(const VectorField& eta, const VectorField& f);

/// [A, B] = L_A B.
VectorField lie_bracket(const VectorField& A, const VectorField& B);

/// eta^(n+j) - d eta^j/dt along the flow, j = 1..n (n components).
std::vector<Expr> prolongation_residual(const VectorField& eta, const VectorField& f);

/// Master-equation sweep over kinds 1..5 and lattice sizes n_lo..n_hi.
std::vector<CheckEntry> verify_master_equations(int n_lo, int n_hi);

/// Readings of the free index j in the printed [eta1, eta5] relation.
enum class Eta15Reading { FixedJForAllJ, JEqualsAModN, ExistsJPerComponent, AveragedOverJ };
std::string to_string(Eta15Reading r);

struct Eta15Outcome {
    Eta15Reading reading;
    bool pass = false;
    std::vector<std::string> residual;
};

std::vector<Eta15Outcome> eta15_readings(const LatticeConfig& cfg);

/// Every ordered pair [eta_m, eta_k] compared with the printed table (zero for
/// pairs the table omits). The [eta1, eta5] row and its mirror are reported as
/// one entry each, passing when some reading holds; the note lists all readings.
std::vector<CheckEntry> commutator_table(const LatticeConfig& cfg);

} // namespace toda
