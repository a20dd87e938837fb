#pragma once

// Lagrangian one-form hierarchies generated by Lie derivatives along the
// symmetry fields, their Lagrange brackets, recursion (strong symmetry)
// matrices, and the Hamiltonians they carry.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "toda/geometry.hpp"
#include "toda/lattice.hpp"
#include "toda/matrix.hpp"
#include "toda/report.hpp"

namespace toda {

template <class S>
struct HierarchyLevel {
    int k = 0;
    /// Absent only for downward levels built without a one-form.
    std::optional<BasicOneForm<S>> l;
    BasicSigma<S> sigma;
    std::optional<Matrix<RationalExpr>> lambda_op;
    std::optional<Expr> H;
};

using Level = HierarchyLevel<Expr>;
using RationalLevel = HierarchyLevel<RationalExpr>;

/// Recursion operator Lambda_a^b (row a, column b).
struct StrongSymmetry {
    Matrix<RationalExpr> entries;
    int n() const { return entries(0, 0).n(); }
};

/// The gauge function added to the first-order Lagrangian. Self-checked
/// against its defining transport equation; InternalError if that fails.
Expr gauge_lambda(const LatticeConfig& cfg);

/// d lambda/dx^a f^a + d lambda/dt - (-1/2 sum p^2 + sum E_j).
Expr gauge_lambda_residual(const LatticeConfig& cfg, const Expr& lambda);

/// l-hat + grad(lambda), built from the gauge rather than the closed form.
OneForm gauge_one_form(const LatticeConfig& cfg);

/// k = 0: closed-form l^(0), l_0 = -l.f, sigma = curl(l), H = H^(0).
Level base_level(const LatticeConfig& cfg);

/// k+1 level: l' = L_eta l, l_0' = -l'.f, sigma' = curl(l'); H unset.
template <class S>
HierarchyLevel<S> lift(const HierarchyLevel<S>& level, const VectorField& eta);

/// Lambda = sigma_hi (sigma_lo)^-1; checks Lambda.sigma_lo == sigma_hi.
template <class S>
StrongSymmetry strong_symmetry(const BasicSigma<S>& sigma_hi, const BasicSigma<S>& sigma_lo);

/// g_a = d l_a/dt - d l_0/dx^a, the would-be gradient of H.
template <class S>
std::vector<S> hamiltonian_gradient(const HierarchyLevel<S>& level);

enum class RecoverMode { Verify, Integrate };

struct HamiltonianResult {
    Expr H;
    bool verified = false;
    std::vector<RationalExpr> residual;   // dH/dx^a - g_a
    std::string note;
};

/// Verify mode checks grad(candidate) == g exactly. Integrate mode rebuilds H
/// by antidifferentiating g coordinate by coordinate (additive constant zero)
/// and re-verifies. NotHamiltonianError if d sigma/dt != 0 (equivalently
/// curl g != 0), GaugeError if the result would depend on t.
template <class S>
HamiltonianResult hamiltonian_recover(const HierarchyLevel<S>& level, RecoverMode mode,
                                      const std::optional<Expr>& candidate = std::nullopt);

/// Potential of a curl-free polynomial gradient field, zero additive constant.
Expr integrate_gradient(const std::vector<Expr>& g);

struct LambdaRelationReport {
    bool pass = false;
    std::vector<RationalExpr> residual;
};

/// dH_hi/dx^a - Lambda_a^b dH_lo/dx^b == 0.
LambdaRelationReport verify_lambda_relation(const Matrix<RationalExpr>& lambda, const Expr& h_lo, const Expr& h_hi);

/// The printed n = 2 one-form of the k = -1 level (rational entries).
RationalOneForm printed_downward_one_form(const LatticeConfig& cfg);

struct DownwardLevel {
    RationalLevel level;   // sigma' = Lambda^-1 sigma, H from -sigma'.f
    std::vector<RationalExpr> motion_residual;   // sigma'.f + grad H
    std::optional<bool> curl_matches_sigma;   // curl(l) == sigma', when l is given
    std::optional<bool> one_form_gradient_matches;   // g(l) == grad H, when l is given
};

DownwardLevel downward_level(const StrongSymmetry& lambda, const SigmaMatrix& sigma,
                             std::optional<RationalOneForm> one_form = std::nullopt);

struct DownwardChain {
    Level prime1;   // L_eta3 l^(2)
    Level prime0;   // L_eta3 l'^(1)
    std::vector<CheckEntry> checks;
};

/// Needs upward levels 0, 1, 2 with Hamiltonians set.
DownwardChain downward_chain(const LatticeConfig& cfg, const Level& up0, const Level& up1, const Level& up2);

struct InverseSymmetryReport {
    bool pass = false;
    Matrix<Expr> residual;   // L_eta' L_eta1 sigma - sigma
    bool reduced_applicable = false;
    bool reduced_pass = false;
};

InverseSymmetryReport inverse_symmetry_check(const VectorField& eta_prime, const VectorField& eta1,
                                             const SigmaMatrix& sigma0);

struct Eta5Chain {
    Level level1;
    Level level2;
    std::vector<CheckEntry> checks;
};

Eta5Chain eta5_chain(const LatticeConfig& cfg);

/// J = -(sigma)^-1.
template <class S>
Matrix<RationalExpr> poisson_matrix(const BasicSigma<S>& sigma) {
    return Rational(-1) * inverse(sigma.matrix());
}

/// Nonzero cyclic sums J^ad d_d J^bc + J^bd d_d J^ca + J^cd d_d J^ab, a<b<c.
std::vector<RationalExpr> poisson_jacobi_residual(const Matrix<RationalExpr>& J);

/// Largest |cyclic sum| of the Jacobi identity over the given states.
double poisson_jacobi_max_residual(const Matrix<RationalExpr>& J, std::span<const PhaseState> states);

/// L_f Lambda + d Lambda/dt with the mixed-tensor rule.
Matrix<RationalExpr> lambda_master_residual(const StrongSymmetry& lambda, const VectorField& f);

struct HierarchyBuild {
    std::vector<Level> levels;   // k = 0..K
    std::vector<std::string> notes;   // why a Lambda or H is missing
};

/// Levels 0..K lifted along eta_(kind). Lambda is attached when the lower
/// bracket matrix is invertible, H when integrate-mode recovery succeeds.
HierarchyBuild build_hierarchy(const LatticeConfig& cfg, int kind, int levels);

/// Applies L_eta2 m times to H^(0).
Expr eta2_hamiltonian(const LatticeConfig& cfg, int m);

/// Level dump: {"n", "k", "l", "l0", "sigma", "lambda", "H"} as text expressions.
template <class S>
nlohmann::json level_to_json(const HierarchyLevel<S>& level);

/// Compares a level against a golden dump; only fields present in the golden
/// are checked, each by exact (cross-multiplied) equality.
template <class S>
std::vector<CheckEntry> compare_with_golden(const HierarchyLevel<S>& level, const nlohmann::json& golden,
                                            const std::string& label);

} // namespace toda
