#pragma once

// Numeric integration of the Toda flow and trajectory-level checks:
// conservation drift, symmetry transport and isospectrality of Lambda.

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "toda/expr.hpp"
#include "toda/geometry.hpp"
#include "toda/hierarchy.hpp"
#include "toda/lattice.hpp"

namespace toda {

enum class Method { Rk4, Rk45 };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct IntegratorOptions {
    Method method = Method::Rk45;
    double tol = 1e-10;   // rk45 local error tolerance
    double step = 1e-2;   // rk4 fixed step (rounded down so it divides T)
};

struct Trajectory {
    std::vector<PhaseState> samples;
    std::vector<std::vector<double>> derivatives;   // flow value at each sample
    Method method = Method::Rk45;
    double tol = 0.0;
    double step = 0.0;
    long accepted = 0;
    long rejected = 0;

    int n() const { return samples.empty() ? 0 : samples.front().n(); }
};

/// dy/dt = rhs(t, y).
using OdeRhs = std::function<void(double t, const std::vector<double>& y, std::vector<double>& dydt)>;

struct OdeSolution {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    long accepted = 0;
    long rejected = 0;
};

/// Generic integrator behind integrate(). rk45 is the Dormand-Prince 5(4)
/// pair; a rejected step is halved, and a step below 1e-12 T raises
/// StiffnessError. The error of a component is scaled by tol (1 + |y|).
OdeSolution integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double T, const IntegratorOptions& opt);

/// Integrates the Toda flow from x0 over [x0.time, x0.time + T].
Trajectory integrate(const LatticeConfig& cfg, const PhaseState& x0, double T, const IntegratorOptions& opt = {});

struct QuantityDrift {
    std::string label;
    double initial = 0.0;
    double drift = 0.0;   // max_t |Q(t) - Q(0)| / max(1, |Q(0)|)
};

std::vector<QuantityDrift> conservation_report(const Trajectory& traj, const std::vector<std::pair<std::string, Expr>>& quantities);

struct TransportConfig {
    double epsilon = 1e-6;
    double T = 5.0;
    double tolerance = 1e-10;

    TransportConfig() = default;
    TransportConfig(double eps, double horizon, double tol);
};

struct TransportReport {
    double max_mismatch = 0.0;   // max |x'(t) - x(t) - eps eta(x(t), t)|
    double scaled = 0.0;   // max_mismatch / eps^2
    long samples = 0;
};

/// Evolves x0 and x0 + eps eta(x0, t0) together (one joint system, so both
/// see the same steps) and compares their separation with eps eta along the
/// base trajectory.
TransportReport symmetry_transport_test(const LatticeConfig& cfg, const VectorField& eta, const PhaseState& x0,
                                        const TransportConfig& tc);

/// Eigenvalues of a rational matrix at one state.
std::vector<std::complex<double>> eigenvalues_at(const Matrix<RationalExpr>& m, const PhaseState& state);

struct IsospectralReport {
    double drift = 0.0;
    std::vector<std::complex<double>> initial;
    long used = 0;
    long skipped = 0;   // samples where Lambda could not be evaluated
};

/// Max over samples of the deviation of greedily matched eigenvalues from the
/// first evaluable sample. SingularError if no sample can be evaluated.
IsospectralReport isospectral_drift(const Trajectory& traj, const StrongSymmetry& lambda);

/// Header "t,x1,...,x{2n}", one row per sample, 17 significant digits.
void write_csv(std::ostream& os, const Trajectory& traj);

} // namespace toda
