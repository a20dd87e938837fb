#include "toda/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace toda {

std::string to_string(Method m) { return m == Method::Rk4 ? "rk4" : "rk45"; }

Method method_from_string(const std::string& s) {
    if (s == "rk4")
        return Method::Rk4;
    if (s == "rk45")
        return Method::Rk45;
    throw DomainError("unknown integration method '" + s + "' (expected rk4 or rk45)");
}

namespace {

void axpy(std::vector<double>& out, const std::vector<double>& y, double h,
          std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        double s = 0.0;
        for (const auto& [c, k] : terms)
            s += c * (*k)[i];
        out[i] = y[i] + h * s;
    }
}

void check_horizon(double T) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw DomainError("integration horizon must be positive and finite");
}

OdeSolution integrate_rk4(const OdeRhs& rhs, std::vector<double> y, double t0, double T, double step) {
    if (!(step > 0.0))
        throw DomainError("rk4 step must be positive");
    const long steps = std::max(1L, static_cast<long>(std::ceil(T / step - 1e-9)));
    const double h = T / static_cast<double>(steps);
    const std::size_t d = y.size();
    std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);
    OdeSolution sol;
    sol.times.push_back(t0);
    sol.states.push_back(y);
    for (long i = 0; i < steps; ++i) {
        const double t = t0 + static_cast<double>(i) * h;
        rhs(t, y, k1);
        axpy(tmp, y, h / 2, {{1.0, &k1}});
        rhs(t + h / 2, tmp, k2);
        axpy(tmp, y, h / 2, {{1.0, &k2}});
        rhs(t + h / 2, tmp, k3);
        axpy(tmp, y, h, {{1.0, &k3}});
        rhs(t + h, tmp, k4);
        axpy(y, y, h / 6, {{1.0, &k1}, {2.0, &k2}, {2.0, &k3}, {1.0, &k4}});
        sol.times.push_back(i + 1 == steps ? t0 + T : t0 + static_cast<double>(i + 1) * h);
        sol.states.push_back(y);
        ++sol.accepted;
    }
    return sol;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

OdeSolution integrate_rk45(const OdeRhs& rhs, std::vector<double> y, double t0, double T, double tol) {
    if (!(tol > 0.0))
        throw DomainError("tolerance must be positive");
    const std::size_t d = y.size();
    std::vector<double> k1(d), k2(d), k3(d), k4(d), k5(d), k6(d), k7(d), tmp(d), ynew(d);
    OdeSolution sol;
    sol.times.push_back(t0);
    sol.states.push_back(y);
    const double t_end = t0 + T;
    const double h_min = 1e-12 * T;
    double t = t0;
    double h = std::min(T, 1e-2);
    rhs(t, y, k1);
    while (t < t_end) {
        const bool last = t + h >= t_end;
        const double hs = last ? t_end - t : h;
        axpy(tmp, y, hs, {{a21, &k1}});
        rhs(t + c2 * hs, tmp, k2);
        axpy(tmp, y, hs, {{a31, &k1}, {a32, &k2}});
        rhs(t + c3 * hs, tmp, k3);
        axpy(tmp, y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        rhs(t + c4 * hs, tmp, k4);
        axpy(tmp, y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        rhs(t + c5 * hs, tmp, k5);
        axpy(tmp, y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        rhs(t + hs, tmp, k6);
        axpy(ynew, y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        rhs(t + hs, ynew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
            const double r = std::abs(e) / scale;
            if (!std::isfinite(r) || !std::isfinite(ynew[i])) {
                err = std::numeric_limits<double>::infinity();
                break;
            }
            err = std::max(err, r);
        }

        if (err <= 1.0) {
            t = last ? t_end : t + hs;
            y.swap(ynew);
            k1.swap(k7);   // first-same-as-last
            sol.times.push_back(t);
            sol.states.push_back(y);
            ++sol.accepted;
            const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (!last || hs >= h)
                h = hs * grow;
        } else {
            ++sol.rejected;
            h = hs / 2;
            if (h < h_min)
                throw StiffnessError("step size fell below 1e-12 T at t = " + std::to_string(t));
        }
    }
    return sol;
}

} // namespace

OdeSolution integrate_ode(const OdeRhs& rhs, std::vector<double> y0, double t0, double T, const IntegratorOptions& opt) {
    check_horizon(T);
    for (double v : y0)
        if (!std::isfinite(v))
            throw DomainError("initial state must be finite");
    return opt.method == Method::Rk4 ? integrate_rk4(rhs, std::move(y0), t0, T, opt.step)
                                     : integrate_rk45(rhs, std::move(y0), t0, T, opt.tol);
}

Trajectory integrate(const LatticeConfig& cfg, const PhaseState& x0, double T, const IntegratorOptions& opt) {
    if (x0.n() != cfg.n)
        throw DomainError("initial state has " + std::to_string(x0.x.size()) + " coordinates, expected " +
                          std::to_string(2 * cfg.n));
    const int n = cfg.n;
    OdeRhs rhs = [n](double, const std::vector<double>& y, std::vector<double>& dy) { flow_rhs(n, y.data(), dy.data()); };
    OdeSolution sol = integrate_ode(rhs, x0.x, x0.time, T, opt);

    Trajectory traj;
    traj.method = opt.method;
    traj.tol = opt.method == Method::Rk45 ? opt.tol : 0.0;
    traj.step = opt.method == Method::Rk4 ? T / static_cast<double>(sol.accepted) : 0.0;
    traj.accepted = sol.accepted;
    traj.rejected = sol.rejected;
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
        std::vector<double> dx(static_cast<std::size_t>(2 * n));
        flow_rhs(n, sol.states[i].data(), dx.data());
        traj.samples.emplace_back(std::move(sol.states[i]), sol.times[i]);
        traj.derivatives.push_back(std::move(dx));
    }
    return traj;
}

std::vector<QuantityDrift> conservation_report(const Trajectory& traj,
                                               const std::vector<std::pair<std::string, Expr>>& quantities) {
    if (traj.samples.empty())
        throw DomainError("empty trajectory");
    std::vector<QuantityDrift> out;
    for (const auto& [label, q] : quantities) {
        detail::require_same_lattice(q.n(), traj.n());
        QuantityDrift d;
        d.label = label;
        d.initial = q.eval(traj.samples.front());
        double worst = 0.0;
        for (const auto& s : traj.samples)
            worst = std::max(worst, std::abs(q.eval(s) - d.initial));
        d.drift = worst / std::max(1.0, std::abs(d.initial));
        out.push_back(std::move(d));
    }
    return out;
}

TransportConfig::TransportConfig(double eps, double horizon, double tol) : epsilon(eps), T(horizon), tolerance(tol) {
    if (eps == 0.0 || !std::isfinite(eps))
        throw DomainError("transport epsilon must be nonzero");
    if (!(horizon > 0.0))
        throw DomainError("transport horizon must be positive");
    if (!(tol > 0.0))
        throw DomainError("transport tolerance must be positive");
}

TransportReport symmetry_transport_test(const LatticeConfig& cfg, const VectorField& eta, const PhaseState& x0,
                                        const TransportConfig& tc) {
    detail::require_same_lattice(cfg.n, eta.n());
    if (x0.n() != cfg.n)
        throw DomainError("initial state does not match the lattice size");
    const int n = cfg.n;
    const std::size_t d = static_cast<std::size_t>(2 * n);

    const std::vector<double> e0 = eta.eval(x0);
    std::vector<double> y0(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        y0[i] = x0.x[i];
        y0[d + i] = x0.x[i] + tc.epsilon * e0[i];
    }
    OdeRhs rhs = [n, d](double, const std::vector<double>& y, std::vector<double>& dy) {
        flow_rhs(n, y.data(), dy.data());
        flow_rhs(n, y.data() + d, dy.data() + d);
    };
    IntegratorOptions opt;
    opt.method = Method::Rk45;
    opt.tol = tc.tolerance;
    const OdeSolution sol = integrate_ode(rhs, y0, x0.time, tc.T, opt);

    TransportReport rep;
    for (std::size_t s = 0; s < sol.times.size(); ++s) {
        const auto& y = sol.states[s];
        const PhaseState base(std::vector<double>(y.begin(), y.begin() + static_cast<long>(d)), sol.times[s]);
        const std::vector<double> e = eta.eval(base);
        for (std::size_t i = 0; i < d; ++i)
            rep.max_mismatch = std::max(rep.max_mismatch, std::abs((y[d + i] - y[i]) - tc.epsilon * e[i]));
        ++rep.samples;
    }
    rep.scaled = rep.max_mismatch / (tc.epsilon * tc.epsilon);
    return rep;
}

std::vector<std::complex<double>> eigenvalues_at(const Matrix<RationalExpr>& m, const PhaseState& state) {
    Eigen::MatrixXd a(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            a(i, j) = m(i, j).eval(state);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    if (solver.info() != Eigen::Success)
        throw SingularError("eigenvalue iteration did not converge");
    std::vector<std::complex<double>> ev;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        ev.push_back(solver.eigenvalues()[i]);
    return ev;
}

IsospectralReport isospectral_drift(const Trajectory& traj, const StrongSymmetry& lambda) {
    IsospectralReport rep;
    bool have_reference = false;
    for (const auto& s : traj.samples) {
        std::vector<std::complex<double>> ev;
        try {
            ev = eigenvalues_at(lambda.entries, s);
        } catch (const SingularError&) {
            ++rep.skipped;
            continue;
        }
        ++rep.used;
        if (!have_reference) {
            rep.initial = ev;
            have_reference = true;
            continue;
        }
        // Nearest-neighbour pairing in reference order; ties go to the lower index.
        std::vector<bool> taken(ev.size(), false);
        for (const auto& ref : rep.initial) {
            std::size_t best = ev.size();
            double best_dist = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < ev.size(); ++i)
                if (!taken[i] && std::abs(ev[i] - ref) < best_dist) {
                    best = i;
                    best_dist = std::abs(ev[i] - ref);
                }
            taken[best] = true;
            rep.drift = std::max(rep.drift, best_dist);
        }
    }
    if (!have_reference)
        throw SingularError("Lambda could not be evaluated at any sample");
    return rep;
}

void write_csv(std::ostream& os, const Trajectory& traj) {
    const int n = traj.n();
    os << "t";
    for (int a = 1; a <= 2 * n; ++a)
        os << ",x" << a;
    os << '\n';
    const auto old_precision = os.precision(17);
    for (const auto& s : traj.samples) {
        os << s.time;
        for (double v : s.x)
            os << ',' << v;
        os << '\n';
    }
    os.precision(old_precision);
}

} // namespace toda
