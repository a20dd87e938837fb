#include "toda/hierarchy.hpp"

#include <algorithm>
#include <cmath>

#include "toda/serialize.hpp"
#include "toda/symmetry.hpp"

namespace toda {

namespace {

template <class S>
Matrix<S> subtract(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("matrix shapes differ");
    Matrix<S> r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = a(i, j) - b(i, j);
    return r;
}

template <class S>
std::vector<S> subtract(const std::vector<S>& a, const std::vector<S>& b) {
    std::vector<S> r;
    for (std::size_t i = 0; i < a.size(); ++i)
        r.push_back(a[i] - b[i]);
    return r;
}

Expr as_polynomial(const Expr& e) { return e; }
Expr as_polynomial(const RationalExpr& e) { return e.as_polynomial(); }

bool is_polynomial(const Expr&) { return true; }
bool is_polynomial(const RationalExpr& e) { return e.is_polynomial(); }

template <class S>
void require_time_independent(const BasicSigma<S>& s) {
    for (int a = 0; a < s.dim(); ++a)
        for (int b = a + 1; b < s.dim(); ++b)
            if (!s(a, b).diff(Symbol::time()).is_zero())
                throw NotHamiltonianError("Lagrange brackets depend on t at (" + std::to_string(a + 1) + "," +
                                          std::to_string(b + 1) + ")");
}

template <class S>
void require_curl_free(const std::vector<S>& g) {
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a + 1; b < g.size(); ++b) {
            const S c = g[a].diff(detail::coord(static_cast<int>(b))) - g[b].diff(detail::coord(static_cast<int>(a)));
            if (!c.is_zero())
                throw NotHamiltonianError("gradient field has nonzero curl at (" + std::to_string(a + 1) + "," +
                                          std::to_string(b + 1) + "): " + c.to_string());
        }
}

std::vector<RationalExpr> gradient_residual(const Expr& H, const std::vector<RationalExpr>& g) {
    std::vector<RationalExpr> r;
    for (std::size_t a = 0; a < g.size(); ++a)
        r.push_back(RationalExpr(H.diff(detail::coord(static_cast<int>(a)))) - g[a]);
    return r;
}

template <class S>
std::vector<RationalExpr> to_rational(const std::vector<S>& v) {
    std::vector<RationalExpr> r;
    for (const auto& e : v)
        r.push_back(toda::to_rational(e));
    return r;
}

std::string expr_text(const Expr& e) { return e.to_string(); }
std::string expr_text(const RationalExpr& e) { return e.to_string(); }

CheckEntry hamiltonian_check(const std::string& relation, int n, const Expr& got, const Expr& expected) {
    return make_check(relation, n, std::vector<Expr>{got - expected});
}

} // namespace

// ---------------------------------------------------------------------------

Expr gauge_lambda_residual(const LatticeConfig& cfg, const Expr& lambda) {
    const int n = cfg.n;
    const VectorField f = flow_field(cfg);
    Expr r = lambda.diff(Symbol::time());
    for (int a = 0; a < 2 * n; ++a)
        r += lambda.diff(detail::coord(a)) * f[a];
    Expr target(n);
    for (int j = 1; j <= n; ++j)
        target -= Rational(1, 2) * Expr::x(n, n + j).pow(2);
    for (int j = 1; j < n; ++j)
        target += Expr::atom(n, j);
    return r - target;
}

Expr gauge_lambda(const LatticeConfig& cfg) {
    const int n = cfg.n;
    const Expr t = Expr::time(n);
    Expr lambda(n);
    for (int j = 1; j <= n; ++j) {
        const Expr p = Expr::x(n, n + j);
        lambda -= Rational(1, 2) * t * p.pow(2);
        lambda -= t * Expr::atom(n, j);
        lambda += Rational(2 * j - 1) * p;
    }
    const Expr residual = gauge_lambda_residual(cfg, lambda);
    if (!residual.is_zero())
        throw InternalError("gauge function fails its transport equation: " + residual.to_string());
    return lambda;
}

OneForm gauge_one_form(const LatticeConfig& cfg) {
    const int n = cfg.n;
    const Expr lambda = gauge_lambda(cfg);
    std::vector<Expr> c;
    for (int a = 0; a < 2 * n; ++a) {
        Expr hat = a < n ? Expr::x(n, n + a + 1) : Expr(n);
        c.push_back(hat + lambda.diff(detail::coord(a)));
    }
    return complete_scalar_part(OneForm(n, std::move(c)), flow_field(cfg));
}

Level base_level(const LatticeConfig& cfg) {
    const int n = cfg.n;
    const Expr t = Expr::time(n);
    std::vector<Expr> c;
    for (int j = 1; j <= n; ++j)
        c.push_back(Expr::x(n, n + j) + t * (Expr::atom(n, j - 1) - Expr::atom(n, j)));
    for (int j = 1; j <= n; ++j)
        c.push_back(-t * Expr::x(n, n + j) + Expr::constant(n, 2 * j - 1));
    OneForm l = complete_scalar_part(OneForm(n, std::move(c)), flow_field(cfg));
    if (!equals(l, gauge_one_form(cfg)))
        throw InternalError("closed-form base one-form disagrees with l-hat + grad(lambda)");
    Level level;
    level.k = 0;
    level.sigma = curl(l);
    level.l = std::move(l);
    level.H = hamiltonian0(cfg);
    return level;
}

template <class S>
HierarchyLevel<S> lift(const HierarchyLevel<S>& level, const VectorField& eta) {
    if (!level.l)
        throw DomainError("cannot lift a level that has no one-form");
    const LatticeConfig cfg(eta.n());
    BasicOneForm<S> l = complete_scalar_part(lie_derivative(eta, *level.l), flow_field(cfg));
    HierarchyLevel<S> out;
    out.k = level.k + 1;
    out.sigma = curl(l);
    out.l = std::move(l);
    return out;
}

template <class S>
StrongSymmetry strong_symmetry(const BasicSigma<S>& sigma_hi, const BasicSigma<S>& sigma_lo) {
    detail::require_same_lattice(sigma_hi.n(), sigma_lo.n());
    const Matrix<RationalExpr> hi = to_rational(sigma_hi.matrix());
    const Matrix<RationalExpr> lambda = hi * inverse(sigma_lo.matrix());
    if (!equals(lambda * to_rational(sigma_lo.matrix()), hi))
        throw InternalError("Lambda sigma_lo does not reproduce sigma_hi");
    return StrongSymmetry{lambda};
}

template <class S>
std::vector<S> hamiltonian_gradient(const HierarchyLevel<S>& level) {
    if (!level.l)
        throw DomainError("level has no one-form");
    const auto& l = *level.l;
    std::vector<S> g;
    for (int a = 0; a < l.dim(); ++a)
        g.push_back(l[a].diff(Symbol::time()) - l.scalar_part.diff(detail::coord(a)));
    return g;
}

Expr integrate_gradient(const std::vector<Expr>& g) {
    if (g.empty())
        throw DomainError("empty gradient field");
    const int n = g.front().n();
    if (g.size() != static_cast<std::size_t>(2 * n))
        throw DomainError("gradient field needs 2n components");
    Expr H(n);
    // After step a, dH/dx^b == g_b for every b <= a; curl-freeness makes the
    // remainder independent of the coordinates already handled.
    for (int a = 0; a < 2 * n; ++a) {
        const Expr r = g[static_cast<std::size_t>(a)] - H.diff(detail::coord(a));
        if (!r.is_zero())
            H += r.antiderivative(detail::coord(a));
    }
    return H;
}

template <class S>
HamiltonianResult hamiltonian_recover(const HierarchyLevel<S>& level, RecoverMode mode,
                                      const std::optional<Expr>& candidate) {
    require_time_independent(level.sigma);
    const std::vector<S> g = hamiltonian_gradient(level);
    require_curl_free(g);
    const std::vector<RationalExpr> gr = to_rational(g);

    HamiltonianResult out;
    if (mode == RecoverMode::Verify) {
        if (!candidate)
            throw DomainError("verify mode needs a candidate Hamiltonian");
        out.H = *candidate;
        out.note = "checked against the supplied closed form";
    } else {
        std::vector<Expr> gp;
        for (const auto& c : g) {
            if (!is_polynomial(c))
                throw DomainError("integrate mode needs a polynomial gradient field");
            gp.push_back(as_polynomial(c));
        }
        out.H = integrate_gradient(gp);
        if (out.H.depends_on(Symbol::time()))
            throw GaugeError("recovered Hamiltonian depends on t: " + out.H.to_string());
        if (candidate) {
            out.H += Expr::constant(out.H.n(), candidate->constant_term());
            out.note = "integrated; additive constant matched to the supplied form";
        } else {
            out.note = "integrated; additive constant set to zero";
        }
    }
    out.residual = gradient_residual(out.H, gr);
    out.verified = std::all_of(out.residual.begin(), out.residual.end(), [](const RationalExpr& r) { return r.is_zero(); });
    return out;
}

LambdaRelationReport verify_lambda_relation(const Matrix<RationalExpr>& lambda, const Expr& h_lo, const Expr& h_hi) {
    detail::require_same_lattice(h_lo.n(), h_hi.n());
    const int d = 2 * h_lo.n();
    if (lambda.rows() != d || lambda.cols() != d)
        throw DomainError("Lambda must be 2n x 2n");
    const std::vector<Expr> glo = gradient(h_lo);
    const std::vector<Expr> ghi = gradient(h_hi);
    LambdaRelationReport rep;
    for (int a = 0; a < d; ++a) {
        RationalExpr acc(ghi[static_cast<std::size_t>(a)]);
        for (int b = 0; b < d; ++b)
            if (!lambda(a, b).is_zero() && !glo[static_cast<std::size_t>(b)].is_zero())
                acc = acc - lambda(a, b) * RationalExpr(glo[static_cast<std::size_t>(b)]);
        rep.residual.push_back(std::move(acc));
    }
    rep.pass = std::all_of(rep.residual.begin(), rep.residual.end(), [](const RationalExpr& r) { return r.is_zero(); });
    return rep;
}

RationalOneForm printed_downward_one_form(const LatticeConfig& cfg) {
    if (cfg.n != 2)
        throw DomainError("the printed downward one-form exists only for n = 2");
    const int n = 2;
    const Expr x3 = Expr::x(n, 3), x4 = Expr::x(n, 4);
    const Expr D = x3 * x4 - Expr::atom(n, 1);
    std::vector<RationalExpr> c{RationalExpr(x3 * x4, D), RationalExpr(x3 * x4, D), RationalExpr(x4, D),
                                RationalExpr(-x3, D)};
    return complete_scalar_part(RationalOneForm(n, std::move(c)), flow_field(cfg));
}

DownwardLevel downward_level(const StrongSymmetry& lambda, const SigmaMatrix& sigma,
                             std::optional<RationalOneForm> one_form) {
    const int n = sigma.n();
    detail::require_same_lattice(lambda.n(), n);
    const LatticeConfig cfg(n);
    const VectorField f = flow_field(cfg);

    DownwardLevel out;
    out.level.k = -1;
    out.level.lambda_op = lambda.entries;
    out.level.sigma = RationalSigma(inverse(lambda.entries) * to_rational(sigma.matrix()));

    const std::vector<RationalExpr> sf = contract(out.level.sigma, f);
    if (std::all_of(sf.begin(), sf.end(), [](const RationalExpr& e) { return e.is_polynomial(); })) {
        std::vector<Expr> g;
        for (const auto& e : sf)
            g.push_back(-e.as_polynomial());
        require_curl_free(g);
        const Expr H = integrate_gradient(g);
        if (H.depends_on(Symbol::time()))
            throw GaugeError("downward Hamiltonian depends on t: " + H.to_string());
        out.level.H = H;
        for (std::size_t a = 0; a < sf.size(); ++a)
            out.motion_residual.push_back(sf[a] + RationalExpr(H.diff(detail::coord(static_cast<int>(a)))));
    } else {
        throw NotHamiltonianError("sigma'.f is not a polynomial gradient");
    }

    if (one_form) {
        detail::require_same_lattice(one_form->n, n);
        RationalOneForm l = complete_scalar_part(std::move(*one_form), f);
        out.curl_matches_sigma = equals(curl(l), out.level.sigma);
        RationalLevel probe;
        probe.l = l;
        const auto g = hamiltonian_gradient(probe);
        const auto gh = gradient(RationalExpr(*out.level.H));
        bool match = true;
        for (std::size_t a = 0; a < g.size(); ++a)
            match = match && equals(g[a], gh[a]);
        out.one_form_gradient_matches = match;
        out.level.l = std::move(l);
    }
    return out;
}

DownwardChain downward_chain(const LatticeConfig& cfg, const Level& up0, const Level& up1, const Level& up2) {
    const int n = cfg.n;
    if (!up0.H || !up1.H)
        throw DomainError("downward chain needs H on levels 0 and 1");
    const VectorField eta3 = symmetry_field(3, cfg);

    DownwardChain out;
    out.prime1 = lift(up2, eta3);
    out.prime1.k = 1;
    out.prime0 = lift(out.prime1, eta3);
    out.prime0.k = 0;

    out.checks.push_back(make_check("sigma'(1) = 3 sigma(1)", n,
                                    subtract(out.prime1.sigma.matrix(), Rational(3) * up1.sigma.matrix())));
    out.prime1.H = hamiltonian_recover(out.prime1, RecoverMode::Integrate).H;
    out.checks.push_back(hamiltonian_check("H'(1) = 3 H(1)", n, *out.prime1.H, Rational(3) * *up1.H));

    out.checks.push_back(make_check("sigma'(0) = 3 sigma(0)", n,
                                    subtract(out.prime0.sigma.matrix(), Rational(3) * up0.sigma.matrix())));
    out.prime0.H = hamiltonian_recover(out.prime0, RecoverMode::Integrate).H;
    out.checks.push_back(hamiltonian_check("H'(0) = 3 H(0)", n, *out.prime0.H, Rational(3) * *up0.H));
    return out;
}

InverseSymmetryReport inverse_symmetry_check(const VectorField& eta_prime, const VectorField& eta1,
                                             const SigmaMatrix& sigma0) {
    detail::require_same_lattice(eta_prime.n(), eta1.n());
    detail::require_same_lattice(eta1.n(), sigma0.n());
    const int d = sigma0.dim();
    InverseSymmetryReport rep;
    rep.residual = subtract(lie_derivative(eta_prime, lie_derivative(eta1, sigma0)).matrix(), sigma0.matrix());
    rep.pass = is_zero(rep.residual);

    rep.reduced_applicable = true;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                if (sigma0(a, b).depends_on(detail::coord(c)))
                    rep.reduced_applicable = false;
    if (!rep.reduced_applicable)
        return rep;

    // u^d = d_c eta1^d eta'^c; jac1[a][d] = d_a eta1^d; jacp[a][c] = d_a eta'^c.
    const int n = eta1.n();
    std::vector<Expr> u(static_cast<std::size_t>(d), Expr(n));
    std::vector<std::vector<Expr>> jac1(static_cast<std::size_t>(d)), jacp(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
        for (int c = 0; c < d; ++c) {
            jac1[static_cast<std::size_t>(a)].push_back(eta1[c].diff(detail::coord(a)));
            jacp[static_cast<std::size_t>(a)].push_back(eta_prime[c].diff(detail::coord(a)));
        }
    for (int dd = 0; dd < d; ++dd)
        for (int c = 0; c < d; ++c)
            u[static_cast<std::size_t>(dd)] += jac1[static_cast<std::size_t>(c)][static_cast<std::size_t>(dd)] * eta_prime[c];

    bool ok = true;
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b < d && ok; ++b) {
            Expr rhs(n);
            for (int dd = 0; dd < d; ++dd) {
                rhs += sigma0(dd, b) * u[static_cast<std::size_t>(dd)].diff(detail::coord(a));
                rhs += sigma0(a, dd) * u[static_cast<std::size_t>(dd)].diff(detail::coord(b));
                for (int c = 0; c < d; ++c) {
                    if (sigma0(c, dd).is_zero())
                        continue;
                    rhs += sigma0(c, dd) * (jac1[static_cast<std::size_t>(b)][static_cast<std::size_t>(dd)] *
                                                jacp[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] -
                                            jac1[static_cast<std::size_t>(a)][static_cast<std::size_t>(dd)] *
                                                jacp[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]);
                }
            }
            ok = (rhs - sigma0(a, b)).is_zero();
        }
    rep.reduced_pass = ok;
    return rep;
}

Eta5Chain eta5_chain(const LatticeConfig& cfg) {
    const int n = cfg.n;
    const VectorField eta5 = symmetry_field(5, cfg);
    const VectorField f = flow_field(cfg);
    const Expr t = Expr::time(n);
    const Expr P = total_momentum(cfg);

    Eta5Chain out;
    out.level1 = lift(base_level(cfg), eta5);
    out.level2 = lift(out.level1, eta5);

    auto closed_form = [&](const Rational& scale, const Rational& constant) {
        std::vector<Expr> c(static_cast<std::size_t>(n), scale * P);
        c.resize(static_cast<std::size_t>(2 * n), -scale * t * P + Expr::constant(n, constant));
        return c;
    };
    const Rational nn(n);
    out.checks.push_back(make_check("eta5 l(1) = (2P, -2tP + n^2)", n,
                                    subtract(out.level1.l->components, closed_form(2, nn * nn))));
    out.checks.push_back(make_check("eta5 l(2) = (4nP, -4ntP + n^3)", n,
                                    subtract(out.level2.l->components, closed_form(4 * nn, nn * nn * nn))));

    out.level1.H = hamiltonian_recover(out.level1, RecoverMode::Integrate).H;
    out.level2.H = hamiltonian_recover(out.level2, RecoverMode::Integrate).H;
    out.checks.push_back(hamiltonian_check("eta5 H(1) = P^2", n, *out.level1.H, P.pow(2)));
    out.checks.push_back(hamiltonian_check("eta5 H(2) = 2n P^2", n, *out.level2.H, Rational(2 * n) * P.pow(2)));

    for (const Level* lv : {&out.level1, &out.level2}) {
        std::vector<Expr> r = contract(lv->sigma, f);
        const auto gh = gradient(*lv->H);
        for (std::size_t a = 0; a < r.size(); ++a)
            r[a] += gh[a];
        out.checks.push_back(make_check("eta5 sigma(" + std::to_string(lv->k) + ").f + grad H = 0", n, r));
    }
    return out;
}

std::vector<RationalExpr> poisson_jacobi_residual(const Matrix<RationalExpr>& J) {
    const int d = J.rows();
    // dJ[e][a*d+b] = d_e J^ab
    std::vector<std::vector<RationalExpr>> dJ(static_cast<std::size_t>(d));
    for (int e = 0; e < d; ++e)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                dJ[static_cast<std::size_t>(e)].push_back(J(a, b).diff(detail::coord(e)));
    auto dj = [&](int e, int a, int b) -> const RationalExpr& {
        return dJ[static_cast<std::size_t>(e)][static_cast<std::size_t>(a * d + b)];
    };
    std::vector<RationalExpr> out;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            for (int c = b + 1; c < d; ++c) {
                RationalExpr s(J(0, 0).n());
                for (int e = 0; e < d; ++e) {
                    if (!J(a, e).is_zero() && !dj(e, b, c).is_zero())
                        s += J(a, e) * dj(e, b, c);
                    if (!J(b, e).is_zero() && !dj(e, c, a).is_zero())
                        s += J(b, e) * dj(e, c, a);
                    if (!J(c, e).is_zero() && !dj(e, a, b).is_zero())
                        s += J(c, e) * dj(e, a, b);
                }
                if (!s.is_zero())
                    out.push_back(std::move(s));
            }
    return out;
}

double poisson_jacobi_max_residual(const Matrix<RationalExpr>& J, std::span<const PhaseState> states) {
    const int d = J.rows();
    std::vector<std::vector<RationalExpr>> dJ(static_cast<std::size_t>(d));
    for (int e = 0; e < d; ++e)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                dJ[static_cast<std::size_t>(e)].push_back(J(a, b).diff(detail::coord(e)));
    double worst = 0.0;
    for (const auto& st : states) {
        std::vector<double> Jv(static_cast<std::size_t>(d * d)), dJv(static_cast<std::size_t>(d * d * d));
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                Jv[static_cast<std::size_t>(a * d + b)] = J(a, b).eval(st);
        for (int e = 0; e < d; ++e)
            for (int k = 0; k < d * d; ++k)
                dJv[static_cast<std::size_t>(e * d * d + k)] =
                    dJ[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)].eval(st);
        auto Jat = [&](int a, int b) { return Jv[static_cast<std::size_t>(a * d + b)]; };
        auto dat = [&](int e, int a, int b) { return dJv[static_cast<std::size_t>(e * d * d + a * d + b)]; };
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                for (int c = b + 1; c < d; ++c) {
                    double s = 0.0;
                    for (int e = 0; e < d; ++e)
                        s += Jat(a, e) * dat(e, b, c) + Jat(b, e) * dat(e, c, a) + Jat(c, e) * dat(e, a, b);
                    worst = std::max(worst, std::abs(s));
                }
    }
    return worst;
}

Matrix<RationalExpr> lambda_master_residual(const StrongSymmetry& lambda, const VectorField& f) {
    Matrix<RationalExpr> r = lie_derivative_mixed(f, lambda.entries);
    for (int a = 0; a < r.rows(); ++a)
        for (int b = 0; b < r.cols(); ++b)
            r(a, b) = r(a, b) + lambda.entries(a, b).diff(Symbol::time());
    return r;
}

HierarchyBuild build_hierarchy(const LatticeConfig& cfg, int kind, int levels) {
    if (levels < 0)
        throw DomainError("number of levels must be non-negative");
    const VectorField eta = symmetry_field(kind, cfg);
    HierarchyBuild out;
    out.levels.push_back(base_level(cfg));
    for (int k = 1; k <= levels; ++k) {
        Level next = lift(out.levels.back(), eta);
        try {
            next.lambda_op = strong_symmetry(next.sigma, out.levels.back().sigma).entries;
        } catch (const SingularError& e) {
            out.notes.push_back("level " + std::to_string(k) + ": no Lambda (" + e.what() + ")");
        }
        try {
            next.H = hamiltonian_recover(next, RecoverMode::Integrate).H;
        } catch (const std::exception& e) {
            out.notes.push_back("level " + std::to_string(k) + ": no H (" + e.what() + ")");
        }
        out.levels.push_back(std::move(next));
    }
    return out;
}

Expr eta2_hamiltonian(const LatticeConfig& cfg, int m) {
    if (m < 0)
        throw DomainError("power of the Lie derivative must be non-negative");
    const VectorField eta2 = symmetry_field(2, cfg);
    Expr H = hamiltonian0(cfg);
    for (int i = 0; i < m; ++i)
        H = lie_derivative(eta2, H);
    return H;
}

template <class S>
nlohmann::json level_to_json(const HierarchyLevel<S>& level) {
    nlohmann::json j;
    j["n"] = level.sigma.n();
    j["k"] = level.k;
    if (level.l) {
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& c : level.l->components)
            comps.push_back(expr_text(c));
        j["l"] = comps;
        j["l0"] = expr_text(level.l->scalar_part);
    }
    auto matrix_json = [](const auto& m) {
        nlohmann::json rows = nlohmann::json::array();
        for (int a = 0; a < m.rows(); ++a) {
            nlohmann::json row = nlohmann::json::array();
            for (int b = 0; b < m.cols(); ++b)
                row.push_back(expr_text(m(a, b)));
            rows.push_back(row);
        }
        return rows;
    };
    j["sigma"] = matrix_json(level.sigma.matrix());
    if (level.lambda_op)
        j["lambda"] = matrix_json(*level.lambda_op);
    if (level.H)
        j["H"] = level.H->to_string();
    return j;
}

template <class S>
std::vector<CheckEntry> compare_with_golden(const HierarchyLevel<S>& level, const nlohmann::json& golden,
                                            const std::string& label) {
    const int n = level.sigma.n();
    std::vector<CheckEntry> out;
    auto parse = [n](const nlohmann::json& s) { return parse_rational(n, s.get<std::string>()); };
    auto compare_vector = [&](const std::string& field, const std::vector<RationalExpr>& got) {
        const auto& g = golden.at(field);
        if (g.size() != got.size())
            throw DomainError("golden field '" + field + "' has the wrong length");
        std::vector<RationalExpr> diff;
        for (std::size_t i = 0; i < got.size(); ++i)
            diff.push_back(got[i] - parse(g[i]));
        out.push_back(make_check(label + " " + field + " matches golden", n, diff));
    };
    auto compare_matrix = [&](const std::string& field, const Matrix<RationalExpr>& got) {
        const auto& g = golden.at(field);
        if (static_cast<int>(g.size()) != got.rows())
            throw DomainError("golden field '" + field + "' has the wrong shape");
        Matrix<RationalExpr> diff = got;
        for (int a = 0; a < got.rows(); ++a) {
            if (static_cast<int>(g[static_cast<std::size_t>(a)].size()) != got.cols())
                throw DomainError("golden field '" + field + "' has the wrong shape");
            for (int b = 0; b < got.cols(); ++b)
                diff(a, b) = got(a, b) - parse(g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
        }
        out.push_back(make_check(label + " " + field + " matches golden", n, diff));
    };

    if (golden.contains("l")) {
        if (!level.l)
            throw DomainError(label + ": golden has a one-form but the level has none");
        compare_vector("l", to_rational(level.l->components));
    }
    if (golden.contains("l0")) {
        if (!level.l)
            throw DomainError(label + ": golden has l0 but the level has no one-form");
        out.push_back(make_check(label + " l0 matches golden", n,
                                 std::vector<RationalExpr>{toda::to_rational(level.l->scalar_part) - parse(golden["l0"])}));
    }
    if (golden.contains("sigma"))
        compare_matrix("sigma", toda::to_rational(level.sigma.matrix()));
    if (golden.contains("lambda")) {
        if (!level.lambda_op)
            throw DomainError(label + ": golden has Lambda but the level has none");
        compare_matrix("lambda", *level.lambda_op);
    }
    if (golden.contains("H")) {
        if (!level.H)
            throw DomainError(label + ": golden has H but the level has none");
        out.push_back(make_check(label + " H matches golden", n,
                                 std::vector<RationalExpr>{RationalExpr(*level.H) - parse(golden["H"])}));
    }
    return out;
}

// ---------------------------------------------------------------------------

template Level lift(const Level&, const VectorField&);
template RationalLevel lift(const RationalLevel&, const VectorField&);
template StrongSymmetry strong_symmetry(const SigmaMatrix&, const SigmaMatrix&);
template StrongSymmetry strong_symmetry(const RationalSigma&, const RationalSigma&);
template std::vector<Expr> hamiltonian_gradient(const Level&);
template std::vector<RationalExpr> hamiltonian_gradient(const RationalLevel&);
template HamiltonianResult hamiltonian_recover(const Level&, RecoverMode, const std::optional<Expr>&);
template HamiltonianResult hamiltonian_recover(const RationalLevel&, RecoverMode, const std::optional<Expr>&);
template nlohmann::json level_to_json(const Level&);
template nlohmann::json level_to_json(const RationalLevel&);
template std::vector<CheckEntry> compare_with_golden(const Level&, const nlohmann::json&, const std::string&);
template std::vector<CheckEntry> compare_with_golden(const RationalLevel&, const nlohmann::json&, const std::string&);

} // namespace toda
