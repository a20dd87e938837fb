#include "toda/symmetry.hpp"

#include <map>
#include <optional>

namespace toda {

namespace {

VectorField eta1(int n) {
    const Expr t = Expr::time(n);
    const Rational half(1, 2);
    auto p = [n](int j) { return Expr::x(n, n + j); };
    std::vector<Expr> c;
    for (int j = 1; j <= n; ++j) {
        Expr e = Rational(n + 1 - j) * p(j);
        for (int k = 1; k < j; ++k)
            e -= half * p(k);
        for (int k = j + 1; k <= n; ++k)
            e += half * p(k);
        e += half * t * (p(j).pow(2) + Expr::atom(n, j - 1) + Expr::atom(n, j));
        c.push_back(std::move(e));
    }
    for (int j = 1; j <= n; ++j) {
        const Expr left = Expr::atom(n, j - 1);
        const Expr right = Expr::atom(n, j);
        Expr e = half * p(j).pow(2) + Rational(n + 2 - j) * left - Rational(n - j) * right;
        if (j > 1)
            e += half * t * (p(j - 1) + p(j)) * left;
        if (j < n)
            e -= half * t * (p(j) + p(j + 1)) * right;
        c.push_back(std::move(e));
    }
    return VectorField(n, std::move(c));
}

VectorField eta2(int n) {
    const Expr t = Expr::time(n);
    const Rational half(1, 2);
    std::vector<Expr> c;
    for (int j = 1; j <= n; ++j)
        c.push_back(Expr::constant(n, j) - half * t * Expr::x(n, n + j));
    for (int j = 1; j <= n; ++j)
        c.push_back(-half * Expr::x(n, n + j) - half * t * (Expr::atom(n, j - 1) - Expr::atom(n, j)));
    return VectorField(n, std::move(c));
}

VectorField eta3(int n) {
    std::vector<Expr> c(static_cast<std::size_t>(n), Expr::time(n));
    c.resize(static_cast<std::size_t>(2 * n), Expr::constant(n, 1));
    return VectorField(n, std::move(c));
}

VectorField eta4(int n) {
    std::vector<Expr> c(static_cast<std::size_t>(n), Expr::constant(n, 1));
    c.resize(static_cast<std::size_t>(2 * n), Expr(n));
    return VectorField(n, std::move(c));
}

VectorField eta5(int n) {
    Expr q(n), p(n);
    for (int i = 1; i <= n; ++i) {
        q += Expr::x(n, i);
        p += Expr::x(n, n + i);
    }
    std::vector<Expr> c(static_cast<std::size_t>(n), q);
    c.resize(static_cast<std::size_t>(2 * n), p);
    return VectorField(n, std::move(c));
}

std::string bracket_name(int m, int k) {
    return "[eta" + std::to_string(m) + ",eta" + std::to_string(k) + "]";
}

// Printed right-hand side for [eta_m, eta_k], m < k, excluding the (1,5) row.
std::optional<std::pair<std::string, VectorField>> printed_relation(int m, int k, const LatticeConfig& cfg,
                                                                    const std::vector<VectorField>& eta) {
    const int n = cfg.n;
    const Rational half(1, 2);
    auto e = [&](int i) -> const VectorField& { return eta[static_cast<std::size_t>(i - 1)]; };
    if (m == 1 && k == 2)
        return std::pair{"1/2 eta1", half * e(1)};
    if (m == 2 && k == 3)
        return std::pair{"1/2 eta3", half * e(3)};
    if (m == 1 && k == 3)   // printed as [eta3, eta1] = 3/2 (n+1) eta4 - 2 eta2
        return std::pair{"-(3/2 (n+1) eta4 - 2 eta2)",
                         ratio(-3 * (n + 1), 2) * e(4) + Rational(2) * e(2)};
    if (m == 3 && k == 5)
        return std::pair{"n eta3", Rational(n) * e(3)};
    if (m == 4 && k == 5)
        return std::pair{"n eta4", Rational(n) * e(4)};
    if (m == 2 && k == 5)
        return std::pair{"1/2 n(n+1) eta4", ratio(n * (n + 1), 2) * e(4)};
    if (m == 1 && k == 5)
        return std::nullopt;
    return std::pair{"0", VectorField::zero(n)};
}

// n eta1^j eta4 + n eta1^(n+j) (1 - eta4) + eta5^(n+j) (2 eta2 - 3/2 (n+1) eta4)
VectorField eta15_rhs(int j, const LatticeConfig& cfg, const std::vector<VectorField>& eta) {
    const int n = cfg.n;
    const VectorField& e1 = eta[0];
    const VectorField& e2 = eta[1];
    const VectorField& e4 = eta[3];
    const VectorField& e5 = eta[4];
    std::vector<Expr> c;
    for (int a = 0; a < 2 * n; ++a) {
        Expr v = Rational(n) * e1[j - 1] * e4[a] + Rational(n) * e1[n + j - 1] * (Expr::constant(n, 1) - e4[a]) +
                 e5[n + j - 1] * (Rational(2) * e2[a] - ratio(3 * (n + 1), 2) * e4[a]);
        c.push_back(std::move(v));
    }
    return VectorField(n, std::move(c));
}

} // namespace

VectorField symmetry_field(int kind, const LatticeConfig& cfg) {
    switch (kind) {
    case 1: return eta1(cfg.n);
    case 2: return eta2(cfg.n);
    case 3: return eta3(cfg.n);
    case 4: return eta4(cfg.n);
    case 5: return eta5(cfg.n);
    default: throw DomainError("symmetry kind must be in 1..5, got " + std::to_string(kind));
    }
}

VectorField master_residual(const VectorField& eta, const VectorField& f) {
    return eta.diff(Symbol::time()) + lie_derivative(f, eta);
}

VectorField lie_bracket(const VectorField& A, const VectorField& B) { return lie_derivative(A, B); }

std::vector<Expr> prolongation_residual(const VectorField& eta, const VectorField& f) {
    const int n = eta.n();
    std::vector<Expr> out;
    for (int j = 0; j < n; ++j) {
        Expr total = eta[j].diff(Symbol::time());
        for (int a = 0; a < 2 * n; ++a)
            total += eta[j].diff(Symbol::x(a + 1)) * f[a];
        out.push_back(eta[n + j] - total);
    }
    return out;
}

std::vector<CheckEntry> verify_master_equations(int n_lo, int n_hi) {
    std::vector<CheckEntry> out;
    for (int n = n_lo; n <= n_hi; ++n) {
        const LatticeConfig cfg(n);
        const VectorField f = flow_field(cfg);
        for (int kind = 1; kind <= kSymmetryCount; ++kind)
            out.push_back(make_check("master equation eta" + std::to_string(kind), n,
                                     master_residual(symmetry_field(kind, cfg), f)));
    }
    return out;
}

std::string to_string(Eta15Reading r) {
    switch (r) {
    case Eta15Reading::FixedJForAllJ: return "j fixed, relation for every j";
    case Eta15Reading::JEqualsAModN: return "j = a mod n";
    case Eta15Reading::ExistsJPerComponent: return "some j per component a";
    case Eta15Reading::AveragedOverJ: return "averaged over j (n eta1^j -> sum_j eta1^j)";
    }
    return "?";
}

std::vector<Eta15Outcome> eta15_readings(const LatticeConfig& cfg) {
    const int n = cfg.n;
    std::vector<VectorField> eta;
    for (int k = 1; k <= kSymmetryCount; ++k)
        eta.push_back(symmetry_field(k, cfg));
    const VectorField lhs = lie_bracket(eta[0], eta[4]);
    std::vector<VectorField> rhs;
    for (int j = 1; j <= n; ++j)
        rhs.push_back(eta15_rhs(j, cfg, eta));

    std::vector<Eta15Outcome> out;

    {
        Eta15Outcome o{Eta15Reading::FixedJForAllJ, true, {}};
        for (int j = 1; j <= n; ++j) {
            const VectorField d = lhs - rhs[static_cast<std::size_t>(j - 1)];
            if (!d.is_zero()) {
                o.pass = false;
                for (const auto& s : residual_strings(d))
                    o.residual.push_back("j=" + std::to_string(j) + " " + s);
            }
        }
        out.push_back(std::move(o));
    }
    {
        std::vector<Expr> d;
        for (int a = 0; a < 2 * n; ++a)
            d.push_back(lhs[a] - rhs[static_cast<std::size_t>(a % n)][a]);
        auto res = residual_strings(d);
        out.push_back({Eta15Reading::JEqualsAModN, res.empty(), std::move(res)});
    }
    {
        Eta15Outcome o{Eta15Reading::ExistsJPerComponent, true, {}};
        for (int a = 0; a < 2 * n; ++a) {
            bool found = false;
            for (const auto& r : rhs)
                found = found || (lhs[a] - r[a]).is_zero();
            if (!found) {
                o.pass = false;
                o.residual.push_back("[" + std::to_string(a + 1) + "] no j matches");
            }
        }
        out.push_back(std::move(o));
    }
    {
        VectorField avg = VectorField::zero(n);
        for (const auto& r : rhs)
            avg = avg + r;
        avg = ratio(1, n) * avg;
        auto res = residual_strings(lhs - avg);
        out.push_back({Eta15Reading::AveragedOverJ, res.empty(), std::move(res)});
    }
    return out;
}

std::vector<CheckEntry> commutator_table(const LatticeConfig& cfg) {
    const int n = cfg.n;
    std::vector<VectorField> eta;
    for (int k = 1; k <= kSymmetryCount; ++k)
        eta.push_back(symmetry_field(k, cfg));

    std::string eta15_note;
    bool eta15_any = false;
    for (const auto& o : eta15_readings(cfg)) {
        eta15_any = eta15_any || o.pass;
        if (!eta15_note.empty())
            eta15_note += "; ";
        eta15_note += to_string(o.reading) + ": " + (o.pass ? "pass" : "fail");
    }

    std::vector<CheckEntry> out;
    for (int m = 1; m <= kSymmetryCount; ++m)
        for (int k = 1; k <= kSymmetryCount; ++k) {
            const VectorField lhs = lie_bracket(eta[static_cast<std::size_t>(m - 1)], eta[static_cast<std::size_t>(k - 1)]);
            if ((m == 1 && k == 5) || (m == 5 && k == 1)) {
                CheckEntry e{bracket_name(m, k) + " = printed [eta1,eta5] row" + (m == 5 ? " (negated)" : ""), n,
                             eta15_any, {}, eta15_note};
                out.push_back(std::move(e));
                continue;
            }
            if (m == k) {
                out.push_back(make_check(bracket_name(m, k) + " = 0", n, lhs));
                continue;
            }
            const int lo = std::min(m, k), hi = std::max(m, k);
            auto rel = printed_relation(lo, hi, cfg, eta);
            VectorField expected = rel->second;
            std::string label = rel->first;
            if (m > k) {
                expected = Rational(-1) * expected;
                label = label == "0" ? "0" : "-(" + label + ")";
            }
            out.push_back(make_check(bracket_name(m, k) + " = " + label, n, lhs - expected));
        }
    return out;
}

} // namespace toda
