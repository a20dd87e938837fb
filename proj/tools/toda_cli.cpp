// Command-line front end: symbolic verification suites and trajectory export.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "toda/dynamics.hpp"
#include "toda/golden.hpp"
#include "toda/hierarchy.hpp"
#include "toda/report.hpp"
#include "toda/symmetry.hpp"

namespace {

using nlohmann::json;
using namespace toda;

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kBadState = 3,
    kUnwritable = 4,
    kNumeric = 5,
    kData = 6,
};

const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  every requested check passed\n"
    "  1  at least one check failed (see the report)\n"
    "  2  usage error (unknown flag, bad value)\n"
    "  3  malformed --x0 (wrong length or not a number)\n"
    "  4  output file could not be written\n"
    "  5  numeric failure (step-size collapse, singular evaluation)\n"
    "  6  golden data missing or malformed, or a symbolic precondition failed\n"
    "Environment: TODA_GOLDEN_DIR overrides the golden-file directory.";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    std::string format = "json";
    std::string path;
};

struct Range {
    int lo = 2;
    int hi = 2;
};

Range parse_range(const std::string& text) {
    Range r;
    try {
        const auto dots = text.find("..");
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw UsageError("lattice range must look like 3 or 2..6, got '" + text + "'");
    }
    if (r.lo < 2 || r.hi < r.lo)
        throw UsageError("lattice range must satisfy 2 <= A <= B, got '" + text + "'");
    return r;
}

PhaseState parse_state(const std::string& text, int n, double t0) {
    std::vector<double> x;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            x.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw BadStateError("--x0 entry '" + item + "' is not a number");
        }
    }
    if (x.size() != static_cast<std::size_t>(2 * n))
        throw BadStateError("--x0 has " + std::to_string(x.size()) + " entries, expected 2n = " + std::to_string(2 * n));
    return PhaseState(std::move(x), t0);
}

// Positions 0.1 j, momenta 0.2 - 0.3 (j - 1): distinct velocities, no symmetry.
PhaseState default_state(int n) {
    std::vector<double> x(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j) {
        x[static_cast<std::size_t>(j)] = 0.1 * (j + 1);
        x[static_cast<std::size_t>(n + j)] = 0.2 - 0.3 * j;
    }
    return PhaseState(std::move(x), 0.0);
}

void write_atomically(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw OutputError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw OutputError("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw OutputError("cannot move output into place at " + path);
    }
}

// A report: the check list plus command-specific payload.
struct Report {
    json body = json::object();
    std::vector<CheckEntry> checks;
    std::string extra_text;
};

int emit(const Report& rep, const Output& out) {
    const bool pass = all_pass(rep.checks);
    std::string content;
    if (out.format == "json") {
        json j = rep.body;
        j["checks"] = to_json(rep.checks);
        j["status"] = pass ? "pass" : "fail";
        content = j.dump(2) + "\n";
    } else if (out.format == "text") {
        content = render_text(rep.checks) + rep.extra_text;
        content += pass ? "all checks passed\n" : "some checks FAILED\n";
    } else {
        throw UsageError("format '" + out.format + "' is not available for this command");
    }
    write_atomically(out.path, content);
    return pass ? kOk : kCheckFailed;
}

void append(std::vector<CheckEntry>& to, const std::vector<CheckEntry>& from) {
    to.insert(to.end(), from.begin(), from.end());
}

// ---------------------------------------------------------------------------

Report verify_symmetries(const Range& r) {
    Report rep;
    rep.body["command"] = "verify-symmetries";
    rep.body["n"] = {r.lo, r.hi};
    rep.checks = verify_master_equations(r.lo, r.hi);
    for (int n : {2, 3})
        if (n >= r.lo && n <= r.hi)
            rep.checks.push_back(compare_field_with_golden(symmetry_field(1, LatticeConfig(n)),
                                                           load_golden("eta1_n" + std::to_string(n)), "eta1"));
    return rep;
}

Report algebra(const Range& r) {
    Report rep;
    rep.body["command"] = "algebra";
    rep.body["n"] = {r.lo, r.hi};
    json readings = json::array();
    for (int n = r.lo; n <= r.hi; ++n) {
        const LatticeConfig cfg(n);
        append(rep.checks, commutator_table(cfg));
        for (const auto& o : eta15_readings(cfg))
            readings.push_back({{"n", n}, {"reading", to_string(o.reading)}, {"status", o.pass ? "pass" : "fail"},
                                {"residual", o.residual}});
    }
    rep.body["eta1_eta5_readings"] = readings;
    return rep;
}

template <class S>
void structural_checks(const HierarchyLevel<S>& lv, const VectorField& f, std::vector<CheckEntry>& checks) {
    const int n = lv.sigma.n();
    const std::string k = std::to_string(lv.k);
    checks.push_back(make_check("closedness of sigma(" + k + ")", n, closedness_residual(lv.sigma)));
    if (lv.H) {
        auto r = contract(lv.sigma, f);
        const auto g = gradient(S(*lv.H));
        for (std::size_t a = 0; a < r.size(); ++a)
            r[a] = r[a] + g[a];
        checks.push_back(make_check("sigma(" + k + ").f + grad H(" + k + ") = 0", n, r));
        Expr flow_derivative(n);
        for (int a = 0; a < 2 * n; ++a)
            flow_derivative += lv.H->diff(Symbol::x(a + 1)) * f[a];
        checks.push_back(make_check("H(" + k + ") conserved along f", n, std::vector<Expr>{flow_derivative}));
    }
}

// Levels with printed n = 2 forms in the golden directory.
bool has_printed_level(int kind, int k) { return (kind == 1 && k >= 0 && k <= 3) || (kind == 5 && (k == 1 || k == 2)); }

Report hierarchy(int kind, int levels, bool down, int n) {
    const LatticeConfig cfg(n);
    const VectorField f = flow_field(cfg);
    Report rep;
    rep.body["command"] = "hierarchy";
    rep.body["eta"] = kind;
    rep.body["n"] = n;

    const int up_levels = down ? std::max(levels, 2) : levels;
    const int build_kind = down ? 1 : kind;
    HierarchyBuild build = build_hierarchy(cfg, build_kind, up_levels);
    rep.body["notes"] = build.notes;

    json dumps = json::array();
    for (const auto& lv : build.levels) {
        dumps.push_back(level_to_json(lv));
        structural_checks(lv, f, rep.checks);
        if (lv.k >= 1 && lv.H && build.levels[static_cast<std::size_t>(lv.k - 1)].H && lv.lambda_op) {
            const auto rel = verify_lambda_relation(*lv.lambda_op, *build.levels[static_cast<std::size_t>(lv.k - 1)].H, *lv.H);
            rep.checks.push_back(make_check("grad H(" + std::to_string(lv.k) + ") = Lambda grad H(" +
                                                std::to_string(lv.k - 1) + ")",
                                            n, rel.residual));
        }
        const std::string name = "eta" + std::to_string(build_kind) + "_level" + std::to_string(lv.k);
        if (n == 2 && has_printed_level(build_kind, lv.k))
            append(rep.checks, compare_with_golden(lv, load_golden(name), name));
    }
    rep.body["levels"] = dumps;

    if (kind == 2 && !down)
        for (int m = 1; m <= levels; ++m) {
            Expr expected = hamiltonian0(cfg);
            if (m % 2 == 1)
                expected = -expected;
            rep.checks.push_back(make_check("(L_eta2)^" + std::to_string(m) + " H(0) = (-1)^m H(0)", n,
                                            std::vector<Expr>{eta2_hamiltonian(cfg, m) - expected}));
        }
    if (kind == 4 && !down) {
        const Level base = base_level(cfg);
        const VectorField eta4 = symmetry_field(4, cfg);
        rep.checks.push_back(make_check("L_eta4 l(0) = 0", n, lie_derivative(eta4, *base.l).components));
        rep.checks.push_back(make_check("L_eta4 H(0) = 0", n, std::vector<Expr>{lie_derivative(eta4, *base.H)}));
    }
    if (kind == 5 && !down)
        append(rep.checks, eta5_chain(cfg).checks);

    if (down) {
        const auto& lv = build.levels;
        DownwardChain chain = downward_chain(cfg, lv[0], lv[1], lv[2]);
        append(rep.checks, chain.checks);
        json down_json = json::array();
        down_json.push_back(level_to_json(chain.prime1));
        down_json.push_back(level_to_json(chain.prime0));
        if (n == 2) {
            append(rep.checks, compare_with_golden(chain.prime1, load_golden("eta3_prime1"), "eta3_prime1"));
            append(rep.checks, compare_with_golden(chain.prime0, load_golden("eta3_prime0"), "eta3_prime0"));
        }
        std::optional<RationalOneForm> printed;
        if (n == 2)
            printed = printed_downward_one_form(cfg);
        DownwardLevel minus1 = downward_level(StrongSymmetry{*lv[1].lambda_op}, lv[0].sigma, printed);
        rep.checks.push_back(make_check("sigma'(-1).f + grad H(-1) = 0", n, minus1.motion_residual));
        if (n == 2)
            append(rep.checks, compare_with_golden(minus1.level, load_golden("downward_minus1"), "downward_minus1"));
        json m1 = level_to_json(minus1.level);
        if (minus1.curl_matches_sigma)
            m1["curl_l_equals_sigma"] = *minus1.curl_matches_sigma;
        if (minus1.one_form_gradient_matches)
            m1["l_reproduces_grad_H"] = *minus1.one_form_gradient_matches;
        down_json.push_back(m1);
        rep.body["downward"] = down_json;
        if (minus1.curl_matches_sigma)
            rep.extra_text += std::string("note: curl of the k=-1 one-form ") +
                              (*minus1.curl_matches_sigma ? "equals" : "differs from") + " sigma'(-1)\n";
    }
    for (const auto& note : build.notes)
        rep.extra_text += "note: " + note + "\n";
    return rep;
}

Report appendix_b(const Range& r) {
    Report rep;
    rep.body["command"] = "appendix-b";
    rep.body["n"] = {r.lo, r.hi};
    for (int n = r.lo; n <= r.hi; ++n) {
        const LatticeConfig cfg(n);
        const VectorField eta1 = symmetry_field(1, cfg);
        const SigmaMatrix sigma0 = base_level(cfg).sigma;
        const auto inv = inverse_symmetry_check(symmetry_field(3, cfg), eta1, sigma0);
        rep.checks.push_back(make_check("sigma(0) = L_eta3 L_eta1 sigma(0)", n, inv.residual));
        if (inv.reduced_applicable)
            rep.checks.push_back(CheckEntry{"reduced inverse-symmetry form holds for eta3", n, inv.reduced_pass, {}, ""});
        const auto control = inverse_symmetry_check(symmetry_field(4, cfg), eta1, sigma0);
        rep.checks.push_back(CheckEntry{"eta4 control is rejected", n, !control.pass, {},
                                        control.pass ? "unexpected: eta4 satisfied the identity" : ""});
    }
    return rep;
}

std::vector<std::pair<std::string, Expr>> conserved_family(const LatticeConfig& cfg) {
    std::vector<std::pair<std::string, Expr>> q;
    const HierarchyBuild build = build_hierarchy(cfg, 1, 3);
    for (const auto& lv : build.levels)
        if (lv.H)
            q.emplace_back("H(" + std::to_string(lv.k) + ")", *lv.H);
    q.emplace_back("H(-1)", total_momentum(cfg));
    return q;
}

Report conserve(int n, const PhaseState& x0, double T, const IntegratorOptions& opt, double threshold) {
    const LatticeConfig cfg(n);
    const Trajectory traj = integrate(cfg, x0, T, opt);
    Report rep;
    rep.body["command"] = "conserve";
    rep.body["n"] = n;
    rep.body["T"] = T;
    rep.body["method"] = to_string(opt.method);
    rep.body["accepted_steps"] = traj.accepted;
    rep.body["rejected_steps"] = traj.rejected;
    json qs = json::array();
    for (const auto& d : conservation_report(traj, conserved_family(cfg))) {
        qs.push_back({{"quantity", d.label}, {"initial", d.initial}, {"drift", d.drift}});
        std::ostringstream note;
        note << "drift " << d.drift << " (threshold " << threshold << ")";
        rep.checks.push_back(CheckEntry{d.label + " drift below threshold", n, d.drift < threshold, {}, note.str()});
    }
    rep.body["quantities"] = qs;
    return rep;
}

Report isospectral(int n, const PhaseState& x0, double T, const IntegratorOptions& opt, double threshold) {
    const LatticeConfig cfg(n);
    const HierarchyBuild build = build_hierarchy(cfg, 1, 1);
    const auto& lambda = build.levels[1].lambda_op;
    if (!lambda)
        throw SingularError("Lambda(1) is not available for n = " + std::to_string(n));
    const Trajectory traj = integrate(cfg, x0, T, opt);
    const IsospectralReport iso = isospectral_drift(traj, StrongSymmetry{*lambda});
    Report rep;
    rep.body["command"] = "isospectral";
    rep.body["n"] = n;
    rep.body["T"] = T;
    rep.body["drift"] = iso.drift;
    rep.body["samples_used"] = iso.used;
    rep.body["samples_skipped"] = iso.skipped;
    json ev = json::array();
    for (const auto& z : iso.initial)
        ev.push_back({z.real(), z.imag()});
    rep.body["initial_eigenvalues"] = ev;
    std::ostringstream note;
    note << "drift " << iso.drift << " (threshold " << threshold << ")";
    rep.checks.push_back(CheckEntry{"Lambda(1) eigenvalue drift below threshold", n, iso.drift < threshold, {}, note.str()});
    return rep;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic and numeric verification of Toda lattice symmetries and Hamiltonian hierarchies"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    Output out;
    std::string range_text = "2..6";
    int kind = 1, levels = 3, n = 2;
    bool down = false;
    std::string x0_text;
    double T = 10.0, tol = 1e-10, step = 1e-2, t0 = 0.0, threshold = 1e-6;
    std::string method_text = "rk45";

    auto* vs = app.add_subcommand("verify-symmetries", "Master-equation sweep over eta1..eta5");
    vs->add_option("--n", range_text, "Lattice sizes, A..B or a single value")->capture_default_str();

    auto* alg = app.add_subcommand("algebra", "Commutator table of the symmetry fields");
    alg->add_option("--n", range_text, "Lattice sizes, A..B or a single value")->capture_default_str();

    auto* hier = app.add_subcommand("hierarchy", "Build a Lagrangian hierarchy, recover Hamiltonians, compare goldens");
    hier->add_option("--eta", kind, "Generating symmetry 1..5")->check(CLI::Range(1, 5))->capture_default_str();
    hier->add_option("--levels", levels, "Number of levels above the base")->check(CLI::Range(0, 8))->capture_default_str();
    hier->add_flag("--down", down, "Also build the downward chain along eta3 and the k=-1 level");
    hier->add_option("--n", n, "Lattice size")->check(CLI::Range(2, 12))->capture_default_str();

    auto* appb = app.add_subcommand("appendix-b", "Check that eta3 inverts the eta1 lift of sigma(0)");
    appb->add_option("--n", range_text, "Lattice sizes, A..B or a single value")->capture_default_str();

    auto add_numeric = [&](CLI::App* sub, bool needs_x0) {
        sub->add_option("--n", n, "Lattice size")->check(CLI::Range(2, 64))->capture_default_str();
        auto* x0_opt = sub->add_option("--x0", x0_text, "Initial state, 2n comma-separated values");
        if (needs_x0)
            x0_opt->required();
        sub->add_option("--t0", t0, "Initial time")->capture_default_str();
        sub->add_option("--T", T, "Integration horizon")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--tol", tol, "rk45 local error tolerance")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--method", method_text, "rk45 or rk4")->check(CLI::IsMember({"rk4", "rk45"}))->capture_default_str();
        sub->add_option("--step", step, "rk4 step")->check(CLI::PositiveNumber)->capture_default_str();
    };
    auto* integ = app.add_subcommand("integrate", "Integrate the flow and write the trajectory as CSV");
    add_numeric(integ, true);
    auto* cons = app.add_subcommand("conserve", "Drift of the hierarchy Hamiltonians along a trajectory");
    add_numeric(cons, false);
    cons->add_option("--threshold", threshold, "Maximum allowed relative drift")->capture_default_str();
    auto* iso = app.add_subcommand("isospectral", "Eigenvalue drift of Lambda(1) along a trajectory");
    add_numeric(iso, false);
    iso->add_option("--threshold", threshold, "Maximum allowed eigenvalue drift")->capture_default_str();

    for (auto* sub : {vs, alg, hier, appb, cons, iso})
        sub->add_option("--format", out.format, "Output format: json or text")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
    integ->add_option("--format", out.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    for (auto* sub : {vs, alg, hier, appb, integ, cons, iso})
        sub->add_option("--out", out.path, "Write to this file (atomically) instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        IntegratorOptions opt;
        opt.method = method_from_string(method_text);
        opt.tol = tol;
        opt.step = step;

        if (vs->parsed())
            return emit(verify_symmetries(parse_range(range_text)), out);
        if (alg->parsed())
            return emit(algebra(parse_range(range_text)), out);
        if (hier->parsed())
            return emit(hierarchy(kind, levels, down, n), out);
        if (appb->parsed())
            return emit(appendix_b(parse_range(range_text)), out);
        if (integ->parsed()) {
            const LatticeConfig cfg(n);
            const Trajectory traj = integrate(cfg, parse_state(x0_text, n, t0), T, opt);
            if (integ->count("--format") == 0 || out.format == "csv") {
                std::ostringstream os;
                write_csv(os, traj);
                write_atomically(out.path, os.str());
            } else {
                json j;
                j["n"] = n;
                j["method"] = to_string(opt.method);
                j["accepted_steps"] = traj.accepted;
                j["rejected_steps"] = traj.rejected;
                json rows = json::array();
                for (const auto& s : traj.samples)
                    rows.push_back({{"t", s.time}, {"x", s.x}});
                j["samples"] = rows;
                write_atomically(out.path, j.dump(2) + "\n");
            }
            return kOk;
        }
        const PhaseState x0 = x0_text.empty() ? PhaseState(default_state(n).x, t0) : parse_state(x0_text, n, t0);
        if (cons->parsed())
            return emit(conserve(n, x0, T, opt, threshold), out);
        if (iso->parsed())
            return emit(isospectral(n, x0, T, opt, threshold), out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BadStateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadState;
    } catch (const OutputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUnwritable;
    } catch (const StiffnessError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const SingularError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
