#include <doctest.h>

#include <random>

#include "support.hpp"
#include "toda/golden.hpp"
#include "toda/hierarchy.hpp"
#include "toda/symmetry.hpp"

using namespace toda;
using toda::test::P;

namespace {

VectorField eta(int kind, int n) { return symmetry_field(kind, LatticeConfig(n)); }

VectorField random_field(std::mt19937_64& rng, int n) {
    std::vector<Expr> c;
    for (int a = 0; a < 2 * n; ++a)
        c.push_back(toda::test::random_expr(rng, n, 3, 3));
    return VectorField(n, std::move(c));
}

} // namespace

TEST_CASE("eta1 matches the printed n=2 and n=3 fields") {
    CHECK(compare_field_with_golden(eta(1, 2), load_golden("eta1_n2"), "eta1").pass);
    CHECK(compare_field_with_golden(eta(1, 3), load_golden("eta1_n3"), "eta1").pass);
    CHECK_THROWS_AS(compare_field_with_golden(eta(1, 3), load_golden("eta1_n2"), "eta1"), DomainError);
    nlohmann::json wrong = load_golden("eta1_n2");
    wrong["components"][0] = "x3";
    CHECK_FALSE(compare_field_with_golden(eta(1, 2), wrong, "eta1").pass);
}

TEST_CASE("closed-form components") {
    for (int n = 2; n <= 5; ++n) {
        const VectorField e3 = eta(3, n);
        for (int j = 0; j < n; ++j) {
            CHECK(e3[j] == Expr::time(n));
            CHECK(e3[n + j] == Expr::constant(n, 1));
        }
        const VectorField e4 = eta(4, n);
        for (int j = 0; j < n; ++j) {
            CHECK(e4[j] == Expr::constant(n, 1));
            CHECK(e4[n + j].is_zero());
        }
    }
    CHECK(eta(2, 3)[1] == P(3, "2 - 1/2*t*x5"));
    CHECK_THROWS_AS(symmetry_field(0, LatticeConfig(2)), DomainError);
    CHECK_THROWS_AS(symmetry_field(6, LatticeConfig(2)), DomainError);
}

TEST_CASE("Master equation holds for every field") {
    for (int n = 2; n <= 6; ++n) {
        const VectorField f = flow_field(LatticeConfig(n));
        for (int kind = 1; kind <= kSymmetryCount; ++kind)
            CHECK_MESSAGE(master_residual(eta(kind, n), f).is_zero(), "kind ", kind, " n ", n);
    }
    CHECK(all_pass(verify_master_equations(2, 4)));
}

TEST_CASE("a perturbed field is not a symmetry") {
    const int n = 2;
    VectorField bad = eta(3, n);
    bad[n] = Expr::constant(n, 2);
    const VectorField r = master_residual(bad, flow_field(LatticeConfig(n)));
    CHECK_FALSE(r[0].is_zero());
    CHECK(r[0] == P(n, "-1"));
}

TEST_CASE("eta1 is the prolongation of its position part") {
    for (int n = 2; n <= 5; ++n) {
        const VectorField f = flow_field(LatticeConfig(n));
        for (const Expr& r : prolongation_residual(eta(1, n), f))
            CHECK(r.is_zero());
    }
}

TEST_CASE("bracket examples") {
    for (int n = 2; n <= 6; ++n) {
        CHECK(lie_bracket(eta(3, n), eta(4, n)).is_zero());
        CHECK(lie_bracket(eta(1, n), eta(2, n)) == Rational(1, 2) * eta(1, n));
        CHECK(lie_bracket(eta(2, n), eta(3, n)) == Rational(1, 2) * eta(3, n));
        CHECK(lie_bracket(eta(3, n), eta(1, n)) ==
              ratio(3 * (n + 1), 2) * eta(4, n) - Rational(2) * eta(2, n));
        for (int k = 1; k <= kSymmetryCount; ++k)
            CHECK(lie_bracket(eta(k, n), eta(k, n)).is_zero());
    }
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi") {
    for (int n = 2; n <= 3; ++n)
        for (int a = 1; a <= 5; ++a)
            for (int b = 1; b <= 5; ++b) {
                CHECK(lie_bracket(eta(a, n), eta(b, n)) == Rational(-1) * lie_bracket(eta(b, n), eta(a, n)));
                for (int c = 1; c <= 5; ++c) {
                    const VectorField A = eta(a, n), B = eta(b, n), C = eta(c, n);
                    const VectorField j = lie_bracket(lie_bracket(A, B), C) + lie_bracket(lie_bracket(B, C), A) +
                                          lie_bracket(lie_bracket(C, A), B);
                    CHECK(j.is_zero());
                }
            }
    std::mt19937_64 rng(11);
    const VectorField A = random_field(rng, 2), B = random_field(rng, 2), C = random_field(rng, 2);
    CHECK((lie_bracket(lie_bracket(A, B), C) + lie_bracket(lie_bracket(B, C), A) + lie_bracket(lie_bracket(C, A), B))
              .is_zero());
}

TEST_CASE("commutator table") {
    for (int n = 2; n <= 6; ++n) {
        const std::vector<CheckEntry> table = commutator_table(LatticeConfig(n));
        CHECK(table.size() == 25);
        CHECK(all_pass(table));
    }
}

TEST_CASE("readings of the [eta1, eta5] row") {
    for (int n = 2; n <= 4; ++n) {
        for (const Eta15Outcome& o : eta15_readings(LatticeConfig(n))) {
            if (o.reading == Eta15Reading::AveragedOverJ)
                CHECK(o.pass);
            else
                CHECK_FALSE(o.pass);
            CHECK(o.pass == o.residual.empty());
        }
    }
}

TEST_CASE("Lie derivative of the base one-form") {
    const LatticeConfig cfg(2);
    const Level base = base_level(cfg);
    const OneForm l1 = lie_derivative(eta(1, 2), *base.l);
    const nlohmann::json golden = load_golden("eta1_level1");
    for (int a = 0; a < 4; ++a)
        CHECK(equals(RationalExpr(l1[a]), parse_rational(2, golden.at("l").at(a).get<std::string>())));
    for (int n = 2; n <= 4; ++n) {
        CHECK(lie_derivative(eta(4, n), *base_level(LatticeConfig(n)).l).is_zero());
        CHECK(lie_derivative(eta(4, n), hamiltonian0(LatticeConfig(n))).is_zero());
        CHECK(lie_derivative(eta(2, n), hamiltonian0(LatticeConfig(n))) == -hamiltonian0(LatticeConfig(n)));
    }
}

TEST_CASE("Lie derivative commutes with the curl") {
    for (int n = 2; n <= 3; ++n) {
        const OneForm l0 = *base_level(LatticeConfig(n)).l;
        const VectorField X = eta(1, n);
        CHECK(equals(curl(lie_derivative(X, l0)), lie_derivative(X, curl(l0))));
    }
    std::mt19937_64 rng(21);
    const VectorField X = random_field(rng, 2);
    std::vector<Expr> w;
    for (int a = 0; a < 4; ++a)
        w.push_back(toda::test::random_expr(rng, 2, 3, 3));
    const OneForm l(2, w);
    CHECK(equals(curl(lie_derivative(X, l)), lie_derivative(X, curl(l))));
}

TEST_CASE("Lie derivative of a two-form stays antisymmetric") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 5; ++i) {
        std::vector<Expr> w;
        for (int a = 0; a < 4; ++a)
            w.push_back(toda::test::random_expr(rng, 2, 3, 3));
        const SigmaMatrix s = curl(OneForm(2, w));
        // the BasicSigma constructor rejects a non-antisymmetric result
        const SigmaMatrix ls = lie_derivative(random_field(rng, 2), s);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                CHECK(ls(a, b) == -ls(b, a));
    }
}

TEST_CASE("vector Lie derivative is the bracket") {
    std::mt19937_64 rng(23);
    const VectorField A = random_field(rng, 2), B = random_field(rng, 2);
    CHECK(lie_derivative(A, B) == lie_bracket(A, B));
    const Expr s = toda::test::random_expr(rng, 2);
    // L_[A,B] s = L_A L_B s - L_B L_A s
    CHECK(lie_derivative(lie_bracket(A, B), s) ==
          lie_derivative(A, lie_derivative(B, s)) - lie_derivative(B, lie_derivative(A, s)));
}

TEST_CASE("objects of different lattice size do not mix") {
    CHECK_THROWS_AS(lie_bracket(eta(1, 2), eta(1, 3)), DomainError);
    CHECK_THROWS_AS(master_residual(eta(1, 2), flow_field(LatticeConfig(3))), DomainError);
    CHECK_THROWS_AS(VectorField(2, {Expr(2)}), DomainError);
}
