#pragma once

#include <cmath>
#include <random>
#include <string_view>
#include <vector>

#include "toda/expr.hpp"
#include "toda/rational_expr.hpp"
#include "toda/serialize.hpp"

namespace toda::test {

inline Expr P(int n, std::string_view text) { return parse_expr(n, text); }
inline RationalExpr R(int n, std::string_view text) { return parse_rational(n, text); }

/// Small random element of the ring: integer coefficients in [-5, 5], total
/// degree <= max_degree, t and atoms included.
inline Expr random_expr(std::mt19937_64& rng, int n, int max_terms = 5, int max_degree = 4, bool with_time = true) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> slot(0, Monomial::slot_count(n) - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<RawTerm> raw;
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        RawTerm t{Rational(coeff(rng)), {}};
        const int d = deg(rng);
        for (int j = 0; j < d; ++j) {
            const int s = slot(rng);
            if (s < 2 * n)
                t.powers.push_back({Symbol::x(s + 1), 1});
            else if (s == 2 * n) {
                if (with_time)
                    t.powers.push_back({Symbol::time(), 1});
            } else
                t.powers.push_back({Symbol::atom(s - 2 * n), 1});
        }
        raw.push_back(std::move(t));
    }
    return Expr::normalize(n, raw);
}

inline PhaseState random_state(std::mt19937_64& rng, int n, double half_width = 1.0) {
    std::uniform_real_distribution<double> u(-half_width, half_width);
    std::vector<double> x(static_cast<std::size_t>(2 * n));
    for (auto& v : x)
        v = u(rng);
    return PhaseState(std::move(x), u(rng));
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

} // namespace toda::test
