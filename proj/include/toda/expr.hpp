#pragma once

// Exact polynomial ring Q[x^1..x^2n, t, E_1..E_{n-1}] where the atom E_j
// stands for exp(x^j - x^(j+1)). Every scalar the lattice calculus produces
// lives here (or in its fraction field, see rational_expr.hpp).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toda/errors.hpp"
#include "toda/phase_state.hpp"

namespace toda {

using Rational = mpq_class;

/// num/den in canonical form (any signs, common factors removed).
inline Rational ratio(long num, long den) {
    Rational r(num);
    r /= den;
    return r;
}

enum class SymbolKind { Coordinate, Time, Atom };

/// A ring generator. Coordinates are 1-based (x^1..x^2n); atoms E_j use j = 1..n-1.
struct Symbol {
    SymbolKind kind = SymbolKind::Coordinate;
    int index = 1;

    static constexpr Symbol x(int a) { return {SymbolKind::Coordinate, a}; }
    static constexpr Symbol time() { return {SymbolKind::Time, 0}; }
    static constexpr Symbol atom(int j) { return {SymbolKind::Atom, j}; }

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Exponent vector over the slots [x^1..x^2n | t | E_1..E_{n-1}].
///
/// Ordering is graded lexicographic: higher total degree first, ties broken
/// by comparing exponents slot by slot in the order above, larger exponent
/// first. Expr stores terms in this descending order and prints them that way.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(int n) : exps_(static_cast<std::size_t>(slot_count(n)), 0) {}

    static int slot_count(int n) { return 3 * n; }

    int exponent(int slot) const { return exps_[static_cast<std::size_t>(slot)]; }
    void set_exponent(int slot, int e);
    int degree() const { return degree_; }
    bool is_one() const { return degree_ == 0; }
    std::size_t slots() const { return exps_.size(); }

    bool divides(const Monomial& other) const;
    Monomial operator*(const Monomial& other) const;
    Monomial operator/(const Monomial& other) const;   // caller guarantees divisibility

    friend bool operator==(const Monomial&, const Monomial&) = default;

    /// True when *this precedes other in the descending graded-lex order.
    bool precedes(const Monomial& other) const {
        if (degree_ != other.degree_)
            return degree_ > other.degree_;
        return exps_ > other.exps_;
    }

private:
    std::vector<int> exps_;
    int degree_ = 0;
};

struct MonomialDescending {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.precedes(b); }
};

/// Unnormalized input term: coefficient times a product of symbol powers.
struct RawTerm {
    Rational coeff;
    std::vector<std::pair<Symbol, int>> powers;
};

class Expr {
public:
    using TermMap = std::map<Monomial, Rational, MonomialDescending>;

    Expr() = default;
    explicit Expr(int n);   // zero of the ring for lattice size n

    static Expr constant(int n, const Rational& c);
    static Expr x(int n, int a);
    static Expr time(int n);
    /// E_j for j in 0..n. The boundary atoms E_0 and E_n are the zero Expr.
    static Expr atom(int n, int j);
    static Expr monomial(int n, const Rational& c, const Monomial& m);
    static Expr normalize(int n, std::span<const RawTerm> raw);

    int n() const { return n_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    Rational constant_term() const;
    /// Leading term in the monomial order; undefined for zero.
    const std::pair<const Monomial, Rational>& leading() const { return *terms_.begin(); }
    bool depends_on(Symbol s) const;

    Expr diff(Symbol s) const;
    /// Antiderivative with respect to a coordinate, exact in the ring.
    Expr antiderivative(Symbol s) const;
    Expr pow(unsigned k) const;
    Expr substitute(Symbol s, const Expr& value) const;

    double eval(const PhaseState& state) const;
    /// Sum of |term| values: a scale for floating-point error bounds.
    double eval_abs(const PhaseState& state) const;

    std::optional<Expr> divide_exact(const Expr& divisor) const;
    std::optional<Expr> sqrt_exact() const;
    /// Largest monomial dividing every term (1 for the zero Expr).
    Monomial monomial_content() const;
    Expr divide_by_monomial(const Monomial& m) const;

    Expr& operator+=(const Expr& o);
    Expr& operator-=(const Expr& o);
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr& operator*=(const Rational& c);

    friend Expr operator+(Expr a, const Expr& b) { return a += b; }
    friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator*(Expr a, const Rational& c) { return a *= c; }
    friend Expr operator*(const Rational& c, Expr a) { return a *= c; }
    friend Expr operator-(Expr a);

    friend bool operator==(const Expr& a, const Expr& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    std::string to_string() const;

    int slot_of(Symbol s) const;

private:
    void add_term(const Monomial& m, const Rational& c);
    void require_same_ring(const Expr& o) const;
    std::vector<double> slot_values(const PhaseState& state) const;

    int n_ = 0;
    TermMap terms_;
};

bool equals(const Expr& a, const Expr& b);
std::string to_string(const Expr& e);
std::string monomial_to_string(int n, const Monomial& m);

} // namespace toda
