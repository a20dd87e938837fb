#pragma once

#include <string>

#include "toda/expr.hpp"

namespace toda {

/// Element of the fraction field of the Expr ring.
///
/// Normal form: the denominator is nonzero with leading coefficient +1, common
/// monomial factors are cancelled, and the numerator is reduced whenever the
/// denominator (or its exact square root) divides it. No polynomial gcd is
/// attempted, so two equal fractions may still differ in representation;
/// use equals(), which cross-multiplies.
class RationalExpr {
public:
    RationalExpr() = default;
    explicit RationalExpr(int n) : num_(n), den_(Expr::constant(n, 1)) {}
    RationalExpr(Expr num) : num_(std::move(num)), den_(Expr::constant(num_.n(), 1)) {}   // NOLINT implicit
    RationalExpr(Expr num, Expr den);

    static RationalExpr constant(int n, const Rational& c) { return RationalExpr(Expr::constant(n, c)); }

    int n() const { return num_.n(); }
    const Expr& num() const { return num_; }
    const Expr& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    /// The numerator when the denominator is 1; DomainError otherwise.
    const Expr& as_polynomial() const;

    RationalExpr diff(Symbol s) const;
    RationalExpr pow(unsigned k) const;

    /// Throws SingularError when the denominator is numerically zero relative
    /// to the magnitude of its terms.
    double eval(const PhaseState& state) const;

    RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
    RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
    RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }

    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator*(const Rational& c, const RationalExpr& a);
    friend RationalExpr operator*(const RationalExpr& a, const Rational& c) { return c * a; }
    friend RationalExpr operator-(const RationalExpr& a);

    std::string to_string() const;

private:
    void canonicalize();

    Expr num_;
    Expr den_;
};

bool equals(const RationalExpr& a, const RationalExpr& b);
std::string to_string(const RationalExpr& e);

} // namespace toda
