#include "toda/rational_expr.hpp"

#include <cmath>

namespace toda {

RationalExpr::RationalExpr(Expr num, Expr den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.n() != den_.n())
        throw DomainError("numerator and denominator belong to different lattices");
    if (den_.is_zero())
        throw SingularError("zero denominator");
    canonicalize();
}

void RationalExpr::canonicalize() {
    if (den_.is_one())
        return;
    if (num_.is_zero()) {
        den_ = Expr::constant(num_.n(), 1);
        return;
    }
    // Cancel the monomial content shared by numerator and denominator.
    Monomial gn = num_.monomial_content();
    Monomial gd = den_.monomial_content();
    Monomial common(num_.n());
    bool any = false;
    for (std::size_t i = 0; i < common.slots(); ++i) {
        const int s = static_cast<int>(i);
        const int e = std::min(gn.exponent(s), gd.exponent(s));
        common.set_exponent(s, e);
        any = any || e > 0;
    }
    if (any) {
        num_ = num_.divide_by_monomial(common);
        den_ = den_.divide_by_monomial(common);
    }
    if (!den_.is_constant()) {
        if (auto q = num_.divide_exact(den_)) {
            num_ = std::move(*q);
            den_ = Expr::constant(num_.n(), 1);
            return;
        }
        // Determinants of Lagrange-bracket matrices are perfect squares; cancel
        // the root when it divides the numerator.
        if (auto root = den_.sqrt_exact(); root && !root->is_constant()) {
            if (auto q = num_.divide_exact(*root)) {
                num_ = std::move(*q);
                den_ = std::move(*root);
                if (auto q2 = num_.divide_exact(den_)) {
                    num_ = std::move(*q2);
                    den_ = Expr::constant(num_.n(), 1);
                    return;
                }
            }
        }
    }
    const Rational lead = den_.leading().second;
    if (lead != 1) {
        const Rational inv = 1 / lead;
        num_ *= inv;
        den_ *= inv;
    }
}

const Expr& RationalExpr::as_polynomial() const {
    if (!den_.is_one())
        throw DomainError("expression is not polynomial: " + to_string());
    return num_;
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
    if (a.den_ == b.den_) {
        if (a.den_.is_one())
            return RationalExpr(a.num_ + b.num_);
        return RationalExpr(a.num_ + b.num_, a.den_);
    }
    if (b.den_.is_one())
        return RationalExpr(a.num_ + b.num_ * a.den_, a.den_);
    if (a.den_.is_one())
        return RationalExpr(a.num_ * b.den_ + b.num_, b.den_);
    if (auto q = a.den_.divide_exact(b.den_))
        return RationalExpr(a.num_ + b.num_ * *q, a.den_);
    if (auto q = b.den_.divide_exact(a.den_))
        return RationalExpr(a.num_ * *q + b.num_, b.den_);
    return RationalExpr(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalExpr operator-(const RationalExpr& a) {
    RationalExpr r = a;
    r.num_ = -r.num_;
    return r;
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
    if (a.den_.is_one() && b.den_.is_one())
        return RationalExpr(a.num_ * b.num_);
    return RationalExpr(a.num_ * b.num_, a.den_ * b.den_);
}

RationalExpr operator*(const Rational& c, const RationalExpr& a) {
    RationalExpr r = a;
    r.num_ *= c;
    if (c == 0)
        r.den_ = Expr::constant(a.n(), 1);
    return r;
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) {
    if (b.is_zero())
        throw SingularError("division by the zero expression");
    return RationalExpr(a.num_ * b.den_, a.den_ * b.num_);
}

RationalExpr RationalExpr::diff(Symbol s) const {
    if (den_.is_one())
        return RationalExpr(num_.diff(s));
    return RationalExpr(num_.diff(s) * den_ - num_ * den_.diff(s), den_ * den_);
}

RationalExpr RationalExpr::pow(unsigned k) const {
    if (den_.is_one())
        return RationalExpr(num_.pow(k));
    return RationalExpr(num_.pow(k), den_.pow(k));
}

double RationalExpr::eval(const PhaseState& state) const {
    const double d = den_.eval(state);
    const double scale = den_.eval_abs(state);
    if (std::abs(d) <= 1e-12 * scale || d == 0.0)
        throw SingularError("denominator " + den_.to_string() + " vanishes at the evaluation point");
    return num_.eval(state) / d;
}

std::string RationalExpr::to_string() const {
    if (den_.is_one())
        return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

bool equals(const RationalExpr& a, const RationalExpr& b) {
    if (a.n() != b.n())
        return false;
    if (a.den() == b.den())
        return a.num() == b.num();
    return a.num() * b.den() == b.num() * a.den();
}

std::string to_string(const RationalExpr& e) { return e.to_string(); }

} // namespace toda
