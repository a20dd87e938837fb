#include "toda/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace toda {

void Monomial::set_exponent(int slot, int e) {
    if (e < 0)
        throw DomainError("negative exponent");
    auto& cur = exps_[static_cast<std::size_t>(slot)];
    degree_ += e - cur;
    cur = e;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i])
            return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        r.exps_[i] += other.exps_[i];
    r.degree_ = degree_ + other.degree_;
    return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        r.exps_[i] -= other.exps_[i];
    r.degree_ = degree_ - other.degree_;
    return r;
}

Expr::Expr(int n) : n_(n) {
    if (n < 1)
        throw DomainError("lattice size must be positive");
}

int Expr::slot_of(Symbol s) const {
    switch (s.kind) {
    case SymbolKind::Coordinate:
        if (s.index < 1 || s.index > 2 * n_)
            throw DomainError("coordinate x" + std::to_string(s.index) + " outside 1.." + std::to_string(2 * n_));
        return s.index - 1;
    case SymbolKind::Time:
        return 2 * n_;
    case SymbolKind::Atom:
        if (s.index < 1 || s.index > n_ - 1)
            throw DomainError("atom E" + std::to_string(s.index) + " outside 1.." + std::to_string(n_ - 1));
        return 2 * n_ + s.index;
    }
    throw DomainError("unknown symbol kind");
}

void Expr::require_same_ring(const Expr& o) const {
    if (n_ != o.n_)
        throw DomainError("operands belong to lattices of different size (" + std::to_string(n_) + " vs " +
                          std::to_string(o.n_) + ")");
}

void Expr::add_term(const Monomial& m, const Rational& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Expr Expr::constant(int n, const Rational& c) {
    Expr e(n);
    e.add_term(Monomial(n), c);
    return e;
}

Expr Expr::monomial(int n, const Rational& c, const Monomial& m) {
    Expr e(n);
    if (m.slots() != static_cast<std::size_t>(Monomial::slot_count(n)))
        throw DomainError("monomial does not match lattice size");
    e.add_term(m, c);
    return e;
}

Expr Expr::x(int n, int a) {
    Expr e(n);
    Monomial m(n);
    m.set_exponent(e.slot_of(Symbol::x(a)), 1);
    e.add_term(m, 1);
    return e;
}

Expr Expr::time(int n) {
    Expr e(n);
    Monomial m(n);
    m.set_exponent(e.slot_of(Symbol::time()), 1);
    e.add_term(m, 1);
    return e;
}

Expr Expr::atom(int n, int j) {
    Expr e(n);
    if (j == 0 || j == n)
        return e;
    Monomial m(n);
    m.set_exponent(e.slot_of(Symbol::atom(j)), 1);
    e.add_term(m, 1);
    return e;
}

Expr Expr::normalize(int n, std::span<const RawTerm> raw) {
    Expr e(n);
    for (const auto& t : raw) {
        Monomial m(n);
        for (const auto& [sym, p] : t.powers) {
            const int slot = e.slot_of(sym);
            m.set_exponent(slot, m.exponent(slot) + p);
        }
        e.add_term(m, t.coeff);
    }
    return e;
}

bool Expr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Expr::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second == 1;
}

Rational Expr::constant_term() const {
    auto it = terms_.find(Monomial(n_));
    return it == terms_.end() ? Rational(0) : it->second;
}

bool Expr::depends_on(Symbol s) const {
    if (s.kind == SymbolKind::Coordinate && s.index >= 1 && s.index <= n_) {
        // A position also enters through the atoms E_{a-1} and E_a.
        for (const auto& [m, c] : terms_) {
            if (m.exponent(s.index - 1) > 0)
                return true;
            if (s.index <= n_ - 1 && m.exponent(2 * n_ + s.index) > 0)
                return true;
            if (s.index >= 2 && m.exponent(2 * n_ + s.index - 1) > 0)
                return true;
        }
        return false;
    }
    const int slot = slot_of(s);
    return std::any_of(terms_.begin(), terms_.end(), [&](const auto& kv) { return kv.first.exponent(slot) > 0; });
}

Expr& Expr::operator+=(const Expr& o) {
    require_same_ring(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Expr& Expr::operator-=(const Expr& o) {
    require_same_ring(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Expr& Expr::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& kv : terms_)
        kv.second *= c;
    return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
    a.require_same_ring(b);
    Expr r(a.n_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

Expr operator-(Expr a) {
    for (auto& kv : a.terms_)
        kv.second = -kv.second;
    return a;
}

Expr Expr::pow(unsigned k) const {
    Expr r = constant(n_, 1);
    Expr base = *this;
    while (k > 0) {
        if (k & 1u)
            r = r * base;
        k >>= 1u;
        if (k > 0)
            base = base * base;
    }
    return r;
}

Expr Expr::diff(Symbol s) const {
    if (s.kind == SymbolKind::Atom)
        throw DomainError("cannot differentiate with respect to an atom");
    const int slot = slot_of(s);
    Expr r(n_);
    // Position x^a appears in E_a with +1 and in E_{a-1} with -1.
    int atom_plus = -1, atom_minus = -1;
    if (s.kind == SymbolKind::Coordinate && s.index <= n_) {
        if (s.index <= n_ - 1)
            atom_plus = 2 * n_ + s.index;
        if (s.index >= 2)
            atom_minus = 2 * n_ + s.index - 1;
    }
    for (const auto& [m, c] : terms_) {
        const int p = m.exponent(slot);
        if (p > 0) {
            Monomial dm = m;
            dm.set_exponent(slot, p - 1);
            r.add_term(dm, c * p);
        }
        int kappa = 0;
        if (atom_plus >= 0)
            kappa += m.exponent(atom_plus);
        if (atom_minus >= 0)
            kappa -= m.exponent(atom_minus);
        if (kappa != 0)
            r.add_term(m, c * kappa);
    }
    return r;
}

Expr Expr::antiderivative(Symbol s) const {
    if (s.kind != SymbolKind::Coordinate)
        throw DomainError("antiderivative is only defined along coordinates");
    const int slot = slot_of(s);
    int atom_plus = -1, atom_minus = -1;
    if (s.index <= n_) {
        if (s.index <= n_ - 1)
            atom_plus = 2 * n_ + s.index;
        if (s.index >= 2)
            atom_minus = 2 * n_ + s.index - 1;
    }
    Expr r(n_);
    for (const auto& [m, c] : terms_) {
        const int p = m.exponent(slot);
        int kappa = 0;
        if (atom_plus >= 0)
            kappa += m.exponent(atom_plus);
        if (atom_minus >= 0)
            kappa -= m.exponent(atom_minus);
        if (kappa == 0) {
            Monomial im = m;
            im.set_exponent(slot, p + 1);
            r.add_term(im, c / (p + 1));
            continue;
        }
        // int x^p e^{kx} dx = e^{kx} sum_i (-1)^i p!/(p-i)! x^(p-i) / k^(i+1)
        Rational factor = c / kappa;
        for (int i = 0; i <= p; ++i) {
            Monomial im = m;
            im.set_exponent(slot, p - i);
            r.add_term(im, factor);
            factor *= ratio(-(p - i), kappa);
        }
    }
    return r;
}

Expr Expr::substitute(Symbol s, const Expr& value) const {
    require_same_ring(value);
    if (s.kind == SymbolKind::Coordinate && s.index <= n_ && n_ > 1)
        throw DomainError("substituting a position would orphan its atoms");
    const int slot = slot_of(s);
    Expr r(n_);
    std::vector<Expr> powers{constant(n_, 1)};
    for (const auto& [m, c] : terms_) {
        const int p = m.exponent(slot);
        while (static_cast<int>(powers.size()) <= p)
            powers.push_back(powers.back() * value);
        Monomial rest = m;
        rest.set_exponent(slot, 0);
        r += monomial(n_, c, rest) * powers[static_cast<std::size_t>(p)];
    }
    return r;
}

std::vector<double> Expr::slot_values(const PhaseState& state) const {
    if (state.n() != n_)
        throw DomainError("state has " + std::to_string(state.x.size()) + " coordinates, expected " +
                          std::to_string(2 * n_));
    std::vector<double> v(static_cast<std::size_t>(Monomial::slot_count(n_)));
    for (int a = 0; a < 2 * n_; ++a)
        v[static_cast<std::size_t>(a)] = state.x[static_cast<std::size_t>(a)];
    v[static_cast<std::size_t>(2 * n_)] = state.time;
    for (int j = 1; j < n_; ++j)
        v[static_cast<std::size_t>(2 * n_ + j)] =
            std::exp(state.x[static_cast<std::size_t>(j - 1)] - state.x[static_cast<std::size_t>(j)]);
    return v;
}

namespace {

double monomial_value(const Monomial& m, const std::vector<double>& v) {
    double r = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        int e = m.exponent(static_cast<int>(i));
        double b = v[i];
        while (e-- > 0)
            r *= b;
    }
    return r;
}

} // namespace

double Expr::eval(const PhaseState& state) const {
    const auto v = slot_values(state);
    double s = 0.0;
    for (const auto& [m, c] : terms_)
        s += c.get_d() * monomial_value(m, v);
    return s;
}

double Expr::eval_abs(const PhaseState& state) const {
    const auto v = slot_values(state);
    double s = 0.0;
    for (const auto& [m, c] : terms_)
        s += std::abs(c.get_d() * monomial_value(m, v));
    return s;
}

std::optional<Expr> Expr::divide_exact(const Expr& divisor) const {
    require_same_ring(divisor);
    if (divisor.is_zero())
        throw SingularError("division by the zero expression");
    Expr q(n_);
    Expr rem = *this;
    const auto& [lm, lc] = divisor.leading();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        if (!lm.divides(rm))
            return std::nullopt;
        Expr step = monomial(n_, rc / lc, rm / lm);
        q += step;
        rem -= step * divisor;
    }
    return q;
}

std::optional<Expr> Expr::sqrt_exact() const {
    if (is_zero())
        return *this;
    const auto& [lm, lc] = leading();
    if (lc < 0 || !mpz_perfect_square_p(lc.get_num_mpz_t()) || !mpz_perfect_square_p(lc.get_den_mpz_t()))
        return std::nullopt;
    Monomial root_m(n_);
    for (std::size_t i = 0; i < lm.slots(); ++i) {
        const int e = lm.exponent(static_cast<int>(i));
        if (e % 2 != 0)
            return std::nullopt;
        root_m.set_exponent(static_cast<int>(i), e / 2);
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), lc.get_num_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), lc.get_den_mpz_t());
    const Rational root_c(rn, rd);

    Expr root = monomial(n_, root_c, root_m);
    const Rational twice_lead = 2 * root_c;
    for (std::size_t guard = 0; guard <= terms_.size() + 1; ++guard) {
        Expr rem = *this - root * root;
        if (rem.is_zero())
            return root;
        const auto& [rm, rc] = rem.leading();
        if (!root_m.divides(rm))
            return std::nullopt;
        Monomial next = rm / root_m;
        if (!root.terms_.empty() && !std::prev(root.terms_.end())->first.precedes(next))
            return std::nullopt;
        root.add_term(next, rc / twice_lead);
    }
    return std::nullopt;
}

Monomial Expr::monomial_content() const {
    Monomial g(n_);
    if (terms_.empty())
        return g;
    g = terms_.begin()->first;
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < g.slots(); ++i) {
            const int s = static_cast<int>(i);
            if (m.exponent(s) < g.exponent(s))
                g.set_exponent(s, m.exponent(s));
        }
    return g;
}

Expr Expr::divide_by_monomial(const Monomial& m) const {
    Expr r(n_);
    for (const auto& [tm, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), tm / m, c);
    return r;
}

std::string monomial_to_string(int n, const Monomial& m) {
    if (m.is_one())
        return "1";
    std::string out;
    auto put = [&](const std::string& name, int e) {
        if (e == 0)
            return;
        if (!out.empty())
            out += '*';
        out += name;
        if (e > 1)
            out += '^' + std::to_string(e);
    };
    for (int a = 1; a <= 2 * n; ++a)
        put("x" + std::to_string(a), m.exponent(a - 1));
    put("t", m.exponent(2 * n));
    for (int j = 1; j < n; ++j)
        put("E" + std::to_string(j), m.exponent(2 * n + j));
    return out;
}

std::string Expr::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = abs(c);
        if (first) {
            if (c < 0)
                os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            os << mag.get_str();
        } else {
            if (mag != 1)
                os << mag.get_str() << '*';
            os << monomial_to_string(n_, m);
        }
    }
    return os.str();
}

bool equals(const Expr& a, const Expr& b) { return a == b; }

std::string to_string(const Expr& e) { return e.to_string(); }

} // namespace toda
