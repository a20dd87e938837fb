#include "toda/serialize.hpp"

#include <cctype>

namespace toda {

namespace {

class Parser {
public:
    Parser(int n, std::string_view text) : n_(n), text_(text) {}

    RationalExpr parse() {
        RationalExpr r = sum();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("parse error at offset " + std::to_string(pos_) + " in \"" + std::string(text_) +
                         "\": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool peek_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

    std::string digits() {
        const std::size_t start = pos_;
        while (peek_digit())
            ++pos_;
        if (start == pos_)
            fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    int small_int() {
        const std::string d = digits();
        if (d.size() > 6)
            fail("index or exponent too large");
        return std::stoi(d);
    }

    RationalExpr sum() {
        RationalExpr r = product();
        for (;;) {
            if (accept('+'))
                r = r + product();
            else if (accept('-'))
                r = r - product();
            else
                return r;
        }
    }

    RationalExpr product() {
        RationalExpr r = unary();
        for (;;) {
            if (accept('*'))
                r = r * unary();
            else if (accept('/'))
                r = r / unary();
            else
                return r;
        }
    }

    RationalExpr unary() {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    RationalExpr power() {
        RationalExpr base = primary();
        if (accept('^')) {
            skip_ws();
            return base.pow(static_cast<unsigned>(small_int()));
        }
        return base;
    }

    RationalExpr primary() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RationalExpr r = sum();
            if (!accept(')'))
                fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return RationalExpr::constant(n_, Rational(mpz_class(digits())));
        try {
            if (c == 'x') {
                ++pos_;
                return RationalExpr(Expr::x(n_, small_int()));
            }
            if (c == 't') {
                ++pos_;
                return RationalExpr(Expr::time(n_));
            }
            if (c == 'E') {
                ++pos_;
                const int j = small_int();
                if (j < 1 || j > n_ - 1)
                    fail("atom E" + std::to_string(j) + " outside 1.." + std::to_string(n_ - 1));
                return RationalExpr(Expr::atom(n_, j));
            }
        } catch (const DomainError& e) {
            fail(e.what());
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    int n_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

Monomial parse_monomial(int n, const std::string& text) {
    const Expr e = parse_expr(n, text);
    if (e.size() != 1 || e.leading().second != 1)
        throw ParseError("not a monomial: " + text);
    return e.leading().first;
}

} // namespace

RationalExpr parse_rational(int n, std::string_view text) {
    if (n < 1)
        throw DomainError("lattice size must be positive");
    return Parser(n, text).parse();
}

Expr parse_expr(int n, std::string_view text) {
    RationalExpr r = parse_rational(n, text);
    if (!r.is_polynomial())
        throw ParseError("expected a polynomial, got " + r.to_string());
    return r.num();
}

nlohmann::json expr_to_json(const Expr& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : e.terms())
        terms.push_back({c.get_str(), monomial_to_string(e.n(), m)});
    return {{"n", e.n()}, {"terms", terms}};
}

Expr expr_from_json(const nlohmann::json& j) {
    try {
        const int n = j.at("n").get<int>();
        Expr e(n);
        for (const auto& t : j.at("terms")) {
            Rational c(t.at(0).get<std::string>());
            c.canonicalize();
            e += Expr::monomial(n, c, parse_monomial(n, t.at(1).get<std::string>()));
        }
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed expression JSON: ") + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw ParseError(std::string("malformed coefficient: ") + ex.what());
    }
}

} // namespace toda
