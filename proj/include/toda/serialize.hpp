#pragma once

// Text and JSON forms of ring elements.
//
// Text grammar (what to_string prints is a subset):
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | 'x'<a> | 't' | 'E'<j> | '(' sum ')'
// so "3/2*x3^2*E1" is the rational 3/2 times x3^2*E1.

#include <string>
#include <string_view>

#include <json.hpp>

#include "toda/expr.hpp"
#include "toda/rational_expr.hpp"

namespace toda {

RationalExpr parse_rational(int n, std::string_view text);
/// ParseError if the text does not reduce to a polynomial.
Expr parse_expr(int n, std::string_view text);

/// {"n": n, "terms": [["p/q", "x3^2*t"], ...]} in monomial order.
nlohmann::json expr_to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j);

} // namespace toda
