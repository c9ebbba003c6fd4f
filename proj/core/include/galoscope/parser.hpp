#pragma once

#include <string>
#include <vector>

#include "galoscope/polynomial.hpp"

namespace galoscope {

// Expression grammar (whitespace free between any tokens):
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := ident | number | 'I' | '(' expr ')' | '-' atom
//   number := decimal float | integer '/' integer   (a rational literal)
// 'I' is the imaginary unit. Identifiers must appear in `names` (variables
// then parameters; the resulting polynomial has one column per name, in that
// order). There is no implicit multiplication and no division except inside a
// rational literal. Errors carry line and column.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names);

// Canonical rendering that parse_polynomial maps back to the same polynomial:
// terms in canonical order, coefficients printed with 17 significant digits.
std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& names);

}  // namespace galoscope
