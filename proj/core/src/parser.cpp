#include "galoscope/parser.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cmath>

#include "galoscope/errors.hpp"

namespace galoscope {

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw InputError("parser", "line " + std::to_string(line) + " col " +
                                   std::to_string(col) + ": " + message);
  }

  void advance() {
    if (pos < text.size()) {
      if (text[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) advance();
  }

  bool at_end() {
    skip_ws();
    return pos == text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  // digits [. digits] [e|E [+|-] digits], or digits '/' digits (rational)
  double number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
    bool integral = true;
    if (pos < text.size() && text[pos] == '.') {
      integral = false;
      advance();
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
    }
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      std::size_t mark = pos;
      advance();
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) advance();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        integral = false;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
      } else {
        // not an exponent after all (e.g. a following identifier); rewind
        while (pos > mark) { --pos; --col; }
      }
    }
    std::string lit = text.substr(start, pos - start);
    bool has_digit = false;
    for (char ch : lit)
      if (std::isdigit(static_cast<unsigned char>(ch))) has_digit = true;
    if (!has_digit) fail("expected a number");
    // rational literal p/q (integer numerator only)
    if (integral && pos < text.size() && text[pos] == '/') {
      advance();
      skip_ws();
      std::size_t dstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
      std::string den = text.substr(dstart, pos - dstart);
      if (den.empty()) fail("expected an integer denominator after '/'");
      double q = std::strtod(den.c_str(), nullptr);
      if (q == 0.0) fail("rational literal with zero denominator");
      double v = std::strtod(lit.c_str(), nullptr) / q;
      if (!std::isfinite(v)) fail("rational literal overflows");
      return v;
    }
    double v = std::strtod(lit.c_str(), nullptr);
    if (!std::isfinite(v)) fail("numeric literal overflows");
    return v;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      advance();
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      advance();
    return text.substr(start, pos - start);
  }
};

struct Parser {
  Lexer lex;
  const std::vector<std::string>& names;

  Parser(const std::string& text, const std::vector<std::string>& n) : lex(text), names(n) {}

  std::size_t columns() const { return names.size(); }

  Polynomial expr() {
    bool negate = false;
    // leading sign of the first term
    if (lex.peek() == '-') {
      lex.advance();
      negate = true;
    } else if (lex.peek() == '+') {
      lex.advance();
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      char c = lex.peek();
      if (c == '+') {
        lex.advance();
        acc = acc + term();
      } else if (c == '-') {
        lex.advance();
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (lex.peek() == '*') {
      lex.advance();
      acc = acc * factor();
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (lex.peek() == '^') {
      lex.advance();
      lex.skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(lex.peek()))) lex.fail("expected a non-negative integer exponent");
      std::size_t start = lex.pos;
      while (lex.pos < lex.text.size() &&
             std::isdigit(static_cast<unsigned char>(lex.text[lex.pos])))
        lex.advance();
      unsigned long e = std::strtoul(lex.text.substr(start, lex.pos - start).c_str(), nullptr, 10);
      if (e > 500) lex.fail("exponent too large (limit 500)");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial atom() {
    char c = lex.peek();
    if (c == '(') {
      lex.advance();
      Polynomial inner = expr();
      lex.expect(')');
      return inner;
    }
    if (c == '-') {
      lex.advance();
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return Polynomial::constant(columns(), Complex(lex.number(), 0.0));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      int at_line = lex.line, at_col = lex.col;
      std::string name = lex.ident();
      if (name == "I") return Polynomial::constant(columns(), Complex(0.0, 1.0));
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return Polynomial::variable(columns(), i);
      throw InputError("parser", "line " + std::to_string(at_line) + " col " +
                                     std::to_string(at_col) + ": unknown identifier '" + name + "'");
    }
    lex.fail(c == '\0' ? "unexpected end of expression" : std::string("unexpected character '") + c + "'");
  }
};

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

// Renders |coeff| (sign handled by the caller) times the monomial.
void append_term(std::string& out, Complex coeff, const std::vector<unsigned>& exps,
                 const std::vector<std::string>& names) {
  std::string monomial;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!monomial.empty()) monomial += '*';
    monomial += names[i];
    if (exps[i] > 1) {
      monomial += '^';
      monomial += std::to_string(exps[i]);
    }
  }
  std::string cs;
  if (coeff.imag() == 0.0) {
    if (coeff.real() == 1.0 && !monomial.empty()) {
      out += monomial;
      return;
    }
    append_double(cs, coeff.real());
  } else if (coeff.real() == 0.0) {
    if (coeff.imag() == 1.0) {
      cs = "I";
    } else {
      append_double(cs, coeff.imag());
      cs += "*I";
    }
  } else {
    cs = "(";
    append_double(cs, coeff.real());
    cs += std::signbit(coeff.imag()) ? " - " : " + ";
    append_double(cs, std::abs(coeff.imag()));
    cs += "*I)";
  }
  out += cs;
  if (!monomial.empty()) {
    out += '*';
    out += monomial;
  }
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw InputError("parser", "duplicate name '" + names[i] + "'");
  for (const auto& n : names) {
    if (n == "I") throw InputError("parser", "'I' is reserved for the imaginary unit");
    if (n.empty() || (!std::isalpha(static_cast<unsigned char>(n[0])) && n[0] != '_'))
      throw InputError("parser", "invalid name '" + n + "'");
    for (char c : n)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw InputError("parser", "invalid name '" + n + "'");
  }
  Parser parser(text, names);
  Polynomial out = parser.expr();
  if (!parser.lex.at_end()) parser.lex.fail("trailing input after expression");
  return out;
}

std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
  if (names.size() != p.columns())
    throw InputError("parser", "name list does not match polynomial columns");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Complex c = t.coeff;
    // pull a leading minus out of pure-real and pure-imaginary coefficients
    bool negative = false;
    if (c.imag() == 0.0 && c.real() < 0.0) {
      negative = true;
      c = -c;
    } else if (c.real() == 0.0 && c.imag() < 0.0) {
      negative = true;
      c = -c;
    }
    if (first) {
      if (negative) out += '-';
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    append_term(out, c, t.exponents, names);
  }
  return out;
}

}  // namespace galoscope
