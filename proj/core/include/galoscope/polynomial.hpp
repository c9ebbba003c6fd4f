#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace galoscope {

using Complex = std::complex<double>;

// One monomial: coeff * prod(column_i ^ exponents_i). Exponents are dense over
// a fixed column layout owned by the enclosing system (variables first, then
// parameters).
struct Term {
  Complex coeff;
  std::vector<unsigned> exponents;
};

// Immutable multivariate polynomial over the complex numbers. Terms are kept
// in a canonical order (exponent vectors, lexicographic descending) with like
// terms merged and zero terms dropped, so structural equality is semantic
// equality. All stored coefficients are finite; operations that would produce
// non-finite values throw.
class Polynomial {
public:
  explicit Polynomial(std::size_t columns) : columns_(columns) {}
  Polynomial(std::size_t columns, std::vector<Term> terms);

  static Polynomial constant(std::size_t columns, Complex value);
  static Polynomial variable(std::size_t columns, std::size_t index);

  std::size_t columns() const { return columns_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Max total degree across terms; -1 for the zero polynomial.
  int total_degree() const;
  // Max exponent of one column; 0 when the column is absent.
  unsigned max_exponent(std::size_t column) const;

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator-() const;
  Polynomial scaled(Complex factor) const;
  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(std::size_t column) const;

  Complex eval(std::span<const Complex> point) const;
  // Evaluate using a precomputed power table: powers[col][e] = point[col]^e.
  Complex eval_with_table(const std::vector<std::vector<Complex>>& powers) const;

  // Ring morphism: replace column i by images[i] (all over a new column set).
  Polynomial substitute(std::size_t new_columns, const std::vector<Polynomial>& images) const;

  bool operator==(const Polynomial& rhs) const {
    return columns_ == rhs.columns_ && terms_ == rhs.terms_;
  }
  bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

private:
  std::size_t columns_;
  std::vector<Term> terms_;
  void normalize();
};

bool operator==(const Term& a, const Term& b);

}  // namespace galoscope
