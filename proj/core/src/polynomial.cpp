#include "galoscope/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "galoscope/errors.hpp"

namespace galoscope {

namespace {
bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }
}  // namespace

bool operator==(const Term& a, const Term& b) {
  return a.coeff == b.coeff && a.exponents == b.exponents;
}

Polynomial::Polynomial(std::size_t columns, std::vector<Term> terms)
    : columns_(columns), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.exponents.size() != columns_)
      throw InputError("poly-core", "term exponent width does not match column count");
  }
  normalize();
}

void Polynomial::normalize() {
  std::map<std::vector<unsigned>, Complex> merged;
  for (auto& t : terms_) merged[t.exponents] += t.coeff;
  terms_.clear();
  // map iterates ascending; emit descending for the canonical order
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    if (it->second == Complex(0.0, 0.0)) continue;
    if (!is_finite(it->second))
      throw NumericError("poly-core", "non-finite coefficient produced");
    terms_.push_back({it->second, it->first});
  }
}

Polynomial Polynomial::constant(std::size_t columns, Complex value) {
  if (value == Complex(0.0, 0.0)) return Polynomial(columns);
  return Polynomial(columns, {Term{value, std::vector<unsigned>(columns, 0)}});
}

Polynomial Polynomial::variable(std::size_t columns, std::size_t index) {
  if (index >= columns) throw InputError("poly-core", "variable index out of range");
  std::vector<unsigned> exps(columns, 0);
  exps[index] = 1;
  return Polynomial(columns, {Term{Complex(1.0, 0.0), std::move(exps)}});
}

int Polynomial::total_degree() const {
  int deg = -1;
  for (const auto& t : terms_) {
    int d = 0;
    for (unsigned e : t.exponents) d += static_cast<int>(e);
    deg = std::max(deg, d);
  }
  return deg;
}

unsigned Polynomial::max_exponent(std::size_t column) const {
  unsigned m = 0;
  for (const auto& t : terms_) m = std::max(m, t.exponents[column]);
  return m;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  if (columns_ != rhs.columns_) throw InputError("poly-core", "column count mismatch");
  std::vector<Term> all = terms_;
  all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
  return Polynomial(columns_, std::move(all));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator-() const { return scaled(Complex(-1.0, 0.0)); }

Polynomial Polynomial::scaled(Complex factor) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coeff *= factor;
  return Polynomial(columns_, std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (columns_ != rhs.columns_) throw InputError("poly-core", "column count mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : rhs.terms_) {
      Term t;
      t.coeff = a.coeff * b.coeff;
      t.exponents.resize(columns_);
      for (std::size_t i = 0; i < columns_; ++i)
        t.exponents[i] = a.exponents[i] + b.exponents[i];
      out.push_back(std::move(t));
    }
  }
  return Polynomial(columns_, std::move(out));
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial acc = Polynomial::constant(columns_, Complex(1.0, 0.0));
  Polynomial base = *this;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return acc;
}

Polynomial Polynomial::derivative(std::size_t column) const {
  if (column >= columns_) throw InputError("poly-core", "derivative column out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponents[column] == 0) continue;
    Term d = t;
    d.coeff *= static_cast<double>(t.exponents[column]);
    d.exponents[column] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial(columns_, std::move(out));
}

Complex Polynomial::eval(std::span<const Complex> point) const {
  if (point.size() != columns_)
    throw InputError("poly-core", "evaluation point has wrong dimension");
  Complex acc(0.0, 0.0);
  for (const auto& t : terms_) {
    Complex v = t.coeff;
    for (std::size_t i = 0; i < columns_; ++i) {
      unsigned e = t.exponents[i];
      if (e == 0) continue;
      Complex p = point[i];
      // small exponents dominate; repeated multiply beats pow()
      for (unsigned j = 0; j < e; ++j) v *= p;
    }
    acc += v;
  }
  if (!is_finite(acc)) throw NumericError("poly-core", "non-finite value in evaluation");
  return acc;
}

Complex Polynomial::eval_with_table(const std::vector<std::vector<Complex>>& powers) const {
  Complex acc(0.0, 0.0);
  for (const auto& t : terms_) {
    Complex v = t.coeff;
    for (std::size_t i = 0; i < columns_; ++i) {
      unsigned e = t.exponents[i];
      if (e) v *= powers[i][e];
    }
    acc += v;
  }
  return acc;
}

Polynomial Polynomial::substitute(std::size_t new_columns,
                                  const std::vector<Polynomial>& images) const {
  if (images.size() != columns_)
    throw InputError("poly-core", "substitute needs one image per column");
  for (const auto& img : images)
    if (img.columns() != new_columns)
      throw InputError("poly-core", "substitute image has wrong column count");
  Polynomial acc(new_columns);
  for (const auto& t : terms_) {
    Polynomial prod = Polynomial::constant(new_columns, t.coeff);
    for (std::size_t i = 0; i < columns_; ++i) {
      if (t.exponents[i] == 0) continue;
      prod = prod * images[i].pow(t.exponents[i]);
    }
    acc = acc + prod;
  }
  return acc;
}

}  // namespace galoscope
