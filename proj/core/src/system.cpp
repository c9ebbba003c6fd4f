#include "galoscope/system.hpp"

#include <cmath>
#include <set>

#include "galoscope/errors.hpp"

namespace galoscope {

PolySystem::PolySystem(std::vector<std::string> variables, std::vector<std::string> parameters,
                       std::vector<Polynomial> equations)
    : variables_(std::move(variables)),
      parameters_(std::move(parameters)),
      equations_(std::move(equations)) {
  if (variables_.empty()) throw InputError("poly-core", "a system needs at least one variable");
  if (equations_.empty()) throw InputError("poly-core", "a system needs at least one equation");
  std::set<std::string> seen;
  for (const auto& n : variables_)
    if (!seen.insert(n).second) throw InputError("poly-core", "duplicate name '" + n + "'");
  for (const auto& n : parameters_)
    if (!seen.insert(n).second) throw InputError("poly-core", "duplicate name '" + n + "'");
  for (const auto& eq : equations_)
    if (eq.columns() != column_count())
      throw InputError("poly-core", "equation column count does not match the system");

  derivatives_.reserve(equations_.size() * column_count());
  for (const auto& eq : equations_)
    for (std::size_t c = 0; c < column_count(); ++c) derivatives_.push_back(eq.derivative(c));

  max_exponent_.assign(column_count(), 0);
  for (std::size_t c = 0; c < column_count(); ++c) {
    for (const auto& eq : equations_) max_exponent_[c] = std::max(max_exponent_[c], eq.max_exponent(c));
    // derivatives never exceed the originals, but keep the scan defensive
    for (const auto& d : derivatives_) max_exponent_[c] = std::max(max_exponent_[c], d.max_exponent(c));
  }
}

void PolySystem::fill_power_table(const Vector& point,
                                  std::vector<std::vector<Complex>>& table) const {
  table.resize(column_count());
  for (std::size_t c = 0; c < column_count(); ++c) {
    auto& col = table[c];
    col.resize(max_exponent_[c] + 1);
    col[0] = Complex(1.0, 0.0);
    for (unsigned e = 1; e <= max_exponent_[c]; ++e) col[e] = col[e - 1] * point[c];
  }
}

Vector PolySystem::eval(const Vector& point) const {
  if (static_cast<std::size_t>(point.size()) != column_count())
    throw InputError("poly-core", "evaluation point has wrong dimension");
  std::vector<std::vector<Complex>> table;
  fill_power_table(point, table);
  Vector out(equations_.size());
  for (std::size_t i = 0; i < equations_.size(); ++i)
    out[i] = equations_[i].eval_with_table(table);
  return out;
}

Matrix PolySystem::jacobian_vars(const Vector& point) const {
  if (static_cast<std::size_t>(point.size()) != column_count())
    throw InputError("poly-core", "evaluation point has wrong dimension");
  std::vector<std::vector<Complex>> table;
  fill_power_table(point, table);
  Matrix jac(equations_.size(), variables_.size());
  for (std::size_t i = 0; i < equations_.size(); ++i)
    for (std::size_t j = 0; j < variables_.size(); ++j)
      jac(i, j) = derivative(i, j).eval_with_table(table);
  return jac;
}

Vector PolySystem::derivative_column(const Vector& point, std::size_t column) const {
  if (column >= column_count()) throw InputError("poly-core", "column out of range");
  std::vector<std::vector<Complex>> table;
  fill_power_table(point, table);
  Vector out(equations_.size());
  for (std::size_t i = 0; i < equations_.size(); ++i)
    out[i] = derivative(i, column).eval_with_table(table);
  return out;
}

void PolySystem::eval_block(const Vector& point, Vector& values, Matrix& jac_vars, int dcolumn,
                            Vector* dvalues) const {
  std::vector<std::vector<Complex>> table;
  fill_power_table(point, table);
  values.resize(equations_.size());
  jac_vars.resize(equations_.size(), variables_.size());
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    values[i] = equations_[i].eval_with_table(table);
    for (std::size_t j = 0; j < variables_.size(); ++j)
      jac_vars(i, j) = derivative(i, j).eval_with_table(table);
  }
  if (dcolumn >= 0 && dvalues) {
    dvalues->resize(equations_.size());
    for (std::size_t i = 0; i < equations_.size(); ++i)
      (*dvalues)[i] = derivative(i, static_cast<std::size_t>(dcolumn)).eval_with_table(table);
  }
}

PolySystem PolySystem::specialized(const std::vector<Complex>& parameter_values) const {
  if (parameter_values.size() != parameters_.size())
    throw InputError("poly-core", "wrong number of parameter values");
  std::vector<Polynomial> images;
  images.reserve(column_count());
  for (std::size_t v = 0; v < variables_.size(); ++v)
    images.push_back(Polynomial::variable(variables_.size(), v));
  for (std::size_t p = 0; p < parameters_.size(); ++p)
    images.push_back(Polynomial::constant(variables_.size(), parameter_values[p]));
  std::vector<Polynomial> eqs;
  eqs.reserve(equations_.size());
  for (const auto& eq : equations_) eqs.push_back(eq.substitute(variables_.size(), images));
  return PolySystem(variables_, {}, std::move(eqs));
}

std::vector<int> PolySystem::equation_degrees() const {
  std::vector<int> out;
  out.reserve(equations_.size());
  for (const auto& eq : equations_) out.push_back(eq.total_degree());
  return out;
}

}  // namespace galoscope
