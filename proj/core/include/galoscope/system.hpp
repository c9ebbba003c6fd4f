#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "galoscope/polynomial.hpp"

namespace galoscope {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Square-or-rectangular polynomial system F(x; u) with named variables x and
// parameters u. Columns are laid out variables-first. Immutable; derivatives
// with respect to every column are prepared at construction so evaluation and
// Jacobian assembly are read-only (safe to share across threads).
class PolySystem {
public:
  PolySystem(std::vector<std::string> variables, std::vector<std::string> parameters,
             std::vector<Polynomial> equations);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  const std::vector<Polynomial>& equations() const { return equations_; }
  std::size_t equation_count() const { return equations_.size(); }
  std::size_t variable_count() const { return variables_.size(); }
  std::size_t parameter_count() const { return parameters_.size(); }
  std::size_t column_count() const { return variables_.size() + parameters_.size(); }

  const Polynomial& derivative(std::size_t equation, std::size_t column) const {
    return derivatives_[equation * column_count() + column];
  }

  // point = concatenated (x, u), length column_count()
  Vector eval(const Vector& point) const;
  // Jacobian with respect to the variables only (equation_count x variable_count)
  Matrix jacobian_vars(const Vector& point) const;
  // Derivative vector with respect to one column
  Vector derivative_column(const Vector& point, std::size_t column) const;

  // One shared power table per point: fills values, the variable Jacobian,
  // and (if dcolumn >= 0) the derivative with respect to that column.
  void eval_block(const Vector& point, Vector& values, Matrix& jac_vars, int dcolumn,
                  Vector* dvalues) const;

  // Bind the parameters to fixed values: a parameter-free system in the same
  // variables.
  PolySystem specialized(const std::vector<Complex>& parameter_values) const;

  // Total degree of each equation (in all columns).
  std::vector<int> equation_degrees() const;

private:
  std::vector<std::string> variables_;
  std::vector<std::string> parameters_;
  std::vector<Polynomial> equations_;
  std::vector<Polynomial> derivatives_;  // row-major equation x column
  std::vector<unsigned> max_exponent_;   // per column, over equations and derivatives

  void fill_power_table(const Vector& point, std::vector<std::vector<Complex>>& table) const;
};

}  // namespace galoscope
