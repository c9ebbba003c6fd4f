#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "galoscope/permutation.hpp"

namespace galoscope {

// Expected values a fixture may declare; each present entry is checked by the
// pipeline and reported as a named certification.
struct ExpectBlock {
  std::optional<int> branch_degree;     // distinct witness points
  std::optional<int> cover_degree;      // generic fiber size
  std::optional<std::string> order;     // group order, decimal string
  std::optional<bool> transitive;
  std::optional<bool> primitive;
  std::optional<std::string> classification;
};

// Parsed problem file. Geometry fields are raw text/numbers; the pipeline
// turns them into polynomial systems.
struct InputDocument {
  std::vector<std::string> variables;
  std::vector<std::string> parameters;
  std::vector<std::string> equations;
  std::vector<std::vector<std::string>> projective_groups;
  ExpectBlock expect;
  bool extended = false;  // long-running fixture, runs only when extended mode is on

  // Optional pins. A fixture may fix the parameter line (base + direction,
  // one entry per parameter), the base point on that line, and a list of
  // fiber solutions to exclude as degenerate (affine systems only).
  std::vector<std::complex<double>> line_base;
  std::vector<std::complex<double>> line_direction;
  bool has_line = false;
  std::optional<std::complex<double>> base_point;
  std::vector<std::vector<std::complex<double>>> exclude_solutions;
  double exclude_tol = 1e-6;
};

InputDocument load_input_document(const std::string& path);

struct PermutationFile {
  int degree = 0;
  std::vector<Permutation> permutations;
};

// Text file, one permutation per line, cycle text "(1,2)(3,4)" or one-line
// text "2 1 4 3"; '#' starts a comment. The degree is the largest point named
// (one-line rows must all have that many entries).
PermutationFile load_permutation_file(const std::string& path);

}  // namespace galoscope
