#pragma once

#include <string>
#include <vector>

#include "galoscope/rng.hpp"
#include "galoscope/system.hpp"

namespace galoscope {

// Appends underscores to `wanted` until it collides with nothing in `taken`.
std::string fresh_name(std::string wanted, const std::vector<std::string>& taken);

// Affine-linear embedding of a line into parameter space: u = base + t * direction.
struct LineEmbedding {
  std::vector<Complex> base;
  std::vector<Complex> direction;

  static LineEmbedding identity() { return {{Complex(0, 0)}, {Complex(1, 0)}}; }
  static LineEmbedding random(std::size_t parameter_count, RandomStream& rng, double scale = 1.0);
  bool is_identity() const;
};

// Substitutes u = base + t*direction: the result has the same variables and a
// single parameter, the line coordinate. With the identity embedding on a
// one-parameter system the result is the input (same parameter name);
// otherwise the parameter is named "t" (underscored until collision-free).
PolySystem restrict_to_line(const PolySystem& sys, const LineEmbedding& line);

// Affine chart for homogeneous variable groups: each group of g projective
// variables is replaced by g-1 affine coordinates via x_i = c_i0 + sum_j c_ij z_j.
struct AffineChart {
  struct GroupChart {
    std::vector<std::size_t> member_columns;       // variable indices in the source system
    std::vector<std::vector<Complex>> coefficients;  // per member: [offset, z_1 .. z_{g-1}]
  };
  std::vector<GroupChart> groups;
};

// Random chart coefficients for the named groups (generic: nonsingular with
// probability one). Group names must be variables of sys.
AffineChart random_affine_chart(const PolySystem& sys,
                                const std::vector<std::vector<std::string>>& group_names,
                                RandomStream& rng);

// Substitutes the chart. Ungrouped variables keep their names; each group is
// replaced, at the position of its first member, by fresh chart coordinates
// (z1, z2, ... per group, renamed to avoid collisions). Parameters pass through.
PolySystem apply_chart(const PolySystem& sys, const AffineChart& chart);

}  // namespace galoscope
