#pragma once

#include <vector>

#include "galoscope/rng.hpp"
#include "galoscope/system.hpp"
#include "galoscope/tracker.hpp"

namespace galoscope {

struct SolverConfig {
  TrackerConfig tracker;
  double dedup_tol = 1e-6;      // endpoints closer than this merge into one solution
  double suspect_rcond = 1e-10; // endpoint Jacobian rcond below this flags the solution
  double infinity_norm = 1e6;   // failed endpoints beyond this count as paths to infinity
  long max_paths = 1L << 20;    // refuse start systems with more paths than this
};

struct Solution {
  Vector point;
  double rcond = 0.0;
  double residual = 0.0;
  int multiplicity = 1;          // number of paths that landed here
  bool suspect_singular = false; // near-singular Jacobian at the endpoint
};

struct SolveSummary {
  // Sorted lexicographically by (re, im) per coordinate, quantized at
  // dedup_tol/10 so that sub-tolerance numerical noise cannot reorder runs.
  std::vector<Solution> solutions;
  long total_paths = 0;
  long diverged = 0; // paths that ran to infinity
  long failed = 0;   // paths lost to step underflow or singular linear algebra
};

// All isolated solutions of a square, parameter-free polynomial system by a
// total-degree homotopy: start system x_i^{d_i} = 1, random unit gamma.
// Draws from rng: one unit-circle gamma.
SolveSummary solve_square(const PolySystem& sys, RandomStream& rng, const SolverConfig& cfg);

// Convenience: bind the single parameter of sys to t, then solve_square.
SolveSummary solve_fiber(const PolySystem& sys, Complex t, RandomStream& rng,
                         const SolverConfig& cfg);

// Replaces an overdetermined system (more equations than variables) by
// variable_count random complex linear combinations of its equations. The
// solutions of the input survive; extra spurious solutions may appear and are
// the caller's to filter. Draws variable_count * equation_count unit-disc
// coefficients, row-major.
PolySystem square_up(const PolySystem& sys, RandomStream& rng);

// Lexicographic order on coordinate (re, im) pairs. With quantum > 0 the
// parts are rounded to multiples of the quantum before comparison, which keeps
// the order a strict weak ordering while ignoring numerical noise.
bool lex_less(const Vector& a, const Vector& b, double quantum = 0.0);

}  // namespace galoscope
