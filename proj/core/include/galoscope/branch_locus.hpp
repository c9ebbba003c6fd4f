#pragma once

#include <vector>

#include "galoscope/charts.hpp"
#include "galoscope/rng.hpp"
#include "galoscope/solver.hpp"
#include "galoscope/system.hpp"

namespace galoscope {

struct BranchConfig {
  SolverConfig solver;
  double cluster_tol = 1e-6;      // t-values closer than this form one witness point
  double ambiguity_factor = 10.0; // witness points closer than factor*cluster_tol are ambiguous
  double residual_tol = 1e-8;     // max |F(x; t)|_inf for a critical point to count
  int fiber_probe_count = 2;      // random fibers solved to confirm the cover degree
  double probe_scale = 1.0;       // probe t drawn from a disc of this radius
  double probe_clearance = 0.05;  // min distance from a probe t to any witness point
  int probe_attempts = 20;        // draws per probe before giving up
  // Fiber solutions (and critical points) whose x-part matches one of these
  // within exclude_tol are ignored: they are declared degenerate points of the
  // family (present in every fiber) and carry no monodromy information.
  std::vector<Vector> exclude_x;
  double exclude_tol = 1e-6;
};

// The critical-point system of a cover restricted to a line: solutions are
// the parameter values (with fiber data) where the fiber degenerates.
struct CriticalSystem {
  // Variables (x [, v]), single parameter t. For a one-equation, one-variable
  // restriction this is {g, dg/dx} with no v-block; otherwise F together with
  // J_x F * v = 0 and the random normalization b*v = 1 (random complex b), and
  // random linear combinations squaring the system up when it is overdetermined.
  PolySystem augmented;
  PolySystem restricted;   // the line-restricted input F(x; t), for residual checks
  std::size_t x_count = 0; // leading variables of `augmented` are the fiber variables
  std::size_t v_count = 0; // 0 when the hypersurface shortcut applies

  // The same equations as a square parameter-free system in (x [, v], t),
  // with t as the last variable; what the solver consumes.
  PolySystem solver_view() const;
};

struct WitnessPoint {
  Complex t;
  int multiplicity = 1; // distinct critical points over this t
};

// Witness superset of (branch locus) ∩ (line): the t-values over which the
// fiber degenerates, clustered with multiplicities.
struct BranchWitness {
  std::vector<WitnessPoint> points; // sorted lexicographically by quantized (re, im)
  int critical_count = 0;           // distinct critical points found
  int discarded = 0;                // extraneous points removed by the residual filter
  long critical_diverged = 0;       // critical-system paths that ran to infinity
  double min_separation = 0.0;      // min pairwise distance among points (inf when < 2)
  LineEmbedding line;
  int cover_degree = 0;             // fiber cardinality over random non-branch t
};

// Draws from rng: x_count unit-disc values for b (general case only), plus
// square-up coefficients when the augmented system is overdetermined.
CriticalSystem build_critical_system(const PolySystem& sys, const LineEmbedding& line,
                                     RandomStream& rng);

// Runs build_critical_system, solves it, filters extraneous and excluded
// points, projects to t, clusters, and confirms the cover degree over random
// non-branch parameter values. Throws NumericError on clustering ambiguity
// (two witness points closer than ambiguity_factor*cluster_tol, a sign of a
// nongeneric line) and on inconsistent fiber cardinalities.
BranchWitness compute_branch_witness(const PolySystem& sys, const LineEmbedding& line,
                                     const BranchConfig& cfg, RandomStream& rng);

// True iff the witness has exactly `expected` distinct points. With the
// expected degree of the branch locus this certifies the witness is a full
// witness set rather than a proper subset (and flags nongeneric lines, whose
// clusters merge and come up short).
bool witness_degree_check(const BranchWitness& bw, int expected);

// Solves the fiber of sys (one parameter) over t and removes solutions whose
// point matches cfg.exclude_x within cfg.exclude_tol. Draws one gamma from rng.
SolveSummary solve_fiber_filtered(const PolySystem& sys, Complex t, const BranchConfig& cfg,
                                  RandomStream& rng);

}  // namespace galoscope
