#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galoscope/branch_locus.hpp"
#include "galoscope/permutation.hpp"

namespace galoscope {

struct MonodromyConfig {
  BranchConfig branch;
  double epsilon_factor = 0.4;   // epsilon = factor * min pairwise witness distance
  double margin_factor = 0.5;    // clearance margin = epsilon * this
  double pinned_clamp = 0.43;    // pinned base: epsilon <= clamp * dist(p, witness)
  double base_clearance = 2.33;  // random base accepted at dist > clearance * epsilon
  int base_attempts = 100;       // random base-point draws before giving up
  double match_ambiguity = 10.0; // second-nearest endpoint must be this factor farther
  int anchor_attempts = 100;     // random-loop polygon draws before giving up
};

// The labeled fiber over the base point p; index order is fixed for the run
// and every permutation refers to it.
struct BasePointFiber {
  Complex p;
  std::vector<Vector> fiber;
  int k = 0;
};

// A closed polygon based at p. Diamond loops around a witness point w visit
// w+e, w+ei, w-e, w-ei anti-clockwise, entered from p via w+ei when Im(w-p)
// is negative or zero and via w-ei when positive.
struct LoopPath {
  std::optional<Complex> target;  // encircled witness point; empty for random loops
  std::vector<Complex> polygon;   // first = last = p
  double epsilon = 0.0;
};

struct MonodromyPermutation {
  Permutation sigma;
  std::string source;              // which loop produced it
  double max_match_residual = 0.0; // worst endpoint-match distance
  bool identity = false;           // flagged witness-superset artifact
};

// Everything the branch-point pipeline produces for one line.
struct BranchPointRun {
  BranchWitness witness;
  BasePointFiber base;
  std::vector<MonodromyPermutation> generators; // one per witness point, in witness order
  double epsilon = 0.0;
};

// The diamond size for a witness set: epsilon_factor * min_separation, or
// epsilon_factor * max(1, |w|) when fewer than two points exist.
double loop_epsilon(const BranchWitness& bw, const MonodromyConfig& cfg);

// Random base point p with dist(p, witness) > base_clearance * epsilon and
// all connector segments clear of other witness points by the margin.
// Draws one unit-disc value per attempt.
Complex choose_base_point(const BranchWitness& bw, double epsilon, const MonodromyConfig& cfg,
                          RandomStream& rng);

// Validates a pinned base point and returns the (possibly clamped) epsilon to
// use with it; throws NumericError when no clamped epsilon works.
double validate_pinned_base(Complex p, const BranchWitness& bw, double epsilon,
                            const MonodromyConfig& cfg);

// Closed polygon p -> entry -> four diamond edges anti-clockwise -> entry -> p.
LoopPath build_diamond_loop(Complex w, Complex p, double epsilon);

// Solves the fiber over p (filtered per cfg.branch) and validates it: the
// expected cardinality, pairwise separation, and clean endpoints.
BasePointFiber base_point_fiber(const PolySystem& sys_on_line, Complex p, int expected_k,
                                const MonodromyConfig& cfg, RandomStream& rng);

// Transports the fiber around the loop and matches endpoints to start points:
// sigma[i] = index of the start point nearest to the endpoint of path i.
// Matching must be a bijection with every distance < endpoint_match_tol / 2
// and the second-nearest candidate match_ambiguity times farther. On failure
// retries with halved steps, then (for diamond loops) with halved epsilon.
MonodromyPermutation monodromy_around(const PolySystem& sys_on_line, const BasePointFiber& bpf,
                                      const LoopPath& loop, const MonodromyConfig& cfg);

// The full branch-point pipeline for one line: witness superset, base point
// (pinned if given), fiber, one diamond permutation per witness point.
BranchPointRun branch_point_generators(const PolySystem& sys, const LineEmbedding& line,
                                       const MonodromyConfig& cfg, RandomStream& rng,
                                       std::optional<Complex> pinned_base = std::nullopt);

// A random square loop: out from p to a corner of a randomly placed and
// rotated square whose inscribed circle clears the nearest witness point,
// anti-clockwise around the square, and back. Every segment keeps the margin
// from all witness points; transports and extracts as monodromy_around.
MonodromyPermutation random_loop_permutation(const PolySystem& sys_on_line,
                                             const BasePointFiber& bpf, const BranchWitness& bw,
                                             double epsilon, const MonodromyConfig& cfg,
                                             RandomStream& rng);

// Distance from the point z to the segment [a, b] in the complex plane.
double point_segment_distance(Complex z, Complex a, Complex b);

}  // namespace galoscope
