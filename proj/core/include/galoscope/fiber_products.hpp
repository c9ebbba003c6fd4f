#pragma once

#include <vector>

#include "galoscope/monodromy.hpp"
#include "galoscope/permutation.hpp"

namespace galoscope {

struct FiberConfig {
  MonodromyConfig monodromy;
  double trace_tol = 1e-6;      // relative agreement of the two trace slopes
  double trace_offset = 0.1;    // probe offset as a fraction of the witness scale
  int stable_samples = 5;       // consecutive non-refining random loops before stopping
  int direction_attempts = 100; // draws of the trace direction before giving up
  long max_tuples = 100000;     // k^s feasibility guard
};

// The s-fold fiber power of a one-parameter cover: s renamed copies of the
// cover equations sharing the parameter. Its fiber over generic t is the
// s-fold Cartesian power of the cover fiber; tuples with two equal
// coordinates form the big diagonal, excluded from the decomposition.
struct FiberPowerSystem {
  int s = 0;
  PolySystem system;          // s * (cover equations), variables x_1..x_s blocks
  PolySystem cover;           // the underlying one-parameter cover
  double diagonal_tol = 1e-6; // two coordinates this close count as diagonal
};

// A monodromy-stable partition of the distinct-index tuples of the fiber
// power, with per-part trace certification.
struct WitnessDecomposition {
  Complex base_t;
  int k = 0; // cover degree
  int s = 0;
  std::vector<std::vector<int>> tuples; // all distinct s-tuples of {0..k-1}, lexicographic
  std::vector<std::vector<int>> parts;  // tuple indices; each sorted; parts by smallest member
  std::vector<bool> certified;          // per part: trace test passed
  std::vector<int> degrees;             // per part: tuple count
  long diagonal_count = 0;              // k^s minus the distinct tuples
  int sampled_loops = 0;                // random loops drawn during the closure
  // Parameter values where a sheet of the cover escapes to infinity (roots of
  // the leading coefficient). Certification multiplies the sums by
  // prod(t - pole) so that unions of curve components stay polynomial even
  // when the presentation is not proper over the line.
  std::vector<Complex> trace_poles;
  bool all_certified = false;
};

// Builds the literal product system (copies named by suffixing the block
// index, collision-dodged). The cover must be square with one parameter.
// Throws InputError when s < 1 or the Bezout bound of the tuple fiber
// exceeds max_tuples.
FiberPowerSystem build_fiber_power(const PolySystem& sys_on_line, int s,
                                   double diagonal_tol = 1e-6, long max_tuples = 100000);

// Certifies that `part` (a set of distinct-index tuples over the base fiber)
// is a union of irreducible components of the fiber power: the coordinate-wise
// sum of its tuple points must be affine-linear in the parameter, checked at
// the three collinear values t0 (= the base point), t1, t2. Tracks the cover
// fiber from t0 to t1 and t2 and induces the tuple motion through the indices.
bool trace_test(const FiberPowerSystem& fps, const BasePointFiber& bpf,
                const std::vector<std::vector<int>>& part, Complex t0, Complex t1, Complex t2,
                const FiberConfig& cfg);

// Partitions the distinct tuples into monodromy orbits: closes under the
// branch-point generators, then keeps sampling random loops until the
// partition survives stable_samples consecutive ones unchanged; finally runs
// the trace test on every part, greedily merging failing parts. A part that
// stays uncertified is reported with its flag down, not thrown.
WitnessDecomposition decompose_by_monodromy(const FiberPowerSystem& fps,
                                            const BranchPointRun& run, const FiberConfig& cfg,
                                            RandomStream& rng);

// The Galois group read off the (k-1)-st fiber power: the component of the
// reference tuple (1,..,k-1) lists exactly the sheet orderings reachable by
// monodromy, i.e. the group elements themselves.
struct FiberPowerGalois {
  BranchPointRun run;
  WitnessDecomposition decomposition;
  std::vector<Permutation> elements; // the group, one permutation per reference-part tuple
};

// Runs the branch-point pipeline, decomposes the distinct (k-1)-tuple fiber,
// and extracts the group from the certified part containing (1,..,k-1).
// Throws InputError for k outside [2, 6] (the tuple fiber explodes beyond
// that) and NumericError when the reference part fails certification.
FiberPowerGalois galois_from_fiber_power(const PolySystem& sys, const LineEmbedding& line,
                                         const FiberConfig& cfg, RandomStream& rng);

}  // namespace galoscope
