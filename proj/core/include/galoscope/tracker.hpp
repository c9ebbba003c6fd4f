#pragma once

#include <string>
#include <vector>

#include "galoscope/system.hpp"

namespace galoscope {

// Numerical continuation along a straight segment in the parameter plane of a
// square one-parameter system F(x; t): Euler prediction, Newton correction,
// multiplicative step control.
struct TrackerConfig {
  double newton_tol = 1e-10;        // corrector convergence: |dx| <= tol * max(1, |x|)
  int max_newton_iters = 10;        // corrector iterations per step
  double initial_step = 0.05;       // first step, as a fraction of the segment; also the cap
  double min_step = 1e-7;           // below this fraction the path is abandoned
  double step_expand = 1.5;         // growth factor after `expand_after` consecutive successes
  double step_cut = 0.5;            // shrink factor after a rejected step
  int expand_after = 4;             // consecutive successes before the step grows
  double endpoint_match_tol = 1e-6; // distinct endpoints must be farther apart than this
  double divergence_norm = 1e8;     // |x| beyond this aborts the path as divergent
  // Path-jump guard: a step is rejected when the corrector moves the predicted
  // point by more than this multiple of the predictor step. Near-collisions of
  // paths otherwise let the corrector silently hop onto a neighboring path.
  double max_correction_ratio = 1.0;
  long max_steps = 200000;          // hard safety cap on accepted+rejected steps
};

enum class TrackStatus {
  success,
  step_underflow,     // adaptive step fell below min_step
  newton_divergence,  // iterate norm exceeded divergence_norm (path runs to infinity)
  singular_jacobian,  // linear solve produced a non-finite correction
};

std::string to_string(TrackStatus status);

struct TrackResult {
  TrackStatus status = TrackStatus::singular_jacobian;
  Vector point;          // endpoint estimate (valid on success)
  double rcond = 0.0;    // reciprocal condition estimate of the Jacobian at the endpoint
  double residual = 0.0; // |F| at the endpoint
  long steps = 0;        // accepted steps
};

struct NewtonResult {
  bool converged = false;
  Vector point;
  double rcond = 0.0;
  double residual = 0.0;
  double last_step_norm = 0.0;
  int iterations = 0;
};

// Newton iteration for the square system sys (which must have exactly one
// parameter) at the fixed parameter value t, starting from x.
NewtonResult newton_refine(const PolySystem& sys, const Vector& x, Complex t,
                           const TrackerConfig& cfg);

// Tracks the solution path of F(x; t(s)) = 0 with t(s) = t_from + s*(t_to - t_from),
// s from 0 to 1, starting at the approximate solution x of F(.; t_from).
TrackResult track_segment(const PolySystem& sys, const Vector& x, Complex t_from, Complex t_to,
                          const TrackerConfig& cfg);

struct TransportResult {
  bool ok = false;
  std::string failure;          // empty when ok
  std::vector<Vector> points;   // points[i] continues fiber[i] (valid when ok)
};

// Continues every fiber point through the polygon t_0 -> t_1 -> ... -> t_last.
// After each segment the tracked points must stay pairwise separated by more
// than endpoint_match_tol; a collision or a failed path reports failure.
TransportResult transport_fiber(const PolySystem& sys, const std::vector<Vector>& fiber,
                                const std::vector<Complex>& polygon, const TrackerConfig& cfg);

}  // namespace galoscope
