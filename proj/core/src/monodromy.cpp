#include "galoscope/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "galoscope/errors.hpp"

namespace {
constexpr double kPi = 3.14159265358979323846;
}

namespace galoscope {

namespace {

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g%+.6g*I", z.real(), z.imag());
  return buf;
}

double fiber_distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    Complex d = a[i] - b[i];
    s += std::norm(d);
  }
  return std::sqrt(s);
}

Complex diamond_entry(Complex w, Complex p, double epsilon) {
  const Complex eps_i(0.0, epsilon);
  return (w - p).imag() <= 0.0 ? w + eps_i : w - eps_i;
}

// Distance from every witness point other than `target` to the segment [a, b].
double clearance_from_others(const BranchWitness& bw, Complex a, Complex b,
                             const Complex* target) {
  double best = std::numeric_limits<double>::infinity();
  for (const WitnessPoint& wp : bw.points) {
    if (target != nullptr && wp.t == *target)
      continue;
    best = std::min(best, point_segment_distance(wp.t, a, b));
  }
  return best;
}

// The connector p -> entry(w) for every witness point w must stay a margin
// away from all the *other* witness points; the diamond edges themselves are
// safe by construction (circumradius epsilon, neighbors >= 2.5 epsilon away).
bool connectors_clear(const BranchWitness& bw, Complex p, double epsilon, double margin) {
  for (const WitnessPoint& wp : bw.points) {
    Complex entry = diamond_entry(wp.t, p, epsilon);
    if (clearance_from_others(bw, p, entry, &wp.t) < margin)
      return false;
  }
  return true;
}

double min_witness_distance(const BranchWitness& bw, Complex p) {
  double best = std::numeric_limits<double>::infinity();
  for (const WitnessPoint& wp : bw.points)
    best = std::min(best, std::abs(wp.t - p));
  return best;
}

// Matches transported endpoints back to the start fiber. Returns true and
// fills `images` and `worst` on an unambiguous bijection.
bool match_endpoints(const std::vector<Vector>& fiber, const std::vector<Vector>& transported,
                     const TrackerConfig& tracker, double ambiguity, std::vector<int>& images,
                     double& worst) {
  const int k = static_cast<int>(fiber.size());
  images.assign(k, -1);
  std::vector<char> taken(k, 0);
  worst = 0.0;
  for (int i = 0; i < k; ++i) {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    int j1 = -1;
    for (int j = 0; j < k; ++j) {
      double d = fiber_distance(transported[i], fiber[j]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        j1 = j;
      } else if (d < d2) {
        d2 = d;
      }
    }
    if (j1 < 0 || d1 >= 0.5 * tracker.endpoint_match_tol)
      return false;
    if (k > 1 && d2 <= ambiguity * d1)
      return false;
    if (taken[j1])
      return false;
    taken[j1] = 1;
    images[i] = j1;
    worst = std::max(worst, d1);
  }
  return true;
}

}  // namespace

double point_segment_distance(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0)
    return std::abs(z - a);
  // Projection parameter of z onto the line through a and b, clamped to [0,1].
  double t = ((z - a).real() * ab.real() + (z - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

double loop_epsilon(const BranchWitness& bw, const MonodromyConfig& cfg) {
  if (bw.points.size() >= 2)
    return cfg.epsilon_factor * bw.min_separation;
  // Fewer than two witness points: no pairwise scale exists, so fall back to
  // the magnitude of the witness itself (floored at 1 for points near zero).
  double scale = 1.0;
  for (const WitnessPoint& wp : bw.points)
    scale = std::max(scale, std::abs(wp.t));
  return cfg.epsilon_factor * scale;
}

LoopPath build_diamond_loop(Complex w, Complex p, double epsilon) {
  if (!(epsilon > 0.0))
    throw InputError("monodromy", "diamond loop needs a positive epsilon");
  const Complex east = w + Complex(epsilon, 0.0);
  const Complex north = w + Complex(0.0, epsilon);
  const Complex west = w - Complex(epsilon, 0.0);
  const Complex south = w - Complex(0.0, epsilon);
  LoopPath loop;
  loop.target = w;
  loop.epsilon = epsilon;
  // Enter on the vertex facing the base point, circle anti-clockwise
  // (increasing angle), close the diamond, return to base.
  if ((w - p).imag() <= 0.0)
    loop.polygon = {p, north, west, south, east, north, p};
  else
    loop.polygon = {p, south, east, north, west, south, p};
  return loop;
}

double validate_pinned_base(Complex p, const BranchWitness& bw, double epsilon,
                            const MonodromyConfig& cfg) {
  const double dist = min_witness_distance(bw, p);
  const double clamped = std::min(epsilon, cfg.pinned_clamp * dist);
  if (!(clamped > 0.0))
    throw NumericError("monodromy", "base point coincides with a branch-locus witness point");
  if (!connectors_clear(bw, p, clamped, cfg.margin_factor * clamped))
    throw NumericError("monodromy", "pinned base point: a loop connector passes too close to a witness point");
  return clamped;
}

Complex choose_base_point(const BranchWitness& bw, double epsilon, const MonodromyConfig& cfg,
                          RandomStream& rng) {
  Complex center(0.0, 0.0);
  for (const WitnessPoint& wp : bw.points)
    center += wp.t;
  if (!bw.points.empty())
    center /= static_cast<double>(bw.points.size());
  double radius = 0.0;
  for (const WitnessPoint& wp : bw.points)
    radius = std::max(radius, std::abs(wp.t - center));
  const double draw_scale = radius + 4.0 * epsilon;
  for (int attempt = 0; attempt < cfg.base_attempts; ++attempt) {
    Complex p = center + draw_scale * rng.unit_disc();
    if (min_witness_distance(bw, p) <= cfg.base_clearance * epsilon)
      continue;
    if (!connectors_clear(bw, p, epsilon, cfg.margin_factor * epsilon))
      continue;
    return p;
  }
  throw NumericError("monodromy", "no base point with clear loop connectors found");
}

BasePointFiber base_point_fiber(const PolySystem& sys_on_line, Complex p, int expected_k,
                                const MonodromyConfig& cfg, RandomStream& rng) {
  SolveSummary summary = solve_fiber_filtered(sys_on_line, p, cfg.branch, rng);
  if (expected_k > 0 && static_cast<int>(summary.solutions.size()) != expected_k)
    throw NumericError("monodromy", "base fiber has the wrong cardinality (base point too close to the "
                       "branch locus?)");
  BasePointFiber bpf;
  bpf.p = p;
  const double sep = 2.0 * cfg.branch.solver.tracker.endpoint_match_tol;
  for (const Solution& sol : summary.solutions) {
    if (sol.multiplicity != 1 || sol.suspect_singular)
      throw NumericError("monodromy", "base fiber is not clean: a point is singular or multiple");
    bpf.fiber.push_back(sol.point);
  }
  for (std::size_t i = 0; i < bpf.fiber.size(); ++i)
    for (std::size_t j = i + 1; j < bpf.fiber.size(); ++j)
      if (fiber_distance(bpf.fiber[i], bpf.fiber[j]) <= sep)
        throw NumericError("monodromy", "base fiber points are too close to label reliably");
  bpf.k = static_cast<int>(bpf.fiber.size());
  return bpf;
}

MonodromyPermutation monodromy_around(const PolySystem& sys_on_line, const BasePointFiber& bpf,
                                      const LoopPath& loop, const MonodromyConfig& cfg) {
  if (bpf.k <= 0)
    throw InputError("monodromy", "monodromy needs a non-empty base fiber");
  const TrackerConfig& base_tracker = cfg.branch.solver.tracker;
  std::string last_failure = "no attempts ran";
  // Retry ladder: finer steps first, then a tighter diamond (which moves the
  // loop off whatever it collided with), then both.
  for (int attempt = 0; attempt < 4; ++attempt) {
    TrackerConfig tracker = base_tracker;
    LoopPath path = loop;
    const bool halve_steps = (attempt % 2) == 1;
    const bool shrink = attempt >= 2;
    if (halve_steps) {
      tracker.initial_step = base_tracker.initial_step / 2.0;
      tracker.min_step = base_tracker.min_step / 2.0;
    }
    if (shrink) {
      if (loop.target.has_value()) {
        path = build_diamond_loop(*loop.target, loop.polygon.front(), loop.epsilon / 2.0);
      } else {
        // A free polygon has no size knob; refine the steps further instead.
        tracker.initial_step = base_tracker.initial_step / (halve_steps ? 8.0 : 4.0);
        tracker.min_step = base_tracker.min_step / (halve_steps ? 8.0 : 4.0);
      }
    }
    TransportResult transported = transport_fiber(sys_on_line, bpf.fiber, path.polygon, tracker);
    if (!transported.ok) {
      last_failure = transported.failure;
      continue;
    }
    std::vector<int> images;
    double worst = 0.0;
    if (!match_endpoints(bpf.fiber, transported.points, tracker, cfg.match_ambiguity, images,
                         worst)) {
      last_failure = "transported fiber did not match the start fiber unambiguously";
      continue;
    }
    MonodromyPermutation result;
    result.sigma = Permutation(std::move(images));
    result.max_match_residual = worst;
    result.identity = result.sigma.is_identity();
    result.source = loop.target.has_value() ? "diamond around " + format_complex(*loop.target)
                                            : "loop through " +
                                                  std::to_string(loop.polygon.size() - 2) +
                                                  " anchors";
    return result;
  }
  throw NumericError("monodromy", "monodromy transport failed after retries: " + last_failure);
}

BranchPointRun branch_point_generators(const PolySystem& sys, const LineEmbedding& line,
                                       const MonodromyConfig& cfg, RandomStream& rng,
                                       std::optional<Complex> pinned_base) {
  BranchPointRun run;
  run.witness = compute_branch_witness(sys, line, cfg.branch, rng);
  const PolySystem restricted = restrict_to_line(sys, run.witness.line);
  double epsilon = loop_epsilon(run.witness, cfg);
  Complex p;
  if (pinned_base.has_value()) {
    p = *pinned_base;
    epsilon = validate_pinned_base(p, run.witness, epsilon, cfg);
  } else {
    p = choose_base_point(run.witness, epsilon, cfg, rng);
  }
  run.epsilon = epsilon;
  run.base = base_point_fiber(restricted, p, run.witness.cover_degree, cfg, rng);
  for (const WitnessPoint& wp : run.witness.points) {
    LoopPath loop = build_diamond_loop(wp.t, p, epsilon);
    run.generators.push_back(monodromy_around(restricted, run.base, loop, cfg));
  }
  return run;
}

MonodromyPermutation random_loop_permutation(const PolySystem& sys_on_line,
                                             const BasePointFiber& bpf, const BranchWitness& bw,
                                             double epsilon, const MonodromyConfig& cfg,
                                             RandomStream& rng) {
  Complex center(0.0, 0.0);
  for (const WitnessPoint& wp : bw.points)
    center += wp.t;
  if (!bw.points.empty())
    center /= static_cast<double>(bw.points.size());
  double radius = 0.0;
  for (const WitnessPoint& wp : bw.points)
    radius = std::max(radius, std::abs(wp.t - center));
  const double draw_scale = radius + 4.0 * epsilon;
  const double margin = cfg.margin_factor * epsilon;
  for (int attempt = 0; attempt < cfg.anchor_attempts; ++attempt) {
    // A square traversed anti-clockwise around a random center is guaranteed to
    // wind around whatever it encloses; free anchor polygons double back on
    // themselves most of the time and carry the identity.
    const Complex q = center + draw_scale * rng.unit_disc();
    double nearest = std::numeric_limits<double>::infinity();
    for (const WitnessPoint& wp : bw.points)
      nearest = std::min(nearest, std::abs(wp.t - q));
    if (!std::isfinite(nearest))
      nearest = 0.0;
    // Corner radius large enough that the square's inscribed circle clears the
    // nearest witness point by at least the margin, with a random surplus.
    const double r =
        std::sqrt(2.0) * (nearest + margin + (0.5 + 1.5 * rng.unit()) * epsilon);
    Complex corner = std::polar(r, 2.0 * kPi * rng.unit());
    std::vector<Complex> polygon;
    polygon.push_back(bpf.p);
    for (int j = 0; j < 4; ++j) {
      polygon.push_back(q + corner);
      corner *= Complex(0.0, 1.0);
    }
    polygon.push_back(polygon[1]);
    polygon.push_back(bpf.p);
    bool clear = true;
    for (std::size_t i = 0; i + 1 < polygon.size() && clear; ++i)
      if (clearance_from_others(bw, polygon[i], polygon[i + 1], nullptr) < margin)
        clear = false;
    if (!clear)
      continue;
    LoopPath loop;
    loop.polygon = std::move(polygon);
    loop.epsilon = epsilon;
    return monodromy_around(sys_on_line, bpf, loop, cfg);
  }
  throw NumericError("monodromy", "no random loop avoiding the witness points found");
}

}  // namespace galoscope
