#include "galoscope/tracker.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>

#include "galoscope/errors.hpp"

namespace galoscope {

namespace {

void require_square_one_parameter(const PolySystem& sys, const char* who) {
  if (sys.parameter_count() != 1)
    throw InputError("tracker", std::string(who) + " needs exactly one parameter");
  if (sys.equation_count() != sys.variable_count())
    throw InputError("tracker", std::string(who) + " needs a square system");
}

Vector with_parameter(const Vector& x, Complex t) {
  Vector full(x.size() + 1);
  full.head(x.size()) = x;
  full[x.size()] = t;
  return full;
}

bool finite(const Vector& v) { return v.allFinite(); }

}  // namespace

std::string to_string(TrackStatus status) {
  switch (status) {
    case TrackStatus::success: return "success";
    case TrackStatus::step_underflow: return "step-underflow";
    case TrackStatus::newton_divergence: return "newton-divergence";
    case TrackStatus::singular_jacobian: return "singular-jacobian";
  }
  return "unknown";
}

NewtonResult newton_refine(const PolySystem& sys, const Vector& x, Complex t,
                           const TrackerConfig& cfg) {
  require_square_one_parameter(sys, "newton_refine");
  if (x.size() != static_cast<Eigen::Index>(sys.variable_count()))
    throw InputError("tracker", "point dimension does not match the system");

  NewtonResult out;
  out.point = x;
  Vector values;
  Matrix jac;
  for (int iter = 0; iter < cfg.max_newton_iters; ++iter) {
    sys.eval_block(with_parameter(out.point, t), values, jac, -1, nullptr);
    Eigen::PartialPivLU<Matrix> lu(jac);
    Vector dx = lu.solve(-values);
    if (!finite(dx)) {
      out.converged = false;
      out.rcond = 0.0;
      return out;
    }
    out.point += dx;
    out.iterations = iter + 1;
    out.last_step_norm = dx.norm();
    if (out.point.norm() > cfg.divergence_norm) {
      out.converged = false;
      return out;
    }
    if (out.last_step_norm <= cfg.newton_tol * std::max(1.0, out.point.norm())) {
      out.converged = true;
      break;
    }
  }
  sys.eval_block(with_parameter(out.point, t), values, jac, -1, nullptr);
  out.residual = values.norm();
  Eigen::PartialPivLU<Matrix> lu(jac);
  out.rcond = lu.rcond();
  if (!std::isfinite(out.rcond)) out.rcond = 0.0;
  return out;
}

TrackResult track_segment(const PolySystem& sys, const Vector& x, Complex t_from, Complex t_to,
                          const TrackerConfig& cfg) {
  require_square_one_parameter(sys, "track_segment");
  if (x.size() != static_cast<Eigen::Index>(sys.variable_count()))
    throw InputError("tracker", "point dimension does not match the system");

  TrackResult out;
  out.point = x;
  const Complex dt = t_to - t_from;
  const int dcolumn = static_cast<int>(sys.variable_count());

  double s = 0.0;
  double h = cfg.initial_step;
  int successes = 0;
  long total_steps = 0;
  Vector values, dvalues;
  Matrix jac;

  while (s < 1.0) {
    if (++total_steps > cfg.max_steps) {
      out.status = TrackStatus::step_underflow;
      return out;
    }
    const double step = std::min(h, 1.0 - s);
    const Complex t_here = t_from + s * dt;
    const Complex t_next = t_from + (s + step) * dt;

    // Euler predictor: J dx = -F_t * (dt * step)
    sys.eval_block(with_parameter(out.point, t_here), values, jac, dcolumn, &dvalues);
    Eigen::PartialPivLU<Matrix> lu(jac);
    Vector dx = lu.solve(-(dvalues * (dt * step)));
    bool accepted = false;
    if (finite(dx)) {
      const Vector predicted = out.point + dx;
      Vector candidate = predicted;
      // Newton corrector at t_next
      for (int iter = 0; iter < cfg.max_newton_iters && finite(candidate); ++iter) {
        if (candidate.norm() > cfg.divergence_norm) {
          out.status = TrackStatus::newton_divergence;
          return out;
        }
        sys.eval_block(with_parameter(candidate, t_next), values, jac, -1, nullptr);
        Eigen::PartialPivLU<Matrix> clu(jac);
        Vector correction = clu.solve(-values);
        if (!finite(correction)) break;
        candidate += correction;
        if (correction.norm() <= cfg.newton_tol * std::max(1.0, candidate.norm())) {
          accepted = true;
          break;
        }
      }
      if (accepted) {
        // path-jump guard: the converged point must stay close to the prediction
        const double moved = (candidate - predicted).norm();
        const double allowed = cfg.max_correction_ratio * dx.norm() +
                               10.0 * cfg.newton_tol * std::max(1.0, candidate.norm());
        if (moved > allowed) accepted = false;
      }
      if (accepted) {
        if (candidate.norm() > cfg.divergence_norm) {
          out.status = TrackStatus::newton_divergence;
          return out;
        }
        out.point = candidate;
        out.steps += 1;
        s += step;
        if (++successes >= cfg.expand_after) {
          h = std::min(h * cfg.step_expand, cfg.initial_step);
          successes = 0;
        }
      }
    } else if (out.point.norm() > 0.5 * cfg.divergence_norm) {
      // the Jacobian overflowed because the iterate already ran away
      out.status = TrackStatus::newton_divergence;
      return out;
    }
    if (!accepted) {
      successes = 0;
      h *= cfg.step_cut;
      if (h < cfg.min_step) {
        out.status = TrackStatus::step_underflow;
        return out;
      }
    }
  }

  // Endpoint polish at exactly t_to.
  NewtonResult polish = newton_refine(sys, out.point, t_to, cfg);
  if (!polish.converged) {
    out.status = polish.point.norm() > cfg.divergence_norm ? TrackStatus::newton_divergence
                                                           : TrackStatus::singular_jacobian;
    out.point = polish.point;
    return out;
  }
  out.point = polish.point;
  out.rcond = polish.rcond;
  out.residual = polish.residual;
  out.status = TrackStatus::success;
  return out;
}

TransportResult transport_fiber(const PolySystem& sys, const std::vector<Vector>& fiber,
                                const std::vector<Complex>& polygon, const TrackerConfig& cfg) {
  require_square_one_parameter(sys, "transport_fiber");
  TransportResult out;
  if (polygon.size() < 2) throw InputError("tracker", "polygon needs at least two vertices");
  if (fiber.empty()) throw InputError("tracker", "fiber is empty");

  out.points = fiber;
  for (std::size_t seg = 0; seg + 1 < polygon.size(); ++seg) {
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      TrackResult tracked = track_segment(sys, out.points[i], polygon[seg], polygon[seg + 1], cfg);
      if (tracked.status != TrackStatus::success) {
        out.failure = "path " + std::to_string(i) + " on segment " + std::to_string(seg) + ": " +
                      to_string(tracked.status);
        return out;
      }
      out.points[i] = tracked.point;
    }
    for (std::size_t i = 0; i < out.points.size(); ++i)
      for (std::size_t j = i + 1; j < out.points.size(); ++j)
        if ((out.points[i] - out.points[j]).norm() <= cfg.endpoint_match_tol) {
          out.failure = "paths " + std::to_string(i) + " and " + std::to_string(j) +
                        " collided after segment " + std::to_string(seg);
          return out;
        }
  }
  out.ok = true;
  return out;
}

}  // namespace galoscope
