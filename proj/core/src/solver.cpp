#include "galoscope/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "galoscope/charts.hpp"
#include "galoscope/errors.hpp"

namespace galoscope {

bool lex_less(const Vector& a, const Vector& b, double quantum) {
  auto q = [quantum](double v) { return quantum > 0.0 ? std::nearbyint(v / quantum) : v; };
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (q(a[i].real()) != q(b[i].real())) return q(a[i].real()) < q(b[i].real());
    if (q(a[i].imag()) != q(b[i].imag())) return q(a[i].imag()) < q(b[i].imag());
  }
  return a.size() < b.size();
}

SolveSummary solve_square(const PolySystem& sys, RandomStream& rng, const SolverConfig& cfg) {
  if (sys.parameter_count() != 0)
    throw InputError("solver", "solve_square needs a parameter-free system");
  if (sys.equation_count() != sys.variable_count())
    throw InputError("solver", "solve_square needs a square system");

  const std::size_t nv = sys.variable_count();
  std::vector<int> degrees = sys.equation_degrees();
  long total = 1;
  for (std::size_t i = 0; i < nv; ++i) {
    if (degrees[i] <= 0)
      throw InputError("solver", "equation " + std::to_string(i + 1) +
                                     " is constant; every equation must involve a variable");
    if (total > cfg.max_paths / degrees[i] + 1) total = cfg.max_paths + 1;
    else total *= degrees[i];
  }
  if (total > cfg.max_paths)
    throw InputError("solver", "total degree exceeds the path limit (" +
                                   std::to_string(cfg.max_paths) + ")");

  // Homotopy H(x, s) = gamma*(1-s)*(x_i^{d_i} - 1) + s*F_i(x), a one-parameter
  // system in the fresh parameter s. The random unit gamma makes the path set
  // generic (no crossings for almost every draw).
  const Complex gamma = rng.unit_circle();
  const std::size_t cols = nv + 1;
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < nv; ++v) images.push_back(Polynomial::variable(cols, v));
  const Polynomial s_poly = Polynomial::variable(cols, nv);
  const Polynomial one = Polynomial::constant(cols, Complex(1, 0));
  const Polynomial gamma_fade = (one - s_poly).scaled(gamma);  // gamma*(1-s)

  std::vector<Polynomial> homotopy;
  homotopy.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    Polynomial start = Polynomial::variable(cols, i).pow(static_cast<unsigned>(degrees[i])) - one;
    Polynomial target = sys.equations()[i].substitute(cols, images);
    homotopy.push_back(gamma_fade * start + s_poly * target);
  }
  PolySystem hsys(sys.variables(), {fresh_name("s", sys.variables())}, std::move(homotopy));

  SolveSummary out;
  out.total_paths = total;
  std::vector<Solution> endpoints;

  for (long path = 0; path < total; ++path) {
    // mixed-radix digits select one d_i-th root of unity per coordinate
    Vector start(static_cast<Eigen::Index>(nv));
    long rest = path;
    for (std::size_t i = 0; i < nv; ++i) {
      long digit = rest % degrees[i];
      rest /= degrees[i];
      double angle = 2.0 * std::numbers::pi * static_cast<double>(digit) /
                     static_cast<double>(degrees[i]);
      start[static_cast<Eigen::Index>(i)] = Complex(std::cos(angle), std::sin(angle));
    }
    TrackResult tracked = track_segment(hsys, start, Complex(0, 0), Complex(1, 0), cfg.tracker);
    if (tracked.status == TrackStatus::success) {
      Solution sol;
      sol.point = tracked.point;
      sol.rcond = tracked.rcond;
      sol.residual = tracked.residual;
      endpoints.push_back(std::move(sol));
    } else if (tracked.status == TrackStatus::newton_divergence ||
               !tracked.point.allFinite() || tracked.point.norm() > cfg.infinity_norm) {
      // hard abort on the way out, or a lost path whose last iterate had
      // already left every bounded region: either way it was heading to
      // infinity, not to a finite solution
      out.diverged += 1;
    } else {
      // A bounded stall usually means a singular endpoint, where the step
      // control must give up but plain Newton still creeps in linearly. Give
      // it a long leash; if it converges the path ends at a (near-)singular
      // solution, otherwise count the path as lost. The rescue finishes the
      // stalled path, so it must stay local: accepting a rescue that walked
      // far from the stall point would silently hop a surplus path (stalled
      // on its way to infinity) onto a finite root it merely passed near,
      // inflating that root's multiplicity.
      TrackerConfig patient = cfg.tracker;
      patient.max_newton_iters = 60;
      NewtonResult rescue = newton_refine(hsys, tracked.point, Complex(1, 0), patient);
      const double travel = rescue.converged
                                ? (rescue.point - tracked.point).norm()
                                : std::numeric_limits<double>::infinity();
      if (rescue.converged && rescue.point.norm() <= cfg.infinity_norm &&
          travel <= 0.1 * std::max(1.0, tracked.point.norm())) {
        Solution sol;
        sol.point = rescue.point;
        sol.rcond = rescue.rcond;
        sol.residual = rescue.residual;
        endpoints.push_back(std::move(sol));
      } else {
        out.failed += 1;
      }
    }
  }

  // Cluster endpoints within dedup_tol; the best-conditioned member represents
  // the cluster and the cluster size is the multiplicity.
  for (auto& ep : endpoints) {
    bool merged = false;
    for (auto& sol : out.solutions) {
      if ((sol.point - ep.point).norm() <= cfg.dedup_tol) {
        sol.multiplicity += 1;
        if (ep.rcond > sol.rcond) {
          sol.point = ep.point;
          sol.rcond = ep.rcond;
          sol.residual = ep.residual;
        }
        merged = true;
        break;
      }
    }
    if (!merged) out.solutions.push_back(std::move(ep));
  }
  for (auto& sol : out.solutions)
    sol.suspect_singular = sol.rcond < cfg.suspect_rcond || sol.multiplicity > 1;

  const double quantum = cfg.dedup_tol / 10.0;
  std::sort(out.solutions.begin(), out.solutions.end(),
            [quantum](const Solution& a, const Solution& b) {
              return lex_less(a.point, b.point, quantum);
            });
  return out;
}

SolveSummary solve_fiber(const PolySystem& sys, Complex t, RandomStream& rng,
                         const SolverConfig& cfg) {
  if (sys.parameter_count() != 1)
    throw InputError("solver", "solve_fiber needs exactly one parameter");
  return solve_square(sys.specialized({t}), rng, cfg);
}

PolySystem square_up(const PolySystem& sys, RandomStream& rng) {
  const std::size_t nv = sys.variable_count();
  const std::size_t ne = sys.equation_count();
  if (ne <= nv)
    throw InputError("solver", "square_up needs more equations than variables");
  std::vector<Polynomial> combos;
  combos.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    Polynomial combo(sys.column_count(), {});
    for (std::size_t j = 0; j < ne; ++j) combo = combo + sys.equations()[j].scaled(rng.unit_disc());
    combos.push_back(std::move(combo));
  }
  return PolySystem(sys.variables(), sys.parameters(), std::move(combos));
}

}  // namespace galoscope
