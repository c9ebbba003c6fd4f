#include "galoscope/branch_locus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "galoscope/errors.hpp"

namespace galoscope {

PolySystem CriticalSystem::solver_view() const {
  // Same column layout: parameters follow variables, so promoting t to a
  // variable reuses the equations untouched.
  std::vector<std::string> vars = augmented.variables();
  vars.push_back(augmented.parameters()[0]);
  return PolySystem(std::move(vars), {}, augmented.equations());
}

CriticalSystem build_critical_system(const PolySystem& sys, const LineEmbedding& line,
                                     RandomStream& rng) {
  PolySystem restricted = restrict_to_line(sys, line);
  const std::size_t n = restricted.variable_count();
  const std::size_t m = restricted.equation_count();

  if (m == 1 && n == 1) {
    // Hypersurface shortcut: the fiber degenerates exactly where g and dg/dx
    // share a root.
    std::vector<Polynomial> eqs = {restricted.equations()[0],
                                   restricted.equations()[0].derivative(0)};
    PolySystem augmented(restricted.variables(), restricted.parameters(), std::move(eqs));
    return CriticalSystem{std::move(augmented), std::move(restricted), 1, 0};
  }
  if (m < n)
    throw InputError("branch-locus",
                     "restriction is not zero-dimensional over generic t: " +
                         std::to_string(m) + " equations in " + std::to_string(n) +
                         " fiber variables");

  // Null-vector augmentation: F = 0, J_x F * v = 0, b * v = 1 in (x, v, t).
  // The random b realizes a generic affine chart of the projective v-space.
  const std::size_t cols = 2 * n + 1;
  std::vector<Polynomial> images;
  images.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::variable(cols, i));
  images.push_back(Polynomial::variable(cols, cols - 1));  // t keeps the last column

  std::vector<Polynomial> eqs;
  eqs.reserve(2 * m + 1);
  for (const auto& f : restricted.equations()) eqs.push_back(f.substitute(cols, images));
  for (std::size_t i = 0; i < m; ++i) {
    Polynomial row(cols, {});
    for (std::size_t j = 0; j < n; ++j) {
      const Polynomial& dij = restricted.derivative(i, j);
      if (dij.is_zero()) continue;
      row = row + dij.substitute(cols, images) * Polynomial::variable(cols, n + j);
    }
    eqs.push_back(std::move(row));
  }
  Polynomial normalization = Polynomial::constant(cols, Complex(-1, 0));
  for (std::size_t j = 0; j < n; ++j)
    normalization = normalization + Polynomial::variable(cols, n + j).scaled(rng.unit_disc());
  eqs.push_back(std::move(normalization));

  std::vector<std::string> var_names = restricted.variables();
  std::vector<std::string> taken = restricted.variables();
  taken.push_back(restricted.parameters()[0]);
  for (std::size_t j = 0; j < n; ++j) {
    std::string v = fresh_name("v" + std::to_string(j + 1), taken);
    var_names.push_back(v);
    taken.push_back(v);
  }

  PolySystem augmented(var_names, {restricted.parameters()[0]}, std::move(eqs));
  if (2 * m + 1 > 2 * n + 1) {
    // Overdetermined: replace by 2n+1 random combinations over all unknowns
    // including t; the solutions survive, spurious extras are filtered later.
    std::vector<std::string> free_vars = var_names;
    free_vars.push_back(restricted.parameters()[0]);
    PolySystem free_view(std::move(free_vars), {}, augmented.equations());
    PolySystem squared = square_up(free_view, rng);
    augmented = PolySystem(var_names, {restricted.parameters()[0]}, squared.equations());
  }
  return CriticalSystem{std::move(augmented), std::move(restricted), n, n};
}

SolveSummary solve_fiber_filtered(const PolySystem& sys, Complex t, const BranchConfig& cfg,
                                  RandomStream& rng) {
  for (const auto& ex : cfg.exclude_x)
    if (ex.size() != static_cast<Eigen::Index>(sys.variable_count()))
      throw InputError("branch-locus", "excluded point dimension does not match the system");
  // An overdetermined fiber is solved through random combinations; spurious
  // zeros of the combination are weeded out by the residual of the true system.
  const bool squared_up = sys.equation_count() > sys.variable_count();
  SolveSummary sum = squared_up ? solve_fiber(square_up(sys, rng), t, rng, cfg.solver)
                                : solve_fiber(sys, t, rng, cfg.solver);
  std::vector<Solution> kept;
  kept.reserve(sum.solutions.size());
  for (auto& sol : sum.solutions) {
    bool drop = false;
    for (const auto& ex : cfg.exclude_x)
      if ((sol.point - ex).norm() <= cfg.exclude_tol) drop = true;
    if (squared_up && !drop) {
      Vector full(sol.point.size() + 1);
      full.head(sol.point.size()) = sol.point;
      full[sol.point.size()] = t;
      if (sys.eval(full).lpNorm<Eigen::Infinity>() > cfg.residual_tol) drop = true;
    }
    if (!drop) kept.push_back(std::move(sol));
  }
  sum.solutions = std::move(kept);
  return sum;
}

BranchWitness compute_branch_witness(const PolySystem& sys, const LineEmbedding& line,
                                     const BranchConfig& cfg, RandomStream& rng) {
  CriticalSystem cs = build_critical_system(sys, line, rng);
  SolveSummary sum = solve_square(cs.solver_view(), rng, cfg.solver);

  BranchWitness bw;
  bw.line = line;
  bw.critical_count = static_cast<int>(sum.solutions.size());
  bw.critical_diverged = sum.diverged;

  // Filter extraneous critical points: the x-part must solve the restricted
  // system (squaring up adds spurious zeros), and declared degenerate family
  // points carry no branch information.
  std::vector<Complex> ts;
  const Eigen::Index nx = static_cast<Eigen::Index>(cs.x_count);
  for (const auto& sol : sum.solutions) {
    Vector x = sol.point.head(nx);
    Complex t = sol.point[sol.point.size() - 1];
    Vector full(nx + 1);
    full.head(nx) = x;
    full[nx] = t;
    double residual = cs.restricted.eval(full).lpNorm<Eigen::Infinity>();
    bool excluded = false;
    for (const auto& ex : cfg.exclude_x)
      if (ex.size() == nx && (x - ex).norm() <= cfg.exclude_tol) excluded = true;
    if (residual > cfg.residual_tol || excluded) {
      bw.discarded += 1;
      continue;
    }
    ts.push_back(t);
  }

  // Greedy clustering of the t-projection.
  for (Complex t : ts) {
    bool merged = false;
    for (auto& wp : bw.points) {
      if (std::abs(t - wp.t) <= cfg.cluster_tol) {
        wp.multiplicity += 1;
        merged = true;
        break;
      }
    }
    if (!merged) bw.points.push_back(WitnessPoint{t, 1});
  }
  const double quantum = cfg.cluster_tol / 10.0;
  std::sort(bw.points.begin(), bw.points.end(),
            [quantum](const WitnessPoint& a, const WitnessPoint& b) {
              double ar = std::nearbyint(a.t.real() / quantum), br = std::nearbyint(b.t.real() / quantum);
              if (ar != br) return ar < br;
              return std::nearbyint(a.t.imag() / quantum) < std::nearbyint(b.t.imag() / quantum);
            });

  bw.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < bw.points.size(); ++i)
    for (std::size_t j = i + 1; j < bw.points.size(); ++j)
      bw.min_separation = std::min(bw.min_separation, std::abs(bw.points[i].t - bw.points[j].t));
  if (bw.min_separation < cfg.ambiguity_factor * cfg.cluster_tol)
    throw NumericError("branch-locus",
                       "clustering ambiguity: two witness points are closer than " +
                           std::to_string(cfg.ambiguity_factor) +
                           " * cluster_tol; the line looks nongeneric, retry with a fresh line");

  // Cover degree: fibers over random non-branch parameter values must agree.
  for (int probe = 0; probe < cfg.fiber_probe_count; ++probe) {
    int k = -1;
    for (int attempt = 0; attempt < cfg.probe_attempts; ++attempt) {
      Complex t = cfg.probe_scale * rng.unit_disc();
      bool clear = true;
      for (const auto& wp : bw.points)
        if (std::abs(t - wp.t) < cfg.probe_clearance) clear = false;
      if (!clear) continue;
      SolveSummary fiber = solve_fiber_filtered(cs.restricted, t, cfg, rng);
      bool healthy = true;
      for (const auto& sol : fiber.solutions)
        if (sol.multiplicity != 1 || sol.suspect_singular) healthy = false;
      if (!healthy) continue;  // too close to the branch locus after all
      k = static_cast<int>(fiber.solutions.size());
      break;
    }
    if (k < 0)
      throw NumericError("branch-locus",
                         "could not find a clean fiber over a random parameter value");
    if (probe == 0) {
      bw.cover_degree = k;
    } else if (k != bw.cover_degree) {
      throw NumericError("branch-locus",
                         "fiber cardinality differs between random parameter values (" +
                             std::to_string(bw.cover_degree) + " vs " + std::to_string(k) + ")");
    }
  }
  return bw;
}

bool witness_degree_check(const BranchWitness& bw, int expected) {
  return static_cast<int>(bw.points.size()) == expected;
}

}  // namespace galoscope
