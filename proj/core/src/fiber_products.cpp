#include "galoscope/fiber_products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "galoscope/charts.hpp"
#include "galoscope/errors.hpp"
#include "galoscope/tracker.hpp"

namespace galoscope {

namespace {

// min pairwise witness separation, or max(1, |w|) when no pair exists; the
// common length scale for loop sizes and trace offsets.
double witness_scale(const BranchWitness& bw) {
  if (bw.points.size() >= 2)
    return bw.min_separation;
  double scale = 1.0;
  for (const WitnessPoint& wp : bw.points)
    scale = std::max(scale, std::abs(wp.t));
  return scale;
}

long int_pow_capped(long base, int exp, long cap) {
  long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > cap / std::max(base, 1L))
      return cap + 1;
    out *= base;
  }
  return out;
}

// All s-tuples of pairwise distinct indices in {0..k-1}, lexicographic.
std::vector<std::vector<int>> distinct_tuples(int k, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<char> used(k, 0);
  // Iterative depth-first enumeration in lexicographic order.
  struct Frame {
    int next = 0;
  };
  std::vector<Frame> stack(1);
  cur.reserve(s);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (static_cast<int>(cur.size()) == s) {
      out.push_back(cur);
      stack.pop_back();
      if (!cur.empty()) {
        used[cur.back()] = 0;
        cur.pop_back();
      }
      continue;
    }
    while (f.next < k && used[f.next])
      ++f.next;
    if (f.next >= k) {
      stack.pop_back();
      if (!cur.empty()) {
        used[cur.back()] = 0;
        cur.pop_back();
      }
      continue;
    }
    int pick = f.next++;
    used[pick] = 1;
    cur.push_back(pick);
    stack.emplace_back();
  }
  return out;
}

long tuple_code(const std::vector<int>& tuple, int k) {
  long code = 0;
  for (int v : tuple)
    code = code * k + v;
  return code;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Applies sigma elementwise to every tuple and merges each with its image.
// Returns true when any merge changed the partition.
bool close_under(UnionFind& uf, const std::vector<std::vector<int>>& tuples,
                 const std::vector<int>& code_to_index, int k, const Permutation& sigma) {
  bool refined = false;
  std::vector<int> image;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    image.clear();
    for (int v : tuples[i])
      image.push_back(sigma.apply(v));
    int j = code_to_index[tuple_code(image, k)];
    if (uf.merge(static_cast<int>(i), j))
      refined = true;
  }
  return refined;
}

// Coordinate-wise sum of the part's tuple points, blocks concatenated.
Vector part_sum(const std::vector<std::vector<int>>& part, const std::vector<Vector>& fiber,
                int s) {
  const Eigen::Index n = fiber.empty() ? 0 : fiber.front().size();
  Vector sum = Vector::Zero(static_cast<Eigen::Index>(s) * n);
  for (const auto& tuple : part)
    for (int j = 0; j < s; ++j)
      sum.segment(static_cast<Eigen::Index>(j) * n, n) += fiber[tuple[j]];
  return sum;
}

bool sums_collinear(const Vector& s0, const Vector& s1, const Vector& s2, Complex t0, Complex t1,
                    Complex t2, double tol) {
  Vector d1 = (s1 - s0) / (t1 - t0);
  Vector d2 = (s2 - s0) / (t2 - t0);
  double scale = std::max({1.0, d1.norm(), d2.norm()});
  return (d1 - d2).norm() <= tol * scale;
}

// Parameter values where a sheet of the cover runs off to infinity: the roots
// of the cover equation's leading coefficient as a polynomial in t. Only
// computed for single-equation covers; multi-equation covers return empty
// (their common presentations keep the fiber bounded along the line).
std::vector<Complex> cover_pole_locations(const PolySystem& cover) {
  if (cover.equation_count() != 1 || cover.variable_count() != 1)
    return {};
  const Polynomial& g = cover.equations()[0];
  unsigned lead = 0;
  for (const Term& term : g.terms())
    lead = std::max(lead, term.exponents[0]);
  if (lead == 0)
    return {};
  std::vector<Complex> coeff;
  for (const Term& term : g.terms()) {
    if (term.exponents[0] != lead)
      continue;
    const std::size_t j = term.exponents[1];
    if (j >= coeff.size())
      coeff.resize(j + 1, Complex(0.0, 0.0));
    coeff[j] += term.coeff;
  }
  double top = 0.0;
  for (const Complex& c : coeff)
    top = std::max(top, std::abs(c));
  while (coeff.size() > 1 && std::abs(coeff.back()) <= 1e-12 * top)
    coeff.pop_back();
  const std::size_t d = coeff.size() - 1;
  if (d == 0)
    return {};
  // Companion-matrix eigenvalues of the monic-normalized coefficient poly.
  Matrix companion = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i < d; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < d; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) =
        -coeff[i] / coeff[d];
  Eigen::ComplexEigenSolver<Matrix> eig(companion);
  std::vector<Complex> poles(eig.eigenvalues().data(), eig.eigenvalues().data() + d);
  std::sort(poles.begin(), poles.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return poles;
}

// Collinear probe values t0 + offset*dir*{0, 1, -1, 2, -2, ..}, every segment
// [t0, probe] clear of the witness points by the loop margin and of the poles
// by half the probe offset. Shrinks the offset when no direction fits.
std::vector<Complex> choose_trace_probes(const BranchWitness& bw,
                                         const std::vector<Complex>& poles, Complex t0,
                                         std::size_t count, const FiberConfig& cfg,
                                         RandomStream& rng) {
  double offset = cfg.trace_offset * witness_scale(bw);
  const double margin =
      cfg.monodromy.margin_factor * cfg.monodromy.epsilon_factor * witness_scale(bw);
  for (int round = 0; round < 4; ++round, offset /= 2.0) {
    for (int attempt = 0; attempt < cfg.direction_attempts; ++attempt) {
      const Complex step = offset * rng.unit_circle();
      std::vector<Complex> probes{t0};
      for (std::size_t i = 1; i < count; ++i) {
        const double w = static_cast<double>((i + 1) / 2);
        probes.push_back(t0 + ((i % 2) ? w : -w) * step);
      }
      bool clear = true;
      for (std::size_t i = 1; i < count && clear; ++i) {
        for (const WitnessPoint& wp : bw.points)
          if (point_segment_distance(wp.t, t0, probes[i]) < margin) {
            clear = false;
            break;
          }
        for (const Complex& pole : poles)
          if (point_segment_distance(pole, t0, probes[i]) < 0.5 * offset) {
            clear = false;
            break;
          }
      }
      if (clear)
        return probes;
    }
  }
  throw NumericError("fiber-products", "no trace direction clear of the witness points found");
}

// Certifies that the sums, multiplied by prod(t - pole), lie on a polynomial
// of degree (number of probes - 2): fit through all probes but the last and
// extrapolate to the last. With no poles and three probes this is the plain
// collinearity of the three sums.
bool trace_fit_passes(const std::vector<Vector>& sums, const std::vector<Complex>& probes,
                      const std::vector<Complex>& poles, double tol) {
  const std::size_t m = probes.size();
  std::vector<Vector> f(m);
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    Complex weight(1.0, 0.0);
    for (const Complex& pole : poles)
      weight *= probes[i] - pole;
    f[i] = sums[i] * weight;
    scale = std::max(scale, f[i].norm());
  }
  Vector predicted = Vector::Zero(f[0].size());
  for (std::size_t i = 0; i + 1 < m; ++i) {
    Complex basis(1.0, 0.0);
    for (std::size_t j = 0; j + 1 < m; ++j)
      if (j != i)
        basis *= (probes[m - 1] - probes[j]) / (probes[i] - probes[j]);
    predicted += basis * f[i];
  }
  return (predicted - f[m - 1]).norm() <= tol * scale;
}

std::vector<Vector> transport_to(const PolySystem& cover, const std::vector<Vector>& fiber,
                                 Complex from, Complex to, const TrackerConfig& tracker) {
  TransportResult moved = transport_fiber(cover, fiber, {from, to}, tracker);
  if (!moved.ok)
    throw NumericError("fiber-products", "trace-test tracking failed: " + moved.failure);
  return moved.points;
}

}  // namespace

FiberPowerSystem build_fiber_power(const PolySystem& sys_on_line, int s, double diagonal_tol,
                                   long max_tuples) {
  if (sys_on_line.parameter_count() != 1)
    throw InputError("fiber-products", "fiber powers need a one-parameter cover");
  if (sys_on_line.equation_count() != sys_on_line.variable_count())
    throw InputError("fiber-products", "fiber powers need a square cover");
  if (s < 1)
    throw InputError("fiber-products", "fiber power exponent must be at least 1");
  long bezout = 1;
  for (int d : sys_on_line.equation_degrees())
    bezout = std::min(bezout * std::max(d, 1), static_cast<long>(max_tuples) + 1);
  if (int_pow_capped(bezout, s, max_tuples) > max_tuples)
    throw InputError("fiber-products", "tuple fiber too large to enumerate");

  const std::size_t n = sys_on_line.variable_count();
  const std::size_t cols = static_cast<std::size_t>(s) * n + 1;

  std::vector<std::string> names;
  for (int j = 1; j <= s; ++j)
    for (const std::string& v : sys_on_line.variables())
      names.push_back(v + "_" + std::to_string(j));
  names.push_back(sys_on_line.parameters()[0]);
  // Dodge accidental collisions (e.g. an input variable literally named x_2).
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<std::string> others = names;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    names[i] = fresh_name(names[i], others);
  }

  std::vector<Polynomial> eqs;
  for (int j = 0; j < s; ++j) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i)
      images.push_back(Polynomial::variable(cols, static_cast<std::size_t>(j) * n + i));
    images.push_back(Polynomial::variable(cols, cols - 1));
    for (const Polynomial& f : sys_on_line.equations())
      eqs.push_back(f.substitute(cols, images));
  }

  PolySystem product(std::vector<std::string>(names.begin(), names.end() - 1), {names.back()},
                     std::move(eqs));
  return FiberPowerSystem{s, std::move(product), sys_on_line, diagonal_tol};
}

bool trace_test(const FiberPowerSystem& fps, const BasePointFiber& bpf,
                const std::vector<std::vector<int>>& part, Complex t0, Complex t1, Complex t2,
                const FiberConfig& cfg) {
  if (std::abs(t0 - bpf.p) > 1e-12)
    throw InputError("fiber-products", "trace test must start at the base point");
  if (t0 == t1 || t0 == t2 || t1 == t2)
    throw InputError("fiber-products", "trace test needs three distinct parameter values");
  const Complex u = t1 - t0, v = t2 - t0;
  if (std::abs(u.real() * v.imag() - u.imag() * v.real()) >
      1e-10 * std::abs(u) * std::abs(v))
    throw InputError("fiber-products", "trace-test parameter values must be collinear");
  for (const auto& tuple : part) {
    if (static_cast<int>(tuple.size()) != fps.s)
      throw InputError("fiber-products", "tuple length does not match the fiber power");
    for (int idx : tuple)
      if (idx < 0 || idx >= bpf.k)
        throw InputError("fiber-products", "tuple index outside the base fiber");
  }

  const TrackerConfig& tracker = cfg.monodromy.branch.solver.tracker;
  std::vector<Vector> fiber1 = transport_to(fps.cover, bpf.fiber, t0, t1, tracker);
  std::vector<Vector> fiber2 = transport_to(fps.cover, bpf.fiber, t0, t2, tracker);
  Vector s0 = part_sum(part, bpf.fiber, fps.s);
  Vector s1 = part_sum(part, fiber1, fps.s);
  Vector s2 = part_sum(part, fiber2, fps.s);
  return sums_collinear(s0, s1, s2, t0, t1, t2, cfg.trace_tol);
}

WitnessDecomposition decompose_by_monodromy(const FiberPowerSystem& fps,
                                            const BranchPointRun& run, const FiberConfig& cfg,
                                            RandomStream& rng) {
  const int k = run.base.k;
  const int s = fps.s;
  if (k < 1)
    throw InputError("fiber-products", "decomposition needs a non-empty base fiber");
  const long total = int_pow_capped(k, s, cfg.max_tuples);
  if (total > cfg.max_tuples)
    throw InputError("fiber-products", "tuple fiber too large to enumerate");

  WitnessDecomposition dec;
  dec.base_t = run.base.p;
  dec.k = k;
  dec.s = s;
  dec.tuples = distinct_tuples(k, s);
  dec.diagonal_count = total - static_cast<long>(dec.tuples.size());

  std::vector<int> code_to_index(static_cast<std::size_t>(total), -1);
  for (std::size_t i = 0; i < dec.tuples.size(); ++i)
    code_to_index[tuple_code(dec.tuples[i], k)] = static_cast<int>(i);

  // Close under the branch-point generators, then under random loops until
  // the partition survives several consecutive samples unchanged.
  UnionFind uf(static_cast<int>(dec.tuples.size()));
  for (const MonodromyPermutation& gen : run.generators)
    close_under(uf, dec.tuples, code_to_index, k, gen.sigma);
  int stable = 0;
  while (stable < cfg.stable_samples) {
    MonodromyPermutation rl = random_loop_permutation(fps.cover, run.base, run.witness,
                                                      run.epsilon, cfg.monodromy, rng);
    ++dec.sampled_loops;
    if (close_under(uf, dec.tuples, code_to_index, k, rl.sigma))
      stable = 0;
    else
      ++stable;
  }

  // Parts keyed by union-find root; roots are minimal members, so ordering
  // parts by root orders them by smallest tuple index.
  std::vector<int> roots;
  std::vector<std::vector<int>> parts;
  for (std::size_t i = 0; i < dec.tuples.size(); ++i) {
    int r = uf.find(static_cast<int>(i));
    auto it = std::find(roots.begin(), roots.end(), r);
    std::size_t slot;
    if (it == roots.end()) {
      roots.push_back(r);
      parts.emplace_back();
      slot = parts.size() - 1;
    } else {
      slot = static_cast<std::size_t>(it - roots.begin());
    }
    parts[slot].push_back(static_cast<int>(i));
  }

  // Certify each part; merge failing parts pairwise until everything passes
  // or only one failing blob remains. Pole-aware: with poles present the fit
  // degree rises by one per pole, needing one extra probe each.
  dec.trace_poles = cover_pole_locations(fps.cover);
  if (dec.trace_poles.size() > 4)
    throw NumericError("fiber-products",
                       "cover degenerates at too many parameter values to certify");
  const std::vector<Complex> probes = choose_trace_probes(
      run.witness, dec.trace_poles, run.base.p, dec.trace_poles.size() + 3, cfg, rng);
  const TrackerConfig& tracker = cfg.monodromy.branch.solver.tracker;
  std::vector<std::vector<Vector>> fibers{run.base.fiber};
  for (std::size_t i = 1; i < probes.size(); ++i)
    fibers.push_back(transport_to(fps.cover, run.base.fiber, run.base.p, probes[i], tracker));
  auto passes = [&](const std::vector<int>& part) {
    std::vector<std::vector<int>> tuple_list;
    tuple_list.reserve(part.size());
    for (int idx : part)
      tuple_list.push_back(dec.tuples[idx]);
    std::vector<Vector> sums;
    sums.reserve(fibers.size());
    for (const auto& fiber : fibers)
      sums.push_back(part_sum(tuple_list, fiber, s));
    return trace_fit_passes(sums, probes, dec.trace_poles, cfg.trace_tol);
  };

  std::vector<std::vector<int>> passed, failing;
  for (auto& part : parts)
    (passes(part) ? passed : failing).push_back(std::move(part));
  while (failing.size() >= 2) {
    failing[0].insert(failing[0].end(), failing[1].begin(), failing[1].end());
    std::sort(failing[0].begin(), failing[0].end());
    failing.erase(failing.begin() + 1);
    if (passes(failing[0])) {
      passed.push_back(std::move(failing[0]));
      failing.erase(failing.begin());
    }
  }

  for (auto& part : passed) {
    dec.parts.push_back(std::move(part));
    dec.certified.push_back(true);
  }
  for (auto& part : failing) {
    dec.parts.push_back(std::move(part));
    dec.certified.push_back(false);
  }
  // Restore the smallest-member ordering across the certified/failing split.
  std::vector<std::size_t> order(dec.parts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return dec.parts[a][0] < dec.parts[b][0]; });
  std::vector<std::vector<int>> sorted_parts;
  std::vector<bool> sorted_cert;
  for (std::size_t idx : order) {
    sorted_parts.push_back(std::move(dec.parts[idx]));
    sorted_cert.push_back(dec.certified[idx]);
  }
  dec.parts = std::move(sorted_parts);
  dec.certified = std::move(sorted_cert);
  for (const auto& part : dec.parts)
    dec.degrees.push_back(static_cast<int>(part.size()));
  dec.all_certified =
      std::all_of(dec.certified.begin(), dec.certified.end(), [](bool c) { return c; });
  return dec;
}

FiberPowerGalois galois_from_fiber_power(const PolySystem& sys, const LineEmbedding& line,
                                         const FiberConfig& cfg, RandomStream& rng) {
  FiberPowerGalois out;
  out.run = branch_point_generators(sys, line, cfg.monodromy, rng);
  const int k = out.run.witness.cover_degree;
  if (k < 2 || k > 6)
    throw InputError("fiber-products",
                     "group extraction from the fiber power handles degrees 2 through 6");
  const PolySystem cover = restrict_to_line(sys, out.run.witness.line);
  FiberPowerSystem fps =
      build_fiber_power(cover, k - 1, cfg.monodromy.branch.cluster_tol, cfg.max_tuples);
  out.decomposition = decompose_by_monodromy(fps, out.run, cfg, rng);

  // The reference tuple (0, 1, .., k-2) is the first in lexicographic order.
  std::vector<int> reference(static_cast<std::size_t>(k) - 1);
  std::iota(reference.begin(), reference.end(), 0);
  const std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::size_t home = npos;
  for (std::size_t i = 0; i < out.decomposition.parts.size() && home == npos; ++i)
    for (int idx : out.decomposition.parts[i])
      if (out.decomposition.tuples[idx] == reference) {
        home = i;
        break;
      }
  if (home == npos)
    throw NumericError("fiber-products", "reference tuple missing from the decomposition");
  if (!out.decomposition.certified[home])
    throw NumericError("fiber-products",
                       "the reference component failed trace certification");

  // A (k-1)-tuple of distinct sheet indices extends uniquely to a permutation
  // of all k sheets; the part's tuples are exactly the monodromy images of
  // the identity arrangement, i.e. the group elements.
  for (int idx : out.decomposition.parts[home]) {
    const std::vector<int>& tuple = out.decomposition.tuples[idx];
    std::vector<int> images(static_cast<std::size_t>(k), -1);
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      images[j] = tuple[j];
      seen[tuple[j]] = 1;
    }
    for (int m = 0; m < k; ++m)
      if (!seen[m]) {
        images[static_cast<std::size_t>(k) - 1] = m;
        break;
      }
    out.elements.emplace_back(std::move(images));
  }
  return out;
}

}  // namespace galoscope
