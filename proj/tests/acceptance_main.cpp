// Acceptance suite: end-to-end checks of the shipped pipeline against known
// covers and permutation data. Prints exactly one PASS/FAIL line per
// criterion on stdout (details of any failure go to stderr) and exits with
// the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "galoscope/biguint.hpp"
#include "galoscope/charts.hpp"
#include "galoscope/errors.hpp"
#include "galoscope/fiber_products.hpp"
#include "galoscope/group.hpp"
#include "galoscope/input.hpp"
#include "galoscope/monodromy.hpp"
#include "galoscope/parser.hpp"
#include "galoscope/pipeline.hpp"
#include "galoscope/rng.hpp"
#include "galoscope/system.hpp"

using json = nlohmann::json;
using galoscope::BigUint;
using galoscope::Complex;
using galoscope::Permutation;
using galoscope::PermutationGroup;
using galoscope::PolySystem;
using galoscope::Vector;

namespace {

std::string fixture(const std::string& name) {
  return std::string(GALOSCOPE_FIXTURE_DIR) + "/" + name;
}

// Collects failure details for one criterion.
struct Checks {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok)
      failures.push_back(what);
  }

  template <typename T>
  void expect_eq(const T& actual, const T& expected, const std::string& what) {
    if (actual != expected) {
      std::ostringstream os;
      os << what << ": got " << actual << ", want " << expected;
      failures.push_back(os.str());
    }
  }
};

template <typename T>
std::string seq_string(const std::vector<T>& v) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  os << "}";
  return os.str();
}

std::vector<std::size_t> sorted_sizes(const std::vector<std::vector<std::vector<int>>>& orbits) {
  std::vector<std::size_t> sizes;
  for (const auto& orbit : orbits)
    sizes.push_back(orbit.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

PolySystem quartic_system() {
  const std::vector<std::string> names = {"x", "t"};
  return PolySystem({"x"}, {"t"}, {galoscope::parse_polynomial("x^4 - 4*x^2 + t", names)});
}

// The charted cubic family on its pinned line, as the published example uses
// it: one projective variable pair (x, y), charted at random, restricted to
// the line with base (1, 2, 5) and direction (-1, -3, 7).
PolySystem cubic_family_on_line(galoscope::RandomStream& rng) {
  const std::vector<std::string> names = {"x", "y", "u", "v", "w"};
  PolySystem sys({"x", "y"}, {"u", "v", "w"},
                 {galoscope::parse_polynomial("u*x^3 + v*y^3 - w*x*y^2", names)});
  const auto chart = galoscope::random_affine_chart(sys, {{"x", "y"}}, rng);
  const PolySystem charted = galoscope::apply_chart(sys, chart);
  galoscope::LineEmbedding line;
  line.base = {Complex(1, 0), Complex(2, 0), Complex(5, 0)};
  line.direction = {Complex(-1, 0), Complex(-3, 0), Complex(7, 0)};
  return galoscope::restrict_to_line(charted, line);
}

// ---------------------------------------------------------------------------
// Criterion 1: quartic cover end to end through the run pipeline.

void criterion_quartic(Checks& c) {
  galoscope::RunConfig cfg;
  cfg.mode = galoscope::RunMode::galois;
  cfg.input_path = fixture("quartic.json");
  const galoscope::RunResult result = galoscope::run_pipeline(cfg);
  c.expect(result.certifications_ok, "pipeline reported a failed certification");
  const json report = json::parse(result.json);

  const auto& points = report["witness"]["points"];
  c.expect_eq(points.size(), std::size_t(2), "branch witness cardinality");
  if (points.size() == 2) {
    const Complex w0(points[0]["re"].get<double>(), points[0]["im"].get<double>());
    const Complex w1(points[1]["re"].get<double>(), points[1]["im"].get<double>());
    c.expect(std::abs(w0 - Complex(0, 0)) < 1e-8, "first witness point is not 0 within 1e-8");
    c.expect(std::abs(w1 - Complex(4, 0)) < 1e-8, "second witness point is not 4 within 1e-8");
  }

  // Cycle types of the two diamond generators: one transposition, one double
  // transposition, in witness order.
  const auto& gens = report["generators"];
  c.expect_eq(gens.size(), std::size_t(2), "generator count");
  std::vector<std::vector<int>> types;
  for (const auto& g : gens)
    types.push_back(Permutation::parse(g["cycles"].get<std::string>(), 4).cycle_type());
  std::sort(types.begin(), types.end());
  const std::vector<std::vector<int>> want_types = {{2}, {2, 2}};
  c.expect(types == want_types, "generator cycle types are not {2-cycle, double 2-cycle}");

  c.expect_eq(report["group"]["order"].get<std::string>(), std::string("8"), "group order");

  // The pinned base point 3 has fiber {-sqrt3, -1, 1, sqrt3} in sorted order,
  // so the size-2 blocks pairing x with -x are {1,4} and {2,3}.
  const auto& fiber = report["fiber"];
  c.expect_eq(fiber.size(), std::size_t(4), "fiber cardinality");
  const double s3 = std::sqrt(3.0);
  const std::vector<double> want_fiber = {-s3, -1.0, 1.0, s3};
  for (std::size_t i = 0; i < fiber.size() && i < 4; ++i) {
    const Complex x(fiber[i][0]["re"].get<double>(), fiber[i][0]["im"].get<double>());
    c.expect(std::abs(x - Complex(want_fiber[i], 0)) < 1e-6,
             "fiber point " + std::to_string(i) + " does not match the sorted quartic roots");
  }
  const json want_blocks = json::parse("[[[1,4],[2,3]]]");
  c.expect(report["group"]["minimal_block_systems"] == want_blocks,
           "minimal block systems are not {{1,4},{2,3}}");
  c.expect_eq(report["group"]["primitive"].get<bool>(), false, "primitivity");
}

// ---------------------------------------------------------------------------
// Criterion 2: charted projective cubic family on its pinned line.

void criterion_cubic_family(Checks& c) {
  galoscope::RunConfig cfg;
  cfg.mode = galoscope::RunMode::galois;
  cfg.input_path = fixture("cubic-family.json");
  const galoscope::RunResult result = galoscope::run_pipeline(cfg);
  c.expect(result.certifications_ok, "pipeline reported a failed certification");
  const json report = json::parse(result.json);

  const std::vector<Complex> want = {
      {-0.64366, -0.95874}, {-0.64366, 0.95874}, {-0.18202, 0.0}, {1.0, 0.0}};
  const auto& points = report["witness"]["points"];
  c.expect_eq(points.size(), std::size_t(4), "branch witness cardinality");
  std::vector<bool> used(points.size(), false);
  for (const Complex& target : want) {
    bool found = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (used[i])
        continue;
      const Complex w(points[i]["re"].get<double>(), points[i]["im"].get<double>());
      if (std::abs(w - target) < 1e-4) {
        used[i] = found = true;
        break;
      }
    }
    std::ostringstream os;
    os << "no witness point within 1e-4 of (" << target.real() << ", " << target.imag() << ")";
    c.expect(found, os.str());
  }

  const auto& gens = report["generators"];
  c.expect_eq(gens.size(), std::size_t(4), "generator count");
  int transpositions = 0;
  for (const auto& g : gens) {
    const auto type = Permutation::parse(g["cycles"].get<std::string>(), 3).cycle_type();
    if (type == std::vector<int>{2})
      ++transpositions;
  }
  c.expect_eq(transpositions, 4, "transposition count among the generators");
  c.expect_eq(report["group"]["order"].get<std::string>(), std::string("6"), "group order");
  c.expect(report["group"]["transitivity_degree"].get<int>() >= 2, "group is not 2-transitive");
}

// ---------------------------------------------------------------------------
// Criterion 3: group engine on the 27-lines monodromy permutations.

void criterion_lines_group(Checks& c) {
  const auto file = galoscope::load_permutation_file(fixture("cubic-surface-lines.perms"));
  c.expect_eq(file.degree, 27, "permutation degree");
  const PermutationGroup group(file.degree, file.permutations);
  c.expect_eq(group.order().to_string(), std::string("51840"), "group order");

  const auto pair_sizes = sorted_sizes(group.orbits_on_tuples(2));
  c.expect(pair_sizes == std::vector<std::size_t>{270, 432},
           "pair-orbit sizes " + seq_string(pair_sizes) + " are not {270, 432}");

  const auto triple_sizes = sorted_sizes(group.orbits_on_tuples(3));
  const std::vector<std::size_t> want_triples = {270, 2160, 2160, 2160, 2160, 2160, 2160, 4320};
  c.expect(triple_sizes == want_triples,
           "triple-orbit sizes " + seq_string(triple_sizes) + " are not {270, 2160 x6, 4320}");

  std::vector<galoscope::OrbitalGraphInfo> graphs;
  const bool primitive = group.is_primitive(&graphs);
  c.expect(primitive, "connectivity test does not report the group primitive");
  c.expect_eq(graphs.size(), std::size_t(2), "orbital graph count");
  for (const auto& g : graphs) {
    c.expect(g.connected, "an orbital graph is disconnected");
    c.expect_eq(g.diameter, 2, "orbital graph diameter");
  }
}

// ---------------------------------------------------------------------------
// Criterion 4: group engine on the four-bar synthesis permutations.

void criterion_fourbar_group(Checks& c) {
  const auto file = galoscope::load_permutation_file(fixture("fourbar-synthesis.perms"));
  c.expect_eq(file.degree, 16, "permutation degree");
  const PermutationGroup group(file.degree, file.permutations);
  c.expect_eq(group.order().to_string(), std::string("24"), "group order");

  const auto orbits = group.point_orbits();
  std::vector<std::size_t> sizes;
  for (const auto& o : orbits)
    sizes.push_back(o.size());
  std::sort(sizes.begin(), sizes.end());
  c.expect(sizes == std::vector<std::size_t>{4, 12},
           "point-orbit sizes " + seq_string(sizes) + " are not {4, 12}");

  // The size-4 orbit must be carried into itself by every generator.
  for (const auto& orbit : orbits) {
    if (orbit.size() != 4)
      continue;
    const std::set<int> members(orbit.begin(), orbit.end());
    for (const auto& g : group.generators())
      for (int p : orbit)
        c.expect(members.count(g.apply(p)) == 1,
                 "a generator moves point " + std::to_string(p + 1) + " out of the size-4 orbit");
  }
}

// ---------------------------------------------------------------------------
// Criterion 5: group engine on the ML-estimation generators.

void criterion_ml_group(Checks& c) {
  const auto file = galoscope::load_permutation_file(fixture("ml-estimation.perms"));
  c.expect_eq(file.degree, 6, "permutation degree");
  const PermutationGroup group(file.degree, file.permutations);
  c.expect_eq(group.order().to_string(), std::string("24"), "group order");
  c.expect(group.is_transitive(), "group is not transitive on the 6 points");
}

// ---------------------------------------------------------------------------
// Criterion 6: pair-fiber decomposition of the quartic cover.

void criterion_quartic_pairs(Checks& c) {
  const PolySystem sys = quartic_system();
  const auto line = galoscope::LineEmbedding::identity();
  galoscope::FiberConfig cfg;
  galoscope::RandomStream rng(2024);
  const auto run =
      galoscope::branch_point_generators(sys, line, cfg.monodromy, rng, Complex(3, 0));
  const auto fps = galoscope::build_fiber_power(galoscope::restrict_to_line(sys, line), 2);
  const auto dec = galoscope::decompose_by_monodromy(fps, run, cfg, rng);

  c.expect(dec.all_certified, "a part failed the trace certification");
  std::vector<int> degrees = dec.degrees;
  std::sort(degrees.begin(), degrees.end());
  c.expect(degrees == std::vector<int>{4, 8},
           "part sizes " + seq_string(degrees) + " are not {4, 8}");

  // The size-4 part must be exactly the antipodal pairs {x, -x}: locate the
  // indices of the four fiber values and compare index sets.
  const auto index_of = [&](Complex value) {
    for (std::size_t i = 0; i < run.base.fiber.size(); ++i)
      if (std::abs(run.base.fiber[i][0] - value) < 1e-6)
        return static_cast<int>(i);
    return -1;
  };
  const double s3 = std::sqrt(3.0);
  const int a = index_of(Complex(-s3, 0)), b = index_of(Complex(s3, 0));
  const int d = index_of(Complex(-1, 0)), e = index_of(Complex(1, 0));
  c.expect(a >= 0 && b >= 0 && d >= 0 && e >= 0, "fiber does not consist of the quartic roots");
  std::set<std::vector<int>> want_pairs = {{a, b}, {b, a}, {d, e}, {e, d}};
  bool matched = false;
  for (std::size_t p = 0; p < dec.parts.size(); ++p) {
    if (dec.degrees[p] != 4)
      continue;
    std::set<std::vector<int>> got;
    for (int tuple_index : dec.parts[p])
      got.insert(dec.tuples[tuple_index]);
    matched = (got == want_pairs);
  }
  c.expect(matched, "the size-4 part is not the antipodal pair set");

  // Orbit sizes from the permutation group must agree with the decomposition.
  std::vector<Permutation> sigmas;
  for (const auto& g : run.generators)
    sigmas.push_back(g.sigma);
  const PermutationGroup group(run.base.k, sigmas);
  auto orbit_sizes = sorted_sizes(group.orbits_on_tuples(2));
  std::vector<std::size_t> part_sizes(degrees.begin(), degrees.end());
  c.expect(orbit_sizes == part_sizes,
           "group orbit sizes disagree with the decomposition part sizes");
}

// ---------------------------------------------------------------------------
// Criterion 7: the group read off the distinct-triple fiber power.

void criterion_quartic_triples(Checks& c) {
  const PolySystem sys = quartic_system();
  galoscope::FiberConfig cfg;
  galoscope::RandomStream rng(2024);
  const auto fpg =
      galoscope::galois_from_fiber_power(sys, galoscope::LineEmbedding::identity(), cfg, rng);

  c.expect_eq(fpg.decomposition.s, 3, "tuple length");
  std::vector<int> degrees = fpg.decomposition.degrees;
  std::sort(degrees.begin(), degrees.end());
  c.expect(degrees == std::vector<int>{8, 8, 8},
           "triple-fiber part sizes " + seq_string(degrees) + " are not {8, 8, 8}");

  c.expect_eq(fpg.elements.size(), std::size_t(8), "recovered element count");
  const PermutationGroup recovered(4, fpg.elements);
  c.expect_eq(recovered.order().to_string(), std::string("8"), "recovered group order");

  // Same group as the branch-point generators: equal orders plus containment.
  std::vector<Permutation> sigmas;
  for (const auto& g : fpg.run.generators)
    sigmas.push_back(g.sigma);
  const PermutationGroup direct(4, sigmas);
  c.expect_eq(direct.order().to_string(), std::string("8"), "branch-point group order");
  for (const auto& sigma : sigmas)
    c.expect(recovered.contains(sigma),
             "a branch-point generator is missing from the recovered group");
}

// ---------------------------------------------------------------------------
// Criterion 8: property suite.

void property_newton_quadratic(Checks& c) {
  // Newton on x^4 - 4x^2 + 3 from 1.8 converges to sqrt(3); the error ratio
  // e1/e0^2 approaches |f''/(2 f')| at the root, which is 28/(8 sqrt 3).
  const PolySystem sys = quartic_system();
  const Complex root(std::sqrt(3.0), 0);
  const double expected_ratio = 28.0 / (8.0 * std::sqrt(3.0));
  Vector point(2);
  point << Complex(1.8, 0), Complex(3, 0);
  std::vector<double> errors = {std::abs(point[0] - root)};
  for (int i = 0; i < 4; ++i) {
    const Vector value = sys.eval(point);
    const galoscope::Matrix jac = sys.jacobian_vars(point);
    point[0] -= value[0] / jac(0, 0);
    errors.push_back(std::abs(point[0] - root));
  }
  for (int i = 0; i < 3; ++i) {
    if (errors[i + 1] < 1e-14)
      break;  // hit the noise floor early; quadratic order already visible
    const double ratio = errors[i + 1] / (errors[i] * errors[i]);
    c.expect(ratio > expected_ratio / 3 && ratio < expected_ratio * 3,
             "Newton error ratio " + std::to_string(ratio) + " is not quadratic");
  }
  c.expect(errors[4] < 1e-12, "Newton did not reach the root in four steps");
}

void property_jacobian_vs_differences(Checks& c) {
  // Central differences on a dense two-variable system with complex
  // coefficients must agree with the analytic Jacobian to 1e-6 relative.
  const std::vector<std::string> names = {"x", "y", "t"};
  PolySystem sys({"x", "y"}, {"t"},
                 {galoscope::parse_polynomial("x^3*y - 2*y^2 + t*x + (1+2*I)*x*y", names),
                  galoscope::parse_polynomial("y^3 + I*x^2 - 3*x*y*t + 7", names)});
  Vector point(3);
  point << Complex(0.7, -0.3), Complex(-0.4, 0.9), Complex(0.2, 0.1);
  const galoscope::Matrix jac = sys.jacobian_vars(point);
  const double h = 1e-5;
  for (int j = 0; j < 2; ++j) {
    Vector up = point, down = point;
    up[j] += h;
    down[j] -= h;
    const Vector diff = (sys.eval(up) - sys.eval(down)) / Complex(2 * h, 0);
    for (int i = 0; i < 2; ++i) {
      const double scale = std::max(1.0, std::abs(jac(i, j)));
      c.expect(std::abs(diff[i] - jac(i, j)) / scale <= 1e-6,
               "finite difference disagrees with the Jacobian entry (" + std::to_string(i) +
                   "," + std::to_string(j) + ")");
    }
  }
}

void property_closed_loop_invariance(Checks& c) {
  // Transporting the fiber around a closed loop must return the same set of
  // points, matched one-to-one within the endpoint tolerance.
  const PolySystem sys = quartic_system();
  const auto line = galoscope::LineEmbedding::identity();
  galoscope::MonodromyConfig cfg;
  galoscope::RandomStream rng(7);
  const auto run = galoscope::branch_point_generators(sys, line, cfg, rng, Complex(3, 0));
  const auto loop = galoscope::build_diamond_loop(Complex(4, 0), run.base.p, run.epsilon);

  const PolySystem on_line = galoscope::restrict_to_line(sys, line);
  const auto hop = galoscope::transport_fiber(on_line, run.base.fiber, loop.polygon,
                                              cfg.branch.solver.tracker);
  c.expect(hop.ok, "the loop transport failed: " + hop.failure);
  if (!hop.ok)
    return;
  std::vector<bool> used(hop.points.size(), false);
  for (const auto& endpoint : hop.points) {
    bool matched = false;
    for (std::size_t j = 0; j < run.base.fiber.size(); ++j) {
      if (!used[j] && (endpoint - run.base.fiber[j]).norm() < 1e-6) {
        used[j] = matched = true;
        break;
      }
    }
    c.expect(matched, "a transported endpoint does not return to the start fiber");
  }
}

void property_loop_product(Checks& c, const PolySystem& sys_on_line,
                           const galoscope::BranchPointRun& run,
                           const galoscope::MonodromyConfig& cfg, const std::string& label) {
  // The permutation of a concatenated loop is the left-to-right product of
  // the two factors' permutations.
  if (run.witness.points.size() < 2) {
    c.failures.push_back(label + ": needs at least two witness points");
    return;
  }
  const auto loop_a =
      galoscope::build_diamond_loop(run.witness.points[0].t, run.base.p, run.epsilon);
  const auto loop_b =
      galoscope::build_diamond_loop(run.witness.points[1].t, run.base.p, run.epsilon);
  const auto sigma_a = galoscope::monodromy_around(sys_on_line, run.base, loop_a, cfg);
  const auto sigma_b = galoscope::monodromy_around(sys_on_line, run.base, loop_b, cfg);

  galoscope::LoopPath combined;
  combined.polygon = loop_a.polygon;
  combined.polygon.insert(combined.polygon.end(), loop_b.polygon.begin() + 1,
                          loop_b.polygon.end());
  combined.epsilon = run.epsilon;
  const auto sigma_ab = galoscope::monodromy_around(sys_on_line, run.base, combined, cfg);
  c.expect(sigma_ab.sigma == sigma_a.sigma * sigma_b.sigma,
           label + ": concatenated loop is not the product of the factors");
}

void property_determinism(Checks& c) {
  galoscope::RunConfig cfg;
  cfg.mode = galoscope::RunMode::galois;
  cfg.input_path = fixture("quartic.json");
  cfg.seed = 99;
  const auto first = galoscope::run_pipeline(cfg);
  const auto second = galoscope::run_pipeline(cfg);
  c.expect(first.json == second.json, "two identical runs differ byte for byte");
}

void property_conjugation_invariance(Checks& c) {
  const auto file = galoscope::load_permutation_file(fixture("ml-estimation.perms"));
  const PermutationGroup group(file.degree, file.permutations);
  const auto base_report = group.report();

  const Permutation conj = Permutation::parse("(1,4,2,6)(3,5)", file.degree);
  std::vector<Permutation> conjugated;
  for (const auto& g : file.permutations)
    conjugated.push_back(conj.inverse() * g * conj);
  const auto moved_report = PermutationGroup(file.degree, conjugated).report();

  c.expect_eq(moved_report.order, base_report.order, "conjugated order");
  c.expect_eq(moved_report.transitivity_degree, base_report.transitivity_degree,
              "conjugated transitivity degree");
  c.expect_eq(moved_report.primitive, base_report.primitive, "conjugated primitivity");
  c.expect_eq(moved_report.classification, base_report.classification,
              "conjugated classification");
  auto sorted = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  c.expect(sorted(moved_report.point_orbit_sizes) == sorted(base_report.point_orbit_sizes),
           "conjugated point-orbit sizes differ");
  c.expect(sorted(moved_report.pair_orbit_sizes) == sorted(base_report.pair_orbit_sizes),
           "conjugated pair-orbit sizes differ");
  c.expect(sorted(moved_report.triple_orbit_sizes) == sorted(base_report.triple_orbit_sizes),
           "conjugated triple-orbit sizes differ");
  c.expect_eq(moved_report.minimal_block_systems.size(),
              base_report.minimal_block_systems.size(), "conjugated block-system count");
}

void property_orbit_sum(Checks& c) {
  const std::vector<std::string> files = {"cubic-surface-lines.perms", "fourbar-synthesis.perms",
                                          "ml-estimation.perms"};
  for (const auto& name : files) {
    const auto file = galoscope::load_permutation_file(fixture(name));
    const PermutationGroup group(file.degree, file.permutations);
    for (int s = 2; s <= 3; ++s) {
      std::size_t total = 0;
      for (const auto& orbit : group.orbits_on_tuples(s))
        total += orbit.size();
      std::size_t want = 1;
      for (int i = 0; i < s; ++i)
        want *= static_cast<std::size_t>(file.degree - i);
      c.expect_eq(total, want, name + " tuple count for s=" + std::to_string(s));
    }
  }
}

void property_wreath_order(Checks& c) {
  // The order of the block-pair wreath group on 60 points, 2^30 * 30!, as a
  // big-integer product against its printed decimal value.
  const BigUint order = BigUint::pow2(30) * BigUint::factorial(30);
  c.expect_eq(order.to_string(),
              std::string("284813089515958324736640819941867520000000"),
              "2^30 * 30!");
  const BigUint formation = BigUint::pow2(13) * BigUint::factorial(13);
  c.expect(formation.fits_u64() && formation.value_u64() == 51011754393600ull,
           "2^13 * 13! is not 51011754393600");
}

void criterion_properties(Checks& c) {
  property_newton_quadratic(c);
  property_jacobian_vs_differences(c);
  property_closed_loop_invariance(c);

  {
    const PolySystem sys = quartic_system();
    const auto line = galoscope::LineEmbedding::identity();
    galoscope::MonodromyConfig cfg;
    galoscope::RandomStream rng(11);
    const auto run = galoscope::branch_point_generators(sys, line, cfg, rng, Complex(3, 0));
    property_loop_product(c, galoscope::restrict_to_line(sys, line), run, cfg, "quartic");
  }
  {
    galoscope::RandomStream rng(11);
    const PolySystem on_line = cubic_family_on_line(rng);
    galoscope::MonodromyConfig cfg;
    const auto run = galoscope::branch_point_generators(on_line, galoscope::LineEmbedding::identity(),
                                                        cfg, rng, Complex(0.4, 0.3));
    property_loop_product(c, galoscope::restrict_to_line(on_line, galoscope::LineEmbedding::identity()),
                          run, cfg, "cubic family");
  }

  property_determinism(c);
  property_conjugation_invariance(c);
  property_orbit_sum(c);
  property_wreath_order(c);
}

struct Criterion {
  int number;
  std::string description;
  double time_limit_s;
  std::function<void(Checks&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "quartic cover end to end: witness {0,4}, cycle types, order 8, blocks", 5.0,
       criterion_quartic},
      {2, "charted cubic family: four branch values, four transpositions, order 6", 5.0,
       criterion_cubic_family},
      {3, "27-lines permutation data: order 51840, pair/triple orbits, connectivity", 10.0,
       criterion_lines_group},
      {4, "four-bar synthesis permutation data: order 24, orbits {4,12}, invariance", 1.0,
       criterion_fourbar_group},
      {5, "maximum-likelihood generators: order 24, transitive on 6 points", 1.0,
       criterion_ml_group},
      {6, "quartic pair-fiber decomposition: certified parts {4,8}, antipodal part", 10.0,
       criterion_quartic_pairs},
      {7, "group recovered from the distinct-triple fiber power equals order 8", 10.0,
       criterion_quartic_triples},
      {8, "property suite: Newton order, Jacobian, loops, determinism, invariants", 0.0,
       criterion_properties},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(checks);
    } catch (const std::exception& err) {
      checks.failures.push_back(std::string("exception: ") + err.what());
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    if (criterion.time_limit_s > 0 && elapsed.count() > criterion.time_limit_s) {
      std::ostringstream os;
      os << "runtime " << elapsed.count() << " s exceeds the " << criterion.time_limit_s
         << " s limit";
      checks.failures.push_back(os.str());
    }
    for (const auto& detail : checks.failures)
      std::fprintf(stderr, "  criterion %d: %s\n", criterion.number, detail.c_str());
    std::printf("%s criterion %d: %s (%.2f s)\n", checks.failures.empty() ? "PASS" : "FAIL",
                criterion.number, criterion.description.c_str(), elapsed.count());
    if (!checks.failures.empty())
      ++failed;
  }
  return failed;
}
