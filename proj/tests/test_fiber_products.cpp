#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <galoscope/charts.hpp>
#include <galoscope/errors.hpp>
#include <galoscope/fiber_products.hpp>
#include <galoscope/group.hpp>
#include <galoscope/monodromy.hpp>
#include <galoscope/parser.hpp>
#include <galoscope/rng.hpp>
#include <galoscope/solver.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

using galoscope::BranchPointRun;
using galoscope::Complex;
using galoscope::FiberConfig;
using galoscope::FiberPowerSystem;
using galoscope::LineEmbedding;
using galoscope::Matrix;
using galoscope::Permutation;
using galoscope::PolySystem;
using galoscope::Vector;

namespace {
PolySystem make_system(const std::vector<std::string>& vars,
                       const std::vector<std::string>& params,
                       const std::vector<std::string>& eqs) {
  std::vector<std::string> names = vars;
  names.insert(names.end(), params.begin(), params.end());
  std::vector<galoscope::Polynomial> polys;
  for (const auto& e : eqs) polys.push_back(galoscope::parse_polynomial(e, names));
  return PolySystem(vars, params, polys);
}

PolySystem quartic() { return make_system({"x"}, {"t"}, {"x^4 - 4*x^2 + t"}); }

PolySystem charted_cubic_family(galoscope::RandomStream& rng) {
  auto proj = make_system({"x", "y"}, {"u", "v", "w"}, {"u*x^3 + v*y^3 - w*x*y^2"});
  auto chart = galoscope::random_affine_chart(proj, {{"x", "y"}}, rng);
  return galoscope::apply_chart(proj, chart);
}

BranchPointRun quartic_run(galoscope::RandomStream& rng) {
  return galoscope::branch_point_generators(quartic(), LineEmbedding::identity(),
                                            galoscope::MonodromyConfig{}, rng, Complex(3, 0));
}

std::vector<std::vector<int>> part_tuples(const galoscope::WitnessDecomposition& dec,
                                          std::size_t part) {
  std::vector<std::vector<int>> out;
  for (int idx : dec.parts[part]) out.push_back(dec.tuples[idx]);
  return out;
}
}  // namespace

TEST_CASE("fiber power system is the renamed product sharing the parameter") {
  auto cover = quartic();
  auto fps = galoscope::build_fiber_power(cover, 2);
  CHECK(fps.s == 2);
  CHECK(fps.system.variable_count() == 2);
  CHECK(fps.system.parameter_count() == 1);
  CHECK(fps.system.equation_count() == 2);
  CHECK(fps.system.variables() == std::vector<std::string>{"x_1", "x_2"});

  // The product equations evaluate as two independent copies of the cover.
  galoscope::RandomStream rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Complex a = rng.unit_disc(), b = rng.unit_disc(), t = rng.unit_disc();
    Vector pt(3);
    pt << a, b, t;
    Vector vals;
    Matrix jac;
    fps.system.eval_block(pt, vals, jac, -1, nullptr);
    Vector pa(2), pb(2);
    pa << a, t;
    pb << b, t;
    Vector va, vb;
    Matrix ja, jb;
    cover.eval_block(pa, va, ja, -1, nullptr);
    cover.eval_block(pb, vb, jb, -1, nullptr);
    CHECK(std::abs(vals[0] - va[0]) < 1e-14);
    CHECK(std::abs(vals[1] - vb[0]) < 1e-14);
  }

  // Its fiber over a regular value is the full Cartesian square.
  galoscope::SolveSummary sq = galoscope::solve_fiber(fps.system, Complex(3, 0), rng,
                                                      galoscope::SolverConfig{});
  CHECK(sq.solutions.size() == 16);

  auto triple = galoscope::build_fiber_power(cover, 3);
  CHECK(triple.system.variable_count() == 3);
  CHECK(triple.system.equation_count() == 3);

  CHECK_THROWS_AS(galoscope::build_fiber_power(cover, 0), galoscope::InputError);
  CHECK_THROWS_AS(galoscope::build_fiber_power(cover, 9), galoscope::InputError);

  // Copy names dodge collisions with existing names.
  auto odd = make_system({"x_1"}, {"t"}, {"x_1^2 - t"});
  auto odd_fps = galoscope::build_fiber_power(odd, 2);
  CHECK(odd_fps.system.variables()[0] != odd_fps.system.variables()[1]);
}

TEST_CASE("quartic pair fiber splits into certified parts of sizes 8 and 4") {
  galoscope::RandomStream rng(21);
  auto run = quartic_run(rng);
  auto fps = galoscope::build_fiber_power(galoscope::restrict_to_line(quartic(), run.witness.line),
                                          2);
  FiberConfig cfg;
  auto dec = galoscope::decompose_by_monodromy(fps, run, cfg, rng);
  CHECK(dec.k == 4);
  CHECK(dec.s == 2);
  CHECK(dec.tuples.size() == 12);
  CHECK(dec.diagonal_count == 4);
  REQUIRE(dec.parts.size() == 2);
  CHECK(dec.degrees == std::vector<int>{8, 4});
  CHECK(dec.certified == std::vector<bool>{true, true});
  CHECK(dec.all_certified);
  // Monic cover: no parameter value sends a sheet to infinity.
  CHECK(dec.trace_poles.empty());

  // The size-4 part is the anti-diagonal component: pairs of opposite sheets
  // under the fiber order (-sqrt3, -1, 1, sqrt3).
  auto small = part_tuples(dec, 1);
  std::vector<std::vector<int>> expected = {{0, 3}, {1, 2}, {2, 1}, {3, 0}};
  CHECK(small == expected);

  // Two independent routes to the same orbit sizes: tuple tracking here,
  // pure group action in the permutation engine.
  std::vector<Permutation> gens;
  for (const auto& g : run.generators) gens.push_back(g.sigma);
  auto orbits = galoscope::PermutationGroup(4, gens).orbits_on_tuples(2);
  std::vector<int> orbit_sizes, dec_sizes = dec.degrees;
  for (const auto& o : orbits) orbit_sizes.push_back(static_cast<int>(o.size()));
  std::sort(orbit_sizes.begin(), orbit_sizes.end());
  std::sort(dec_sizes.begin(), dec_sizes.end());
  CHECK(orbit_sizes == dec_sizes);
}

TEST_CASE("random loops alone reach the same decomposition") {
  galoscope::RandomStream rng(33);
  auto run = quartic_run(rng);
  auto fps = galoscope::build_fiber_power(galoscope::restrict_to_line(quartic(), run.witness.line),
                                          2);
  BranchPointRun blind = run;
  blind.generators.clear();
  FiberConfig cfg;
  auto dec = galoscope::decompose_by_monodromy(fps, blind, cfg, rng);
  CHECK(dec.degrees == std::vector<int>{8, 4});
  CHECK(dec.all_certified);
  CHECK(dec.sampled_loops >= cfg.stable_samples);
}

TEST_CASE("trace test accepts component unions and rejects strict subsets") {
  galoscope::RandomStream rng(21);
  auto run = quartic_run(rng);
  auto fps = galoscope::build_fiber_power(galoscope::restrict_to_line(quartic(), run.witness.line),
                                          2);
  FiberConfig cfg;
  const Complex t0(3, 0), t1(3, 0.4), t2(3, -0.4);

  std::vector<std::vector<int>> all;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) all.push_back({a, b});
  CHECK(galoscope::trace_test(fps, run.base, all, t0, t1, t2, cfg));

  std::vector<std::vector<int>> anti = {{0, 3}, {1, 2}, {2, 1}, {3, 0}};
  CHECK(galoscope::trace_test(fps, run.base, anti, t0, t1, t2, cfg));

  std::vector<std::vector<int>> big;
  for (const auto& tup : all)
    if (std::find(anti.begin(), anti.end(), tup) == anti.end()) big.push_back(tup);
  CHECK(galoscope::trace_test(fps, run.base, big, t0, t1, t2, cfg));

  // A strict subset of one irreducible component has a nonlinear trace.
  std::vector<std::vector<int>> subset(big.begin(), big.begin() + 3);
  CHECK_FALSE(galoscope::trace_test(fps, run.base, subset, t0, t1, t2, cfg));

  CHECK_THROWS_AS(galoscope::trace_test(fps, run.base, all, t0, Complex(3, 0.4),
                                        Complex(3.4, 0), cfg),
                  galoscope::InputError);
  CHECK_THROWS_AS(galoscope::trace_test(fps, run.base, all, Complex(2, 0), t1, t2, cfg),
                  galoscope::InputError);
  CHECK_THROWS_AS(galoscope::trace_test(fps, run.base, {{0, 0, 0}}, t0, t1, t2, cfg),
                  galoscope::InputError);
}

TEST_CASE("group extracted from the triple fiber equals the branch-point group") {
  galoscope::RandomStream rng(55);
  FiberConfig cfg;
  auto fpg = galoscope::galois_from_fiber_power(quartic(), LineEmbedding::identity(), cfg, rng);
  CHECK(fpg.decomposition.s == 3);
  CHECK(fpg.decomposition.tuples.size() == 24);
  CHECK(fpg.decomposition.degrees == std::vector<int>{8, 8, 8});
  CHECK(fpg.decomposition.all_certified);
  REQUIRE(fpg.elements.size() == 8);
  CHECK(fpg.elements[0].is_identity());

  galoscope::PermutationGroup from_power(4, fpg.elements);
  CHECK(from_power.order().to_string() == "8");
  std::vector<Permutation> gens;
  for (const auto& g : fpg.run.generators) gens.push_back(g.sigma);
  galoscope::PermutationGroup from_loops(4, gens);
  CHECK(from_loops.order().to_string() == "8");
  for (const auto& el : fpg.elements) CHECK(from_loops.contains(el));
}

TEST_CASE("degree-2 cover reduces to the plain fiber and gives the swap group") {
  galoscope::RandomStream rng(8);
  FiberConfig cfg;
  auto sys = make_system({"x"}, {"t"}, {"x^2 - t"});
  auto fpg = galoscope::galois_from_fiber_power(sys, LineEmbedding::identity(), cfg, rng);
  CHECK(fpg.decomposition.s == 1);
  CHECK(fpg.decomposition.tuples.size() == 2);
  CHECK(fpg.decomposition.degrees == std::vector<int>{2});
  REQUIRE(fpg.elements.size() == 2);
  CHECK(fpg.elements[0].is_identity());
  CHECK(fpg.elements[1].to_cycle_string() == "(1,2)");
}

TEST_CASE("cubic family: irreducible pair fiber certifies a 2-transitive group") {
  galoscope::RandomStream rng(2024);
  auto sys = charted_cubic_family(rng);
  LineEmbedding line{{Complex(1, 0), Complex(2, 0), Complex(5, 0)},
                     {Complex(-1, 0), Complex(-3, 0), Complex(7, 0)}};
  FiberConfig cfg;
  auto fpg = galoscope::galois_from_fiber_power(sys, line, cfg, rng);
  CHECK(fpg.run.witness.cover_degree == 3);
  CHECK(fpg.decomposition.s == 2);
  // One off-diagonal component of degree 6: the group is 2-transitive.
  CHECK(fpg.decomposition.degrees == std::vector<int>{6});
  CHECK(fpg.decomposition.all_certified);
  // The affine chart makes the leading coefficient vary along the line, so
  // one sheet escapes to infinity at a finite parameter value; certification
  // must clear that pole or the sums are rational rather than affine-linear.
  CHECK(fpg.decomposition.trace_poles.size() == 1);
  REQUIRE(fpg.elements.size() == 6);
  galoscope::PermutationGroup group(3, fpg.elements);
  CHECK(group.order().to_string() == "6");
  CHECK(group.is_s_transitive(2));
}

TEST_CASE("decomposition is deterministic for a fixed seed") {
  auto once = [](std::uint64_t seed) {
    galoscope::RandomStream rng(seed);
    auto run = quartic_run(rng);
    auto fps = galoscope::build_fiber_power(
        galoscope::restrict_to_line(quartic(), run.witness.line), 2);
    FiberConfig cfg;
    return galoscope::decompose_by_monodromy(fps, run, cfg, rng);
  };
  auto a = once(77), b = once(77);
  CHECK(a.parts == b.parts);
  CHECK(a.sampled_loops == b.sampled_loops);
  CHECK(a.certified == b.certified);
}
