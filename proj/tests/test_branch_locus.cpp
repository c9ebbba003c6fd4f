#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <galoscope/branch_locus.hpp>
#include <galoscope/charts.hpp>
#include <galoscope/errors.hpp>
#include <galoscope/parser.hpp>
#include <galoscope/rng.hpp>
#include <galoscope/system.hpp>

#include <cmath>
#include <vector>

using galoscope::BranchConfig;
using galoscope::BranchWitness;
using galoscope::Complex;
using galoscope::LineEmbedding;
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

// The bivariate-cubic family u*x^3 + v*y^3 - w*x*y^2 in a random affine chart
// of its projective fiber (one chart coordinate).
PolySystem charted_cubic_family(galoscope::RandomStream& rng) {
  auto proj = make_system({"x", "y"}, {"u", "v", "w"}, {"u*x^3 + v*y^3 - w*x*y^2"});
  auto chart = galoscope::random_affine_chart(proj, {{"x", "y"}}, rng);
  return galoscope::apply_chart(proj, chart);
}

int total_multiplicity(const BranchWitness& bw) {
  int sum = 0;
  for (const auto& wp : bw.points) sum += wp.multiplicity;
  return sum;
}
}  // namespace

TEST_CASE("hypersurface critical system is the equation plus its derivative") {
  auto sys = make_system({"x"}, {"t"}, {"x^4 - 4*x^2 + t"});
  galoscope::RandomStream rng(1);
  auto cs = galoscope::build_critical_system(sys, LineEmbedding::identity(), rng);
  CHECK(cs.x_count == 1);
  CHECK(cs.v_count == 0);
  REQUIRE(cs.augmented.equation_count() == 2);
  CHECK(cs.augmented.equations()[0] ==
        galoscope::parse_polynomial("x^4 - 4*x^2 + t", {"x", "t"}));
  CHECK(cs.augmented.equations()[1] == galoscope::parse_polynomial("4*x^3 - 8*x", {"x", "t"}));
  auto view = cs.solver_view();
  CHECK(view.parameter_count() == 0);
  CHECK(view.variable_count() == 2);
}

TEST_CASE("quartic witness: branch points 0 and 4 with multiplicities 1 and 2") {
  auto sys = make_system({"x"}, {"t"}, {"x^4 - 4*x^2 + t"});
  galoscope::RandomStream rng(42);
  auto bw = galoscope::compute_branch_witness(sys, LineEmbedding::identity(), BranchConfig{}, rng);
  REQUIRE(bw.points.size() == 2);
  CHECK(std::abs(bw.points[0].t - Complex(0, 0)) < 1e-8);
  CHECK(std::abs(bw.points[1].t - Complex(4, 0)) < 1e-8);
  CHECK(bw.points[0].multiplicity == 1);
  CHECK(bw.points[1].multiplicity == 2);
  CHECK(bw.critical_count == 3);
  CHECK(bw.discarded == 0);
  CHECK(bw.cover_degree == 4);
  CHECK(bw.min_separation == doctest::Approx(4.0));
  CHECK(galoscope::witness_degree_check(bw, 2));
  CHECK_FALSE(galoscope::witness_degree_check(bw, 3));
}

TEST_CASE("depressed cubic witness: branch points at -2 and 2") {
  auto sys = make_system({"x"}, {"t"}, {"x^3 - 3*x + t"});
  galoscope::RandomStream rng(7);
  auto bw = galoscope::compute_branch_witness(sys, LineEmbedding::identity(), BranchConfig{}, rng);
  REQUIRE(bw.points.size() == 2);
  CHECK(std::abs(bw.points[0].t - Complex(-2, 0)) < 1e-8);
  CHECK(std::abs(bw.points[1].t - Complex(2, 0)) < 1e-8);
  CHECK(bw.cover_degree == 3);
  CHECK(total_multiplicity(bw) == bw.critical_count - bw.discarded);
}

TEST_CASE("cubic family on the pinned line reproduces the four known branch points") {
  galoscope::RandomStream rng(2026);
  auto affine = charted_cubic_family(rng);
  LineEmbedding line{{Complex(1, 0), Complex(2, 0), Complex(5, 0)},
                     {Complex(-1, 0), Complex(-3, 0), Complex(7, 0)}};
  auto bw = galoscope::compute_branch_witness(affine, line, BranchConfig{}, rng);
  REQUIRE(bw.points.size() == 4);
  // discriminant roots of (1-t, 2-3t, 5+7t): sorted by (re, im)
  const std::vector<Complex> expected = {
      Complex(-0.643663, -0.958737),
      Complex(-0.643663, 0.958737),
      Complex(-0.182024, 0.0),
      Complex(1.0, 0.0),
  };
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(bw.points[i].t - expected[i]) < 1e-4);
    CHECK(bw.points[i].multiplicity == 1);
  }
  CHECK(bw.cover_degree == 3);
  CHECK(galoscope::witness_degree_check(bw, 4));
}

TEST_CASE("witness cardinality does not depend on the random line") {
  galoscope::RandomStream rng(5151);
  auto affine = charted_cubic_family(rng);
  auto line_a = LineEmbedding::random(3, rng);
  auto line_b = LineEmbedding::random(3, rng);
  auto bw_a = galoscope::compute_branch_witness(affine, line_a, BranchConfig{}, rng);
  auto bw_b = galoscope::compute_branch_witness(affine, line_b, BranchConfig{}, rng);
  CHECK(bw_a.points.size() == 4);
  CHECK(bw_b.points.size() == 4);
  CHECK(bw_a.cover_degree == 3);
  CHECK(bw_b.cover_degree == 3);
}

TEST_CASE("null-vector augmentation handles a two-variable cover") {
  // x^2+y^2 = t, xy = 1: Jacobian degenerates at x = ±y, giving branch points
  // t = ±2, each covered by two critical points.
  auto sys = make_system({"x", "y"}, {"t"}, {"x^2 + y^2 - t", "x*y - 1"});
  galoscope::RandomStream rng(31);
  auto cs = galoscope::build_critical_system(sys, LineEmbedding::identity(), rng);
  CHECK(cs.x_count == 2);
  CHECK(cs.v_count == 2);
  CHECK(cs.augmented.equation_count() == 5);
  CHECK(cs.augmented.variable_count() == 4);

  galoscope::RandomStream rng2(32);
  auto bw = galoscope::compute_branch_witness(sys, LineEmbedding::identity(), BranchConfig{}, rng2);
  REQUIRE(bw.points.size() == 2);
  CHECK(std::abs(bw.points[0].t - Complex(-2, 0)) < 1e-8);
  CHECK(std::abs(bw.points[1].t - Complex(2, 0)) < 1e-8);
  CHECK(bw.points[0].multiplicity == 2);
  CHECK(bw.points[1].multiplicity == 2);
  CHECK(bw.critical_count == 4);
  CHECK(bw.cover_degree == 4);
}

TEST_CASE("declared degenerate points are removed from fibers and witnesses") {
  auto sys = make_system({"x", "y"}, {"t"}, {"x^2 + y^2 - t", "x*y - 1"});
  BranchConfig cfg;
  Vector origin(2);
  origin << Complex(1, 0), Complex(1, 0);
  cfg.exclude_x = {origin};

  galoscope::RandomStream rng(33);
  auto fiber = galoscope::solve_fiber_filtered(sys, Complex(2, 0), cfg, rng);
  // over t=2 the full fiber is {(1,1)x2 double, (-1,-1)x2 double}; excluding
  // (1,1) leaves the (-1,-1) cluster
  for (const auto& sol : fiber.solutions)
    CHECK((sol.point - origin).norm() > cfg.exclude_tol);

  galoscope::RandomStream rng2(34);
  auto bw = galoscope::compute_branch_witness(sys, LineEmbedding::identity(), cfg, rng2);
  REQUIRE(bw.points.size() == 2);
  CHECK(bw.points[0].multiplicity == 2);  // t=-2 untouched
  CHECK(bw.points[1].multiplicity == 1);  // (1,1) over t=2 excluded
  CHECK(bw.discarded == 1);
  CHECK(total_multiplicity(bw) == bw.critical_count - bw.discarded);
}

TEST_CASE("overdetermined restrictions are squared up and extraneous zeros filtered") {
  // the second equation is (x-1)*(x^2-t): redundant on the solution set
  auto sys = make_system({"x"}, {"t"}, {"x^2 - t", "x^3 - x^2 - t*x + t"});
  galoscope::RandomStream rng(77);
  auto cs = galoscope::build_critical_system(sys, LineEmbedding::identity(), rng);
  CHECK(cs.v_count == 1);
  CHECK(cs.augmented.equation_count() == 3);  // squared up from 5
  galoscope::RandomStream rng2(78);
  auto bw = galoscope::compute_branch_witness(sys, LineEmbedding::identity(), BranchConfig{}, rng2);
  REQUIRE(bw.points.size() == 1);
  CHECK(std::abs(bw.points[0].t - Complex(0, 0)) < 1e-6);
  CHECK(bw.cover_degree == 2);
  CHECK(total_multiplicity(bw) == bw.critical_count - bw.discarded);
}

TEST_CASE("two branch points within the ambiguity margin abort the computation") {
  // (x^2 - t)(x^2 - t + 5e-6): branch points t=0 and t=5e-6
  auto sys = make_system({"x"}, {"t"},
                         {"x^4 - 2*t*x^2 + 5/1000000*x^2 + t^2 - 5/1000000*t"});
  galoscope::RandomStream rng(9);
  CHECK_THROWS_AS(
      galoscope::compute_branch_witness(sys, LineEmbedding::identity(), BranchConfig{}, rng),
      galoscope::NumericError);
}

TEST_CASE("a positive-dimensional restriction is rejected") {
  auto sys = make_system({"x", "y"}, {"t"}, {"x*y - t"});
  galoscope::RandomStream rng(3);
  CHECK_THROWS_AS(galoscope::build_critical_system(sys, LineEmbedding::identity(), rng),
                  galoscope::InputError);
}
