// Microbenchmarks for the three hot paths: polynomial system evaluation with
// Jacobian, continuation along one parameter segment, and stabilizer-chain
// construction for a moderately large permutation group.

#include <benchmark/benchmark.h>

#include <complex>
#include <string>
#include <vector>

#include "galoscope/charts.hpp"
#include "galoscope/group.hpp"
#include "galoscope/input.hpp"
#include "galoscope/parser.hpp"
#include "galoscope/rng.hpp"
#include "galoscope/system.hpp"
#include "galoscope/tracker.hpp"

using galoscope::Complex;
using galoscope::Matrix;
using galoscope::PolySystem;
using galoscope::Vector;

namespace {

std::string fixture(const std::string& name) {
  return std::string(GALOSCOPE_FIXTURE_DIR) + "/" + name;
}

// A dense degree-3 system in three variables and one parameter, the shape the
// critical-system solver spends its time on.
PolySystem dense_cubic_system() {
  const std::vector<std::string> names = {"x", "y", "z", "t"};
  return PolySystem(
      {"x", "y", "z"}, {"t"},
      {galoscope::parse_polynomial(
           "x^3 + 2*x^2*y - x*y*z + 3*y^2*z - z^3 + t*x*y + (1+I)*z^2 - 4*x + t", names),
       galoscope::parse_polynomial(
           "y^3 - 3*x*z^2 + x^2*z + (2-I)*x*y^2 + t*z - 5*y + 2*t^2 + 1", names),
       galoscope::parse_polynomial(
           "z^3 + x^2*y + y^2*z - 2*x*y*z + t*y^2 - x + 7*z + t - 3", names)});
}

void bench_system_eval_block(benchmark::State& state) {
  const PolySystem sys = dense_cubic_system();
  Vector point(4);
  point << Complex(0.3, -0.7), Complex(-0.2, 0.4), Complex(0.9, 0.1), Complex(0.5, 0.5);
  Vector values(3);
  Matrix jac(3, 3);
  Vector dt(3);
  for (auto _ : state) {
    sys.eval_block(point, values, jac, 3, &dt);
    benchmark::DoNotOptimize(values.data());
    benchmark::DoNotOptimize(jac.data());
  }
}
BENCHMARK(bench_system_eval_block);

void bench_tracker_segment(benchmark::State& state) {
  // One continuation path of the quartic cover from t=3 to t=-2: the segment
  // passes reasonably near the branch point at t=0, so the step control has
  // real work to do.
  const std::vector<std::string> names = {"x", "t"};
  const PolySystem sys({"x"}, {"t"},
                       {galoscope::parse_polynomial("x^4 - 4*x^2 + t", names)});
  const galoscope::TrackerConfig cfg;
  Vector start(1);
  start << Complex(1.0, 0);  // root of x^4-4x^2+3 over t=3
  for (auto _ : state) {
    const auto result =
        galoscope::track_segment(sys, start, Complex(3, 0), Complex(-2, 0.4), cfg);
    benchmark::DoNotOptimize(result.point.data());
    if (result.status != galoscope::TrackStatus::success)
      state.SkipWithError("tracking failed");
  }
}
BENCHMARK(bench_tracker_segment);

void bench_stabilizer_chain(benchmark::State& state) {
  // Order computation (stabilizer chain build) for the degree-27 group of
  // order 51840 from its 22 shipped generators.
  const auto file = galoscope::load_permutation_file(fixture("cubic-surface-lines.perms"));
  for (auto _ : state) {
    galoscope::PermutationGroup group(file.degree, file.permutations);
    benchmark::DoNotOptimize(group.order().to_string());
  }
}
BENCHMARK(bench_stabilizer_chain);

}  // namespace

BENCHMARK_MAIN();
