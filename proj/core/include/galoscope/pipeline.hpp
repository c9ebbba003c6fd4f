#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "galoscope/fiber_products.hpp"

namespace galoscope {

// One stage of the computation, selected on the command line.
enum class RunMode {
  galois,       // full pipeline: witness -> loops -> group analysis
  branch,       // witness superset of the branch locus only
  monodromy,    // witness plus base fiber and loop permutations
  group,        // group analysis of an explicit permutation file
  orbits,       // tuple-fiber decomposition with trace certification
  primitivity,  // group analysis focused on blocks and orbital graphs
};

// Everything a run depends on. Identical RunConfig plus identical input file
// contents produce a byte-identical report.
struct RunConfig {
  RunMode mode = RunMode::galois;
  std::string input_path;  // problem JSON; a permutation text file in group mode
  std::uint64_t seed = 2024;
  int s = 2;               // tuple length for orbits mode
  bool extended = false;   // unlocks fixtures marked as long-running
  std::optional<double> tolerance;  // overrides the corrector tolerance
  FiberConfig fiber;       // nested numeric configuration for every stage
};

struct RunResult {
  std::string json;  // canonically rendered report
  // True when every fixture expectation matched and every internal
  // certification (trace tests) passed; drives the process exit code.
  bool certifications_ok = true;
};

// "galois" | "branch" | "monodromy" | "group" | "orbits" | "primitivity".
RunMode parse_run_mode(const std::string& name);

// Loads the input, runs the selected stage, renders the report.
// Throws InputError for malformed input and NumericError for numeric failure.
RunResult run_pipeline(const RunConfig& config);

}  // namespace galoscope
