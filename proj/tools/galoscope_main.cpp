// galoscope: numerical Galois/monodromy groups of parameterized polynomial
// systems. Subcommands run pipeline stages; reports are canonical JSON on
// stdout (or --json-out), timing goes to stderr, and the exit code is 0 only
// when the report was produced and every internal certification passed.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "galoscope/errors.hpp"
#include "galoscope/pipeline.hpp"

namespace {

struct CliOptions {
  galoscope::RunConfig run;
  std::string json_out;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical Galois/monodromy groups of branched covers"};
  app.require_subcommand(1);

  CliOptions opt;
  const std::vector<std::pair<std::string, std::string>> modes = {
      {"galois", "full pipeline: branch witness, loops, group analysis"},
      {"branch", "witness superset of the branch locus"},
      {"monodromy", "branch witness plus base fiber and loop permutations"},
      {"group", "analyze an explicit permutation file"},
      {"orbits", "tuple-fiber decomposition with trace certification"},
      {"primitivity", "block systems and orbital-graph connectivity"},
  };
  for (const auto& [name, blurb] : modes) {
    CLI::App* sub = app.add_subcommand(name, blurb);
    sub->add_option("--input", opt.run.input_path, "problem JSON (or permutation file)")
        ->required();
    sub->add_option("--seed", opt.run.seed, "random stream seed (default 2024)");
    sub->add_option("--tol", opt.run.tolerance, "corrector tolerance override");
    if (name == "orbits")
      sub->add_option("--s", opt.run.s, "tuple length (default 2)");
    sub->add_option("--json-out", opt.json_out, "write the report here instead of stdout");
    sub->add_flag("--extended", opt.run.extended, "allow fixtures marked extended");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return 3;  // bad command line is an input error
  }
  opt.run.mode = galoscope::parse_run_mode(app.get_subcommands().front()->get_name());

  const auto started = std::chrono::steady_clock::now();
  galoscope::RunResult result;
  try {
    result = galoscope::run_pipeline(opt.run);
  } catch (const galoscope::InputError& err) {
    std::fprintf(stderr, "galoscope: input error: %s\n", err.what());
    return 3;
  } catch (const galoscope::NumericError& err) {
    std::fprintf(stderr, "galoscope: numeric failure: %s\n", err.what());
    return 2;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

  if (opt.json_out.empty()) {
    std::fputs(result.json.c_str(), stdout);
  } else {
    std::ofstream out(opt.json_out, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "galoscope: cannot write %s\n", opt.json_out.c_str());
      return 3;
    }
    out << result.json;
  }
  std::fprintf(stderr, "galoscope: finished in %.2f s\n", elapsed.count());

  if (!result.certifications_ok) {
    std::fprintf(stderr, "galoscope: one or more certifications failed\n");
    return 2;
  }
  return 0;
}
