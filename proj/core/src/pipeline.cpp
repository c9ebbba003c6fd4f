#include "galoscope/pipeline.hpp"

#include <algorithm>
#include <utility>

#include "galoscope/charts.hpp"
#include "galoscope/errors.hpp"
#include "galoscope/input.hpp"
#include "galoscope/parser.hpp"
#include "report.hpp"

namespace galoscope {

namespace {

PolySystem system_from_document(const InputDocument& doc) {
  if (doc.variables.empty())
    throw InputError("cli", "input declares no variables");
  if (doc.equations.empty())
    throw InputError("cli", "input declares no equations");
  std::vector<std::string> names = doc.variables;
  names.insert(names.end(), doc.parameters.begin(), doc.parameters.end());
  std::vector<Polynomial> polys;
  polys.reserve(doc.equations.size());
  for (const std::string& text : doc.equations)
    polys.push_back(parse_polynomial(text, names));
  return PolySystem(doc.variables, doc.parameters, polys);
}

// The numeric stages share a front end: load, chart projective inputs, fix
// the parameter line. Draw order from the seeded stream: chart (projective
// inputs only), then line (when the fixture does not pin one), then whatever
// the stage itself draws.
struct Staged {
  InputDocument doc;
  PolySystem system;
  LineEmbedding line;

  Staged(InputDocument d, PolySystem s, LineEmbedding l)
      : doc(std::move(d)), system(std::move(s)), line(std::move(l)) {}
};

Staged stage_problem(const RunConfig& config, RandomStream& rng, FiberConfig& fiber) {
  InputDocument doc = load_input_document(config.input_path);
  if (doc.extended && !config.extended)
    throw InputError("cli", "fixture is marked extended; pass --extended to run it");

  PolySystem system = system_from_document(doc);
  if (!doc.projective_groups.empty()) {
    if (!doc.exclude_solutions.empty())
      throw InputError("cli",
                       "exclude_solutions is only supported for affine inputs "
                       "(charted coordinates would make the excluded points ambiguous)");
    AffineChart chart = random_affine_chart(system, doc.projective_groups, rng);
    system = apply_chart(system, chart);
  }

  LineEmbedding line;
  if (doc.has_line) {
    if (doc.line_base.size() != system.parameter_count() ||
        doc.line_direction.size() != system.parameter_count())
      throw InputError("cli", "pinned line length does not match the parameter count");
    line.base.assign(doc.line_base.begin(), doc.line_base.end());
    line.direction.assign(doc.line_direction.begin(), doc.line_direction.end());
  } else if (system.parameter_count() == 1) {
    line = LineEmbedding::identity();
  } else {
    line = LineEmbedding::random(system.parameter_count(), rng);
  }

  for (const auto& point : doc.exclude_solutions) {
    if (point.size() != system.variable_count())
      throw InputError("cli", "excluded solution length does not match the variable count");
    Vector x(static_cast<Eigen::Index>(point.size()));
    for (std::size_t i = 0; i < point.size(); ++i)
      x[static_cast<Eigen::Index>(i)] = point[i];
    fiber.monodromy.branch.exclude_x.push_back(std::move(x));
  }
  fiber.monodromy.branch.exclude_tol = doc.exclude_tol;

  return Staged(std::move(doc), std::move(system), std::move(line));
}

// Fixture expectations become named pass/fail entries; a failed check flips
// the process exit code without aborting the report.
class Checks {
 public:
  template <typename T>
  void record(const std::string& name, const T& expected, const T& actual) {
    checks_[name] = Json{{"expected", expected}, {"actual", actual},
                         {"pass", expected == actual}};
    all_ok_ = all_ok_ && (expected == actual);
  }
  bool all_ok() const { return all_ok_; }
  bool any() const { return !checks_.empty(); }
  const Json& json() const { return checks_; }

 private:
  Json checks_ = Json::object();
  bool all_ok_ = true;
};

void check_witness(const ExpectBlock& expect, const BranchWitness& witness, Checks& checks) {
  if (expect.branch_degree)
    checks.record("branch_degree", *expect.branch_degree,
                  static_cast<int>(witness.points.size()));
  if (expect.cover_degree)
    checks.record("cover_degree", *expect.cover_degree, witness.cover_degree);
}

void check_group(const ExpectBlock& expect, const GroupReport& report, Checks& checks) {
  if (expect.order)
    checks.record("order", *expect.order, report.order);
  if (expect.transitive)
    checks.record("transitive", *expect.transitive, report.transitive);
  if (expect.primitive)
    checks.record("primitive", *expect.primitive, report.primitive);
  if (expect.classification)
    checks.record("classification", *expect.classification, report.classification);
}

Json base_report(const char* command, const RunConfig& config) {
  return Json{{"command", command}, {"seed", config.seed}};
}

RunResult finish(Json report, const Checks& checks) {
  if (checks.any())
    report["checks"] = checks.json();
  RunResult result;
  result.certifications_ok = checks.all_ok();
  if (report.contains("decomposition"))
    result.certifications_ok =
        result.certifications_ok && report["decomposition"]["all_certified"].get<bool>();
  result.json = render_json(report);
  return result;
}

RunResult run_group_file(const RunConfig& config) {
  PermutationFile file = load_permutation_file(config.input_path);
  if (file.permutations.empty())
    throw InputError("cli", "permutation file contains no permutations");
  PermutationGroup group(file.degree, file.permutations);
  GroupReport gr = group.report();
  Json report = base_report("group", config);
  report["generator_count"] = file.permutations.size();
  report["group"] = group_report_json(gr);
  Checks checks;  // group mode has no fixture metadata; keep exit semantics uniform
  return finish(std::move(report), checks);
}

RunResult run_numeric(const RunConfig& config) {
  FiberConfig fiber = config.fiber;
  if (config.tolerance) {
    fiber.monodromy.branch.solver.tracker.newton_tol = *config.tolerance;
  }
  RandomStream rng(config.seed);
  Staged staged = stage_problem(config, rng, fiber);
  Checks checks;

  if (config.mode == RunMode::branch) {
    BranchWitness witness =
        compute_branch_witness(staged.system, staged.line, fiber.monodromy.branch, rng);
    check_witness(staged.doc.expect, witness, checks);
    Json report = base_report("branch", config);
    report["witness"] = witness_json(witness);
    return finish(std::move(report), checks);
  }

  std::optional<Complex> pinned;
  if (staged.doc.base_point)
    pinned = *staged.doc.base_point;
  BranchPointRun run =
      branch_point_generators(staged.system, staged.line, fiber.monodromy, rng, pinned);
  check_witness(staged.doc.expect, run.witness, checks);

  if (config.mode == RunMode::monodromy) {
    Json report = base_report("monodromy", config);
    report["witness"] = witness_json(run.witness);
    report["base_point"] = complex_json(run.base.p);
    report["epsilon"] = run.epsilon;
    Json fiber_points = Json::array();
    for (const Vector& point : run.base.fiber)
      fiber_points.push_back(vector_json(point));
    report["fiber"] = fiber_points;
    report["generators"] = generators_json(run.generators);
    return finish(std::move(report), checks);
  }

  if (config.mode == RunMode::orbits) {
    const PolySystem cover = restrict_to_line(staged.system, run.witness.line);
    FiberPowerSystem fps =
        build_fiber_power(cover, config.s, fiber.monodromy.branch.cluster_tol, fiber.max_tuples);
    WitnessDecomposition dec = decompose_by_monodromy(fps, run, fiber, rng);
    Json report = base_report("orbits", config);
    report["witness"] = witness_json(run.witness);
    report["decomposition"] = decomposition_json(dec);
    return finish(std::move(report), checks);
  }

  std::vector<Permutation> sigmas;
  sigmas.reserve(run.generators.size());
  for (const MonodromyPermutation& gen : run.generators)
    sigmas.push_back(gen.sigma);
  PermutationGroup group(run.base.k, sigmas);
  GroupReport gr = group.report();
  check_group(staged.doc.expect, gr, checks);

  const char* command = config.mode == RunMode::primitivity ? "primitivity" : "galois";
  Json report = base_report(command, config);
  report["witness"] = witness_json(run.witness);
  report["base_point"] = complex_json(run.base.p);
  report["epsilon"] = run.epsilon;
  Json fiber_points = Json::array();
  for (const Vector& point : run.base.fiber)
    fiber_points.push_back(vector_json(point));
  report["fiber"] = fiber_points;
  report["generators"] = generators_json(run.generators);
  report["group"] = group_report_json(gr);
  if (config.mode == RunMode::primitivity)
    report["primitive"] = gr.primitive;
  return finish(std::move(report), checks);
}

}  // namespace

RunMode parse_run_mode(const std::string& name) {
  if (name == "galois")
    return RunMode::galois;
  if (name == "branch")
    return RunMode::branch;
  if (name == "monodromy")
    return RunMode::monodromy;
  if (name == "group")
    return RunMode::group;
  if (name == "orbits")
    return RunMode::orbits;
  if (name == "primitivity")
    return RunMode::primitivity;
  throw InputError("cli", "unknown command: " + name);
}

RunResult run_pipeline(const RunConfig& config) {
  if (config.input_path.empty())
    throw InputError("cli", "no input file given");
  if (config.mode == RunMode::group)
    return run_group_file(config);
  return run_numeric(config);
}

}  // namespace galoscope
