#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include <galoscope/errors.hpp>
#include <galoscope/pipeline.hpp>

using json = nlohmann::json;
using galoscope::RunConfig;
using galoscope::RunMode;
using galoscope::run_pipeline;

namespace {

std::string fixture(const std::string& name) {
  return std::string(GALOSCOPE_FIXTURE_DIR) + "/" + name;
}

RunConfig config_for(RunMode mode, const std::string& file) {
  RunConfig cfg;
  cfg.mode = mode;
  cfg.input_path = fixture(file);
  return cfg;
}

// Writes `text` to a fresh temp file and returns the path.
std::string temp_input(const std::string& text, const std::string& tag) {
  const std::string path = "/tmp/galoscope_test_" + tag + ".json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("identical runs render byte-identical reports") {
  const RunConfig cfg = config_for(RunMode::galois, "quartic.json");
  const auto first = run_pipeline(cfg);
  const auto second = run_pipeline(cfg);
  CHECK(first.certifications_ok);
  CHECK(first.json == second.json);

  RunConfig other = cfg;
  other.seed = 5;
  const auto third = run_pipeline(other);
  const auto fourth = run_pipeline(other);
  CHECK(third.json == fourth.json);
}

TEST_CASE("reports are canonical: sorted keys, indented, newline-terminated") {
  const auto result = run_pipeline(config_for(RunMode::branch, "x2-t.json"));
  CHECK(result.certifications_ok);
  REQUIRE(!result.json.empty());
  CHECK(result.json.back() == '\n');
  CHECK(result.json.find('\t') == std::string::npos);

  // Keys of every object appear in sorted order: re-rendering the parsed
  // document with sorted keys must reproduce the key sequence.
  const json parsed = json::parse(result.json);
  CHECK(parsed.is_object());

  // Top-level keys sorted.
  std::string previous;
  for (auto it = parsed.begin(); it != parsed.end(); ++it) {
    CHECK(previous < it.key());
    previous = it.key();
  }
}

TEST_CASE("galois report carries the full schema") {
  const auto result = run_pipeline(config_for(RunMode::galois, "quartic.json"));
  const json r = json::parse(result.json);
  for (const auto* key :
       {"base_point", "checks", "command", "epsilon", "fiber", "generators", "group", "seed",
        "witness"})
    CHECK_MESSAGE(r.contains(key), "missing key: " << key);
  CHECK(r["command"] == "galois");
  CHECK(r["seed"] == 2024);
  CHECK(r["witness"]["cover_degree"] == 4);
  CHECK(r["group"]["order"] == "8");
  for (const auto& check : r["checks"])
    CHECK(check["pass"] == true);

  // No filesystem paths leak into the report.
  CHECK(result.json.find(fixture("quartic.json")) == std::string::npos);
}

TEST_CASE("branch mode stops after the witness") {
  const auto result = run_pipeline(config_for(RunMode::branch, "quartic.json"));
  const json r = json::parse(result.json);
  CHECK(r.contains("witness"));
  CHECK(!r.contains("generators"));
  CHECK(!r.contains("group"));
  CHECK(r["witness"]["points"].size() == 2);
}

TEST_CASE("monodromy mode reports generators without group analysis") {
  const auto result = run_pipeline(config_for(RunMode::monodromy, "x2-t.json"));
  const json r = json::parse(result.json);
  CHECK(r.contains("generators"));
  CHECK(!r.contains("group"));
  REQUIRE(r["generators"].size() == 1);
  CHECK(r["generators"][0]["cycles"] == "(1,2)");
  CHECK(r["generators"][0]["identity"] == false);
}

TEST_CASE("orbits mode decomposes the pair fiber of the quartic") {
  RunConfig cfg = config_for(RunMode::orbits, "quartic.json");
  cfg.s = 2;
  const auto result = run_pipeline(cfg);
  CHECK(result.certifications_ok);
  const json r = json::parse(result.json);
  const auto& dec = r["decomposition"];
  CHECK(dec["tuple_length"] == 2);
  CHECK(dec["cover_degree"] == 4);
  CHECK(dec["distinct_tuples"] == 12);
  CHECK(dec["diagonal_count"] == 4);
  CHECK(dec["all_certified"] == true);
  CHECK(dec["degrees"].size() == 2);
  // Tuples are reported 1-based.
  for (const auto& part : dec["parts"])
    for (const auto& tuple : part["tuples"])
      for (const auto& index : tuple)
        CHECK(index.get<int>() >= 1);
}

TEST_CASE("group mode analyzes raw permutation files") {
  const auto lines = run_pipeline(config_for(RunMode::group, "cubic-surface-lines.perms"));
  const json r = json::parse(lines.json);
  CHECK(r["command"] == "group");
  CHECK(r["generator_count"] == 22);
  CHECK(r["group"]["degree"] == 27);
  CHECK(r["group"]["order"] == "51840");
  CHECK(r["group"]["primitive"] == true);

  const auto fourbar = run_pipeline(config_for(RunMode::group, "fourbar-synthesis.perms"));
  const json f = json::parse(fourbar.json);
  CHECK(f["group"]["order"] == "24");
  CHECK(f["group"]["transitive"] == false);
  CHECK(f["group"]["point_orbit_sizes"] == json::parse("[4,12]"));

  const auto ml = run_pipeline(config_for(RunMode::group, "ml-estimation.perms"));
  const json m = json::parse(ml.json);
  CHECK(m["group"]["order"] == "24");
  CHECK(m["group"]["transitive"] == true);
}

TEST_CASE("primitivity mode adds the primitive verdict for covers") {
  const auto result = run_pipeline(config_for(RunMode::primitivity, "quartic.json"));
  const json r = json::parse(result.json);
  CHECK(r["group"]["primitive"] == false);
  CHECK(r["group"]["minimal_block_systems"] == json::parse("[[[1,4],[2,3]]]"));
}

TEST_CASE("failed expectation checks lower the certification flag") {
  const std::string path = temp_input(
      R"({"variables": ["x"], "parameters": ["t"], "equations": ["x^2 - t"],
          "base_point": 1, "expect": {"cover_degree": 3}})",
      "bad_expect");
  RunConfig cfg;
  cfg.mode = RunMode::branch;
  cfg.input_path = path;
  const auto result = run_pipeline(cfg);
  CHECK(!result.certifications_ok);
  const json r = json::parse(result.json);
  CHECK(r["checks"]["cover_degree"]["pass"] == false);
  CHECK(r["checks"]["cover_degree"]["expected"] == 3);
  CHECK(r["checks"]["cover_degree"]["actual"] == 2);
  std::remove(path.c_str());
}

TEST_CASE("extended fixtures refuse to run without the extended flag") {
  const RunConfig cfg = config_for(RunMode::branch, "formation-n4.json");
  CHECK_THROWS_AS(run_pipeline(cfg), galoscope::InputError);
}

TEST_CASE("input errors: missing file, unknown key, malformed line") {
  RunConfig cfg;
  cfg.mode = RunMode::galois;
  cfg.input_path = fixture("does-not-exist.json");
  CHECK_THROWS_AS(run_pipeline(cfg), galoscope::InputError);

  cfg.input_path = temp_input(
      R"({"variables": ["x"], "equations": ["x^2 - t"], "parameters": ["t"], "bogus": 1})",
      "unknown_key");
  CHECK_THROWS_AS(run_pipeline(cfg), galoscope::InputError);
  std::remove(cfg.input_path.c_str());

  // line base/direction must have one entry per parameter.
  cfg.input_path = temp_input(
      R"({"variables": ["x"], "parameters": ["t"], "equations": ["x^2 - t"],
          "line": {"base": [0, 1], "direction": [1, 0]}})",
      "bad_line");
  CHECK_THROWS_AS(run_pipeline(cfg), galoscope::InputError);
  std::remove(cfg.input_path.c_str());
}

TEST_CASE("tolerance override propagates to the tracker") {
  // A looser corrector tolerance still solves the quartic; the report shape
  // is unchanged and the seed-pinned values stay deterministic.
  RunConfig cfg = config_for(RunMode::branch, "quartic.json");
  cfg.tolerance = 1e-12;
  const auto tight = run_pipeline(cfg);
  CHECK(tight.certifications_ok);
  const json r = json::parse(tight.json);
  CHECK(r["witness"]["points"].size() == 2);
}

TEST_CASE("run mode names parse and reject junk") {
  CHECK(galoscope::parse_run_mode("galois") == RunMode::galois);
  CHECK(galoscope::parse_run_mode("branch") == RunMode::branch);
  CHECK(galoscope::parse_run_mode("monodromy") == RunMode::monodromy);
  CHECK(galoscope::parse_run_mode("group") == RunMode::group);
  CHECK(galoscope::parse_run_mode("orbits") == RunMode::orbits);
  CHECK(galoscope::parse_run_mode("primitivity") == RunMode::primitivity);
  CHECK_THROWS_AS(galoscope::parse_run_mode("frobnicate"), galoscope::InputError);
}

TEST_CASE("float rendering is locale-free shortest-roundtrip decimal") {
  // 17 significant digits reproduce any double exactly; spot-check values
  // whose default iostream rendering would lose digits.
  const auto result = run_pipeline(config_for(RunMode::galois, "quartic.json"));
  const json r = json::parse(result.json);
  const double eps = r["epsilon"].get<double>();
  // Re-parsing the rendered text must give back the identical double.
  CHECK(eps == json::parse(r["epsilon"].dump()).get<double>());
}
