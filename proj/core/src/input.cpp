#include "galoscope/input.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "galoscope/errors.hpp"

namespace galoscope {

namespace {

using nlohmann::json;

std::complex<double> parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InputError("input", where + ": expected a number or [re, im] pair");
}

std::vector<std::string> parse_string_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError("input", where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw InputError("input", where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

InputDocument load_input_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("input", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("input", "bad JSON in '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw InputError("input", "top level must be an object");

  static const std::set<std::string> known_keys = {
      "variables", "parameters", "equations",  "projective_groups", "expect",
      "extended",  "line",       "base_point", "exclude_solutions", "exclude_tol"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!known_keys.count(key))
      throw InputError("input", "unknown key '" + key + "' in '" + path + "'");
  }

  InputDocument out;
  if (!doc.contains("variables") || !doc.contains("equations"))
    throw InputError("input", "'variables' and 'equations' are required");
  out.variables = parse_string_list(doc["variables"], "variables");
  out.equations = parse_string_list(doc["equations"], "equations");
  if (doc.contains("parameters"))
    out.parameters = parse_string_list(doc["parameters"], "parameters");
  if (out.variables.empty()) throw InputError("input", "at least one variable is required");
  if (out.equations.empty()) throw InputError("input", "at least one equation is required");

  std::set<std::string> names;
  for (const auto& n : out.variables)
    if (!names.insert(n).second) throw InputError("input", "duplicate name '" + n + "'");
  for (const auto& n : out.parameters)
    if (!names.insert(n).second) throw InputError("input", "duplicate name '" + n + "'");

  if (doc.contains("projective_groups")) {
    if (!doc["projective_groups"].is_array())
      throw InputError("input", "projective_groups: expected an array of arrays");
    std::set<std::string> grouped;
    for (const auto& g : doc["projective_groups"]) {
      auto group = parse_string_list(g, "projective_groups");
      if (group.size() < 2)
        throw InputError("input", "projective_groups: each group needs >= 2 names");
      for (const auto& n : group) {
        if (std::find(out.variables.begin(), out.variables.end(), n) == out.variables.end())
          throw InputError("input", "projective_groups: '" + n + "' is not a variable");
        if (!grouped.insert(n).second)
          throw InputError("input", "projective_groups: '" + n + "' appears twice");
      }
      out.projective_groups.push_back(std::move(group));
    }
  }

  if (doc.contains("extended")) {
    if (!doc["extended"].is_boolean())
      throw InputError("input", "extended: expected a boolean");
    out.extended = doc["extended"].get<bool>();
  }

  if (doc.contains("line")) {
    const auto& line = doc["line"];
    if (!line.is_object() || !line.contains("base") || !line.contains("direction"))
      throw InputError("input", "line: expected {\"base\": [...], \"direction\": [...]}");
    for (const auto& e : line["base"]) out.line_base.push_back(parse_complex(e, "line.base"));
    for (const auto& e : line["direction"])
      out.line_direction.push_back(parse_complex(e, "line.direction"));
    if (out.line_base.size() != out.parameters.size() ||
        out.line_direction.size() != out.parameters.size())
      throw InputError("input", "line: base and direction need one entry per parameter");
    out.has_line = true;
  }

  if (doc.contains("base_point"))
    out.base_point = parse_complex(doc["base_point"], "base_point");

  if (doc.contains("exclude_solutions")) {
    if (!doc["exclude_solutions"].is_array())
      throw InputError("input", "exclude_solutions: expected an array of points");
    for (const auto& pt : doc["exclude_solutions"]) {
      if (!pt.is_array() || pt.size() != out.variables.size())
        throw InputError("input", "exclude_solutions: each point needs one entry per variable");
      std::vector<std::complex<double>> coords;
      for (const auto& c : pt) coords.push_back(parse_complex(c, "exclude_solutions"));
      out.exclude_solutions.push_back(std::move(coords));
    }
    if (!out.projective_groups.empty())
      throw InputError("input", "exclude_solutions requires an affine system");
  }
  if (doc.contains("exclude_tol")) {
    if (!doc["exclude_tol"].is_number() || doc["exclude_tol"].get<double>() <= 0)
      throw InputError("input", "exclude_tol: expected a positive number");
    out.exclude_tol = doc["exclude_tol"].get<double>();
  }

  if (doc.contains("expect")) {
    const auto& exp = doc["expect"];
    if (!exp.is_object()) throw InputError("input", "expect: expected an object");
    static const std::set<std::string> expect_keys = {
        "branch_degree", "cover_degree", "order", "transitive", "primitive", "classification"};
    for (const auto& [key, value] : exp.items()) {
      if (!expect_keys.count(key))
        throw InputError("input", "unknown expect key '" + key + "'");
      if (key == "branch_degree") out.expect.branch_degree = value.get<int>();
      else if (key == "cover_degree") out.expect.cover_degree = value.get<int>();
      else if (key == "order") {
        if (value.is_string()) out.expect.order = value.get<std::string>();
        else if (value.is_number_unsigned() || value.is_number_integer())
          out.expect.order = std::to_string(value.get<long long>());
        else throw InputError("input", "expect.order: expected an integer or decimal string");
      } else if (key == "transitive") out.expect.transitive = value.get<bool>();
      else if (key == "primitive") out.expect.primitive = value.get<bool>();
      else if (key == "classification") out.expect.classification = value.get<std::string>();
    }
  }

  return out;
}

PermutationFile load_permutation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("input", "cannot open '" + path + "'");
  std::vector<std::string> rows;
  std::string line;
  int max_point = 0;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    rows.push_back(line);
    // scan numbers to find the degree
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isdigit(static_cast<unsigned char>(line[i]))) {
        int v = 0;
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
          v = v * 10 + (line[i++] - '0');
        max_point = std::max(max_point, v);
      } else {
        ++i;
      }
    }
  }
  if (rows.empty()) throw InputError("input", "'" + path + "' contains no permutations");
  // one-line rows (no parentheses) must have max_point entries each; their
  // lengths also bound the degree from below
  for (const auto& row : rows) {
    if (row.find('(') == std::string::npos) {
      std::istringstream cnt(row);
      int n = 0;
      long v;
      while (cnt >> v) ++n;
      max_point = std::max(max_point, n);
    }
  }
  PermutationFile out;
  out.degree = max_point;
  for (const auto& row : rows)
    out.permutations.push_back(Permutation::parse(row, max_point));
  return out;
}

}  // namespace galoscope
