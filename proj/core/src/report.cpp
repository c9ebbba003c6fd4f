#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace galoscope {

namespace {

void append_number(std::string& out, const Json& j) {
  if (j.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
    out += buf;
    return;
  }
  out += j.dump();
}

void render(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      std::vector<std::string> keys;
      for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
      std::sort(keys.begin(), keys.end());
      out += "{\n";
      for (std::size_t i = 0; i < keys.size(); ++i) {
        out += pad_in;
        out += Json(keys[i]).dump();
        out += ": ";
        render(j.at(keys[i]), out, depth + 1);
        if (i + 1 < keys.size())
          out += ',';
        out += '\n';
      }
      out += pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        render(j[i], out, depth + 1);
        if (i + 1 < j.size())
          out += ',';
        out += '\n';
      }
      out += pad + "]";
      return;
    }
    case Json::value_t::number_float:
      append_number(out, j);
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string render_json(const Json& value) {
  std::string out;
  render(value, out, 0);
  out += '\n';
  return out;
}

Json complex_json(const Complex& z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json vector_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back(complex_json(v[i]));
  return arr;
}

Json line_json(const LineEmbedding& line) {
  Json base = Json::array(), direction = Json::array();
  for (const Complex& z : line.base)
    base.push_back(complex_json(z));
  for (const Complex& z : line.direction)
    direction.push_back(complex_json(z));
  return Json{{"base", base}, {"direction", direction}};
}

Json witness_json(const BranchWitness& witness) {
  Json points = Json::array();
  for (const WitnessPoint& wp : witness.points) {
    Json p = complex_json(wp.t);
    p["multiplicity"] = wp.multiplicity;
    points.push_back(p);
  }
  return Json{{"points", points},
              {"critical_count", witness.critical_count},
              {"discarded", witness.discarded},
              {"cover_degree", witness.cover_degree},
              {"line", line_json(witness.line)}};
}

Json group_report_json(const GroupReport& report) {
  Json blocks = Json::array();
  for (const auto& system : report.minimal_block_systems) {
    Json sys = Json::array();
    for (const auto& block : system)
      sys.push_back(block);
    blocks.push_back(sys);
  }
  Json graphs = Json::array();
  for (const OrbitalGraphInfo& g : report.orbital_graphs)
    graphs.push_back(Json{{"orbit_size", g.orbit_size},
                          {"connected", g.connected},
                          {"components", g.components},
                          {"diameter", g.diameter}});
  Json out{{"order", report.order},
           {"degree", report.degree},
           {"transitivity_degree", report.transitivity_degree},
           {"transitive", report.transitive},
           {"primitive", report.primitive},
           {"point_orbit_sizes", report.point_orbit_sizes},
           {"minimal_block_systems", blocks},
           {"classification", report.classification},
           {"orbital_graphs", graphs}};
  if (!report.pair_orbit_sizes.empty())
    out["pair_orbit_sizes"] = report.pair_orbit_sizes;
  if (!report.triple_orbit_sizes.empty())
    out["triple_orbit_sizes"] = report.triple_orbit_sizes;
  return out;
}

Json generators_json(const std::vector<MonodromyPermutation>& generators) {
  Json out = Json::array();
  for (const MonodromyPermutation& gen : generators)
    out.push_back(Json{{"cycles", gen.sigma.to_cycle_string()},
                       {"source", gen.source},
                       {"identity", gen.identity},
                       {"match_residual", gen.max_match_residual}});
  return out;
}

Json decomposition_json(const WitnessDecomposition& dec) {
  Json parts = Json::array();
  for (std::size_t i = 0; i < dec.parts.size(); ++i) {
    Json tuples = Json::array();
    for (int idx : dec.parts[i]) {
      Json tuple = Json::array();
      for (int v : dec.tuples[static_cast<std::size_t>(idx)])
        tuple.push_back(v + 1);  // 1-based sheet labels, like cycle text
      tuples.push_back(tuple);
    }
    parts.push_back(Json{{"size", dec.parts[i].size()},
                         {"certified", static_cast<bool>(dec.certified[i])},
                         {"tuples", tuples}});
  }
  Json poles = Json::array();
  for (const Complex& pole : dec.trace_poles)
    poles.push_back(complex_json(pole));
  return Json{{"base_point", complex_json(dec.base_t)},
              {"cover_degree", dec.k},
              {"tuple_length", dec.s},
              {"distinct_tuples", dec.tuples.size()},
              {"diagonal_count", dec.diagonal_count},
              {"degrees", dec.degrees},
              {"all_certified", dec.all_certified},
              {"sampled_loops", dec.sampled_loops},
              {"trace_poles", poles},
              {"parts", parts}};
}

}  // namespace galoscope
