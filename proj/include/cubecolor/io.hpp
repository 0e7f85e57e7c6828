#ifndef CUBECOLOR_IO_HPP
#define CUBECOLOR_IO_HPP

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "certificate.hpp"
#include "filling.hpp"
#include "oracle.hpp"

namespace cubecolor {

inline constexpr const char* kToolVersion = "0.1.0";

using nlohmann::json;

/* Cells and chains.  Faces are {"anchor":[...],"free":[...]} with 0-based
 * axis indices; simplices are {"vertices":[[...],...]}. */

inline json to_json(const CubeFace& f) {
  return json{{"anchor", f.anchor}, {"free", f.free}};
}

inline json to_json(const Simplex& s) {
  return json{{"vertices", s.verts}};
}

inline json to_json(const FaceRef& f) {
  return std::holds_alternative<CubeFace>(f) ? to_json(std::get<CubeFace>(f))
                                             : to_json(std::get<Simplex>(f));
}

inline json to_json(const CubeChain& c) {
  json cells = json::array();
  for (const auto& [cell, v] : c.cells())
    cells.push_back(json{{"cell", to_json(cell)}, {"coeff", v}});
  return json{{"cells", cells}};
}

inline json to_json(const GridSpec& spec) {
  return json{{"d", spec.d}, {"n", spec.n}, {"m", spec.m}};
}

/* Parsing, with file/position context on errors. */

namespace detail {

inline json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline json require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key))
    throw parse_error(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline GridSpec spec_from_json(const json& j, const std::string& where) {
  try {
    return GridSpec(detail::require(j, "d", where).get<int>(),
                    detail::require(j, "n", where).get<int>(),
                    detail::require(j, "m", where).get<int>());
  } catch (const json::exception& e) {
    throw parse_error(where + ": " + e.what());
  }
}

inline Coloring read_coloring(const std::string& path) {
  json j = detail::parse_file(path);
  GridSpec spec = spec_from_json(j, path);
  try {
    auto colors = detail::require(j, "colors", path).get<std::vector<int>>();
    return Coloring(spec, std::move(colors));
  } catch (const json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline void write_coloring(const Coloring& coloring, std::ostream& out) {
  json j = to_json(coloring.spec);
  j["colors"] = coloring.colors;
  out << j.dump(2) << "\n";
}

/// Cochain file: {"d":..,"n":..,"k":..,"cells":[{"anchor","free","coeff"},..]}
/// describing a k-cochain on the cubical partition of [0,n]^d.
struct CochainFile {
  GridSpec region;  // m is unused here; stored as 0
  int k = 0;
  CubeChain cochain;
};

inline CochainFile read_cochain(const std::string& path) {
  json j = detail::parse_file(path);
  CochainFile out;
  try {
    int d = detail::require(j, "d", path).get<int>();
    int n = detail::require(j, "n", path).get<int>();
    out.k = detail::require(j, "k", path).get<int>();
    out.region = GridSpec(d, n, 0);
    out.cochain = CubeChain(out.k);
    for (const json& entry : detail::require(j, "cells", path)) {
      json cell = detail::require(entry, "cell", path);
      CubeFace face(detail::require(cell, "anchor", path).get<Vec>(),
                    detail::require(cell, "free", path).get<std::vector<int>>());
      if (face.ambient_dim() != d || !std::is_sorted(face.free.begin(), face.free.end()))
        throw parse_error(path + ": malformed cell " + to_string(face));
      if (face.dim() != out.k)
        throw parse_error(path + ": cell dimension differs from k");
      out.cochain.add(face, detail::require(entry, "coeff", path).get<coeff_t>());
    }
  } catch (const json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
  return out;
}

/* Report writers.  Every report embeds the grid spec, the tool version and
 * the mode flags; keys serialize in sorted order, so identical runs produce
 * byte-identical files. */

inline json report_header(const GridSpec& spec) {
  return json{{"tool_version", kToolVersion}, {"spec", to_json(spec)}};
}

inline json to_json(const FillResult& r, const GridSpec& region, int k) {
  json j{{"tool_version", kToolVersion},
         {"spec", json{{"d", region.d}, {"n", region.n}}}};
  j["k"] = k;
  j["alpha_norm"] = r.residual_norms.empty() ? 0 : r.residual_norms.front();
  j["bound"] = r.bound;
  j["beta"] = to_json(r.beta);
  j["beta_norm"] = l1_norm(r.beta);
  j["residual_norms"] = r.residual_norms;
  json sweeps = json::array();
  for (const SweepRecord& s : r.sweeps)
    sweeps.push_back(json{{"axis", s.axis},
                          {"level", s.level},
                          {"alpha_norm", s.alpha_norm},
                          {"beta_norm", s.beta_norm}});
  j["sweeps"] = sweeps;
  return j;
}

inline json to_json(const Certificate& cert, const GridSpec& spec) {
  json j = report_header(spec);
  j["color"] = cert.color;
  json x = json::object();
  for (const auto& [c, v] : cert.x) x[std::to_string(c)] = v;
  j["x"] = x;
  j["witness_count"] = cert.witnesses.size();
  j["witnesses"] = cert.witnesses;
  j["incidence_bound"] = cert.incidence_bound;
  return j;
}

inline json to_json(const DescentTrace& trace, const GridSpec& spec) {
  json j = report_header(spec);
  json levels = json::array();
  for (const DescentLevelRecord& lvl : trace.levels) {
    json tuples = json::array();
    for (const DescentTupleRecord& t : lvl.tuples) {
      json sweeps = json::array();
      for (const SweepRecord& s : t.fill_sweeps)
        sweeps.push_back(json{{"axis", s.axis},
                              {"level", s.level},
                              {"alpha_norm", s.alpha_norm},
                              {"beta_norm", s.beta_norm}});
      tuples.push_back(json{{"tuple", t.tuple},
                            {"trace_norm", t.trace_norm},
                            {"section_level", t.section_level},
                            {"fill_sweeps", sweeps},
                            {"eta_norm", t.eta_norm},
                            {"pool_size", t.pool_size},
                            {"max_usage", t.max_usage}});
    }
    levels.push_back(
        json{{"level", lvl.level}, {"tuples", tuples}, {"max_usage", lvl.max_usage}});
  }
  j["levels"] = levels;
  return j;
}

inline json to_json(const OracleReport& r) {
  json j = report_header(r.spec);
  j["mode"] = r.mode;
  j["samples"] = r.samples;
  j["value"] = r.value;
  j["extremal"] = r.extremal.colors;
  json stats = json::object();
  for (const auto& [size, count] : r.component_stats)
    stats[std::to_string(size)] = count;
  j["component_stats"] = stats;
  return j;
}

inline std::string oracle_csv_row(const OracleReport& r) {
  std::ostringstream row;
  row << r.spec.d << "," << r.spec.n << "," << r.spec.m << "," << r.mode << ","
      << r.samples << "," << r.value << "\n";
  return row.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw error("cannot write " + path);
  out << text;
}

}  // namespace cubecolor

#endif
