#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lgk/error.hpp"
#include "lgk/graph.hpp"

namespace lgk {

namespace detail {

inline std::string json_string(nlohmann::json const& j, char const* what) {
  if (!j.is_string()) {
    throw ParseError(std::string(what) + " must be a string, got " + j.dump());
  }
  return j.get<std::string>();
}

inline nlohmann::json parse_json(std::string const& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace detail

inline std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// {"vertices": [...], "edges": [[source, label, target], ...]}
///
/// "vertices" is optional. When present, every edge endpoint must be
/// declared in it. The cover annex fields "state_map" and "trimmed" are
/// accepted and ignored.
inline LabelledGraph graph_from_json(nlohmann::json const& doc) {
  if (!doc.is_object()) throw ParseError("graph document must be an object");
  for (auto const& [key, _] : doc.items()) {
    if (key != "vertices" && key != "edges" && key != "state_map" && key != "trimmed") {
      throw ParseError("unknown graph field '" + key + "'");
    }
  }
  std::vector<std::string> vertices;
  bool const declared = doc.contains("vertices");
  if (declared) {
    if (!doc["vertices"].is_array()) throw ParseError("'vertices' must be a list");
    for (auto const& v : doc["vertices"]) {
      vertices.push_back(detail::json_string(v, "vertex identifier"));
    }
  }
  std::vector<NamedEdge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ParseError("'edges' must be a list");
    for (auto const& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 3) {
        throw ParseError("edge must be a [source, label, target] triple, got " +
                         e.dump());
      }
      edges.push_back({detail::json_string(e[0], "edge source"),
                       detail::json_string(e[1], "edge label"),
                       detail::json_string(e[2], "edge target")});
    }
  }
  if (declared) {
    std::vector<std::string> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError("vertex declared twice");
    }
    for (auto const& e : edges) {
      for (auto const* end : {&e.source, &e.target}) {
        if (!std::binary_search(sorted.begin(), sorted.end(), *end)) {
          throw ParseError("edge " + e.source + " -" + e.label + "-> " +
                           e.target + " uses undeclared vertex '" + *end + "'");
        }
      }
    }
  }
  return LabelledGraph(std::move(vertices), edges);
}

inline LabelledGraph parse_graph(std::string const& text) {
  return graph_from_json(detail::parse_json(text));
}

inline LabelledGraph load_graph(std::string const& path) {
  return parse_graph(read_file(path));
}

inline nlohmann::json graph_to_json(LabelledGraph const& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto const& e : g.edges()) {
    edges.push_back({g.vertex_name(e.source), g.label_name(e.label),
                     g.vertex_name(e.target)});
  }
  return {{"vertices", g.vertex_names()}, {"edges", std::move(edges)}};
}

inline std::string serialize_graph(LabelledGraph const& g) {
  return graph_to_json(g).dump(2) + "\n";
}

/// {"sets": [["v1", "v3"], ...]} over the vertices of g. The empty set may
/// be listed; duplicates are an error.
inline SetFamily family_from_json(LabelledGraph const& g, nlohmann::json const& doc) {
  if (!doc.is_object() || !doc.contains("sets") || doc.size() != 1 ||
      !doc["sets"].is_array()) {
    throw ParseError("family document must be {\"sets\": [[...], ...]}");
  }
  SetFamily fam;
  for (auto const& s : doc["sets"]) {
    if (!s.is_array()) throw ParseError("family member must be a list, got " + s.dump());
    std::vector<std::size_t> ids;
    for (auto const& v : s) {
      auto name = detail::json_string(v, "vertex identifier");
      auto id = g.vertex_index(name);
      if (!id) throw ParseError("family uses unknown vertex '" + name + "'");
      ids.push_back(*id);
    }
    fam.emplace_back(std::move(ids));
  }
  auto sorted = fam;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParseError("family lists a set twice");
  }
  return fam;
}

inline SetFamily parse_family(LabelledGraph const& g, std::string const& text) {
  return family_from_json(g, detail::parse_json(text));
}

inline nlohmann::json family_to_json(LabelledGraph const& g, SetFamily const& fam) {
  nlohmann::json sets = nlohmann::json::array();
  for (auto const& s : fam) {
    nlohmann::json names = nlohmann::json::array();
    for (auto v : s) names.push_back(g.vertex_name(v));
    sets.push_back(std::move(names));
  }
  return {{"sets", std::move(sets)}};
}

}  // namespace lgk
