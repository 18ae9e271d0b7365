#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lgk/error.hpp"
#include "lgk/graph.hpp"

namespace lgk {

/// A left-resolving presentation together with the predecessor set of the
/// input graph that each cover vertex stands for (indexed like the cover's
/// vertices).
struct CoverResult {
  LabelledGraph cover;
  std::vector<VertexSet> state_map;
  bool trimmed = false;
};

/// a-predecessors of s: sources of a-labelled edges ending in s.
inline VertexSet predecessors(LabelledGraph const& g, VertexSet const& s,
                              std::size_t letter) {
  std::vector<std::size_t> out;
  for (auto v : s) {
    for (auto k : g.in_edges(v)) {
      if (g.edges()[k].label == letter) out.push_back(g.edges()[k].source);
    }
  }
  return VertexSet(std::move(out));
}

/// Predecessor-set cover.
///
/// States are the nonempty sets T_w(E^0), where T_a takes a set to its
/// a-predecessors, kept only when they arise from arbitrarily long words:
/// the reachable states are replaced by their image under all T_a until the
/// collection stops shrinking. Each state Q receives one edge T_a(Q) -a-> Q
/// per letter with T_a(Q) nonempty, so the result is left-resolving.
inline CoverResult predecessor_cover(LabelledGraph const& g,
                                     std::size_t state_cap = 1u << 16) {
  std::set<VertexSet> states;
  std::vector<VertexSet> work;
  if (g.vertex_count() > 0) {
    states.insert(g.all_vertices());
    work.push_back(g.all_vertices());
  }
  if (states.size() > state_cap) {
    throw ResourceError("predecessor_cover: more than " + std::to_string(state_cap) +
                        " states");
  }
  while (!work.empty()) {
    VertexSet s = std::move(work.back());
    work.pop_back();
    for (std::size_t a = 0; a < g.label_count(); ++a) {
      VertexSet p = predecessors(g, s, a);
      if (p.empty() || !states.insert(p).second) continue;
      if (states.size() > state_cap) {
        throw ResourceError("predecessor_cover: more than " +
                            std::to_string(state_cap) + " states");
      }
      work.push_back(std::move(p));
    }
  }
  while (true) {
    std::set<VertexSet> image;
    for (auto const& s : states) {
      for (std::size_t a = 0; a < g.label_count(); ++a) {
        VertexSet p = predecessors(g, s, a);
        if (!p.empty()) image.insert(std::move(p));
      }
    }
    if (image == states) break;
    states = std::move(image);
  }

  std::vector<NamedEdge> edges;
  std::vector<std::string> names;
  std::map<std::string, VertexSet> by_name;
  for (auto const& q : states) {
    names.push_back(g.format(q));
    by_name.emplace(names.back(), q);
    for (std::size_t a = 0; a < g.label_count(); ++a) {
      VertexSet p = predecessors(g, q, a);
      if (!p.empty()) edges.push_back({g.format(p), g.label_name(a), g.format(q)});
    }
  }
  CoverResult res;
  res.cover = LabelledGraph(std::move(names), edges);
  for (auto const& name : res.cover.vertex_names()) res.state_map.push_back(by_name.at(name));
  return res;
}

/// Removes sources and sinks until none are left.
inline LabelledGraph trim_essential(LabelledGraph const& g) {
  std::vector<bool> alive(g.vertex_count(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (!alive[v]) continue;
      bool emits = false, receives = false;
      for (auto k : g.out_edges(v)) emits = emits || alive[g.edges()[k].target];
      for (auto k : g.in_edges(v)) receives = receives || alive[g.edges()[k].source];
      if (!emits || !receives) {
        alive[v] = false;
        changed = true;
      }
    }
  }
  std::vector<std::string> names;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (alive[v]) names.push_back(g.vertex_name(v));
  }
  std::vector<NamedEdge> edges;
  for (auto const& e : g.edges()) {
    if (alive[e.source] && alive[e.target]) {
      edges.push_back({g.vertex_name(e.source), g.label_name(e.label),
                       g.vertex_name(e.target)});
    }
  }
  return LabelledGraph(std::move(names), edges);
}

/// predecessor_cover followed by trim_essential; state_map follows the
/// surviving vertices.
inline CoverResult trimmed_cover(LabelledGraph const& g,
                                 std::size_t state_cap = 1u << 16) {
  CoverResult full = predecessor_cover(g, state_cap);
  CoverResult res;
  res.cover = trim_essential(full.cover);
  res.trimmed = true;
  for (auto const& name : res.cover.vertex_names()) {
    res.state_map.push_back(full.state_map[*full.cover.vertex_index(name)]);
  }
  return res;
}

}  // namespace lgk
