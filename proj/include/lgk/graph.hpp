#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lgk/error.hpp"

namespace lgk {

/// Set of vertex indices, kept sorted and duplicate free.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<std::size_t> xs) : members_(xs) {
    normalize();
  }
  explicit VertexSet(std::vector<std::size_t> xs) : members_(std::move(xs)) {
    normalize();
  }

  static VertexSet range(std::size_t n) {
    VertexSet s;
    s.members_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.members_[i] = i;
    return s;
  }

  std::vector<std::size_t> const& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool contains(std::size_t v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }
  bool is_subset_of(VertexSet const& o) const {
    return std::includes(o.members_.begin(), o.members_.end(),
                         members_.begin(), members_.end());
  }
  bool intersects(VertexSet const& o) const {
    auto a = members_.begin();
    auto b = o.members_.begin();
    while (a != members_.end() && b != o.members_.end()) {
      if (*a == *b) return true;
      if (*a < *b) ++a; else ++b;
    }
    return false;
  }

  friend VertexSet operator|(VertexSet const& a, VertexSet const& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out.members_));
    return out;
  }
  friend VertexSet operator&(VertexSet const& a, VertexSet const& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out.members_));
    return out;
  }
  friend VertexSet operator-(VertexSet const& a, VertexSet const& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out.members_));
    return out;
  }

  friend bool operator==(VertexSet const&, VertexSet const&) = default;
  friend auto operator<=>(VertexSet const&, VertexSet const&) = default;

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
  }

  std::vector<std::size_t> members_;
};

/// Candidate accommodating family: distinct vertex sets in canonical order.
using SetFamily = std::vector<VertexSet>;

inline void canonicalize(SetFamily& fam) {
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
}

struct Edge {
  std::size_t source;
  std::size_t label;
  std::size_t target;

  friend bool operator==(Edge const&, Edge const&) = default;
  friend auto operator<=>(Edge const&, Edge const&) = default;
};

struct NamedEdge {
  std::string source;
  std::string label;
  std::string target;
};

/// Finite directed graph with labelled edges.
///
/// Vertex and label identifiers are strings; internally both are indexed in
/// lexicographic order of their identifiers, so every matrix built from a
/// graph has a reproducible basis. The alphabet is exactly the set of labels
/// that occur on edges.
class LabelledGraph {
 public:
  LabelledGraph() = default;

  /// Vertices are the declared ones plus any endpoint of an edge.
  LabelledGraph(std::vector<std::string> vertices,
                std::vector<NamedEdge> const& edges) {
    for (auto const& e : edges) {
      vertices.push_back(e.source);
      vertices.push_back(e.target);
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()),
                   vertices.end());
    vertex_names_ = std::move(vertices);

    for (auto const& e : edges) label_names_.push_back(e.label);
    std::sort(label_names_.begin(), label_names_.end());
    label_names_.erase(std::unique(label_names_.begin(), label_names_.end()),
                       label_names_.end());

    edges_.reserve(edges.size());
    for (auto const& e : edges) {
      edges_.push_back(
          {*vertex_index(e.source), *label_index(e.label), *vertex_index(e.target)});
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
      throw ParseError("duplicate edge " + vertex_names_[dup->source] + " -" +
                       label_names_[dup->label] + "-> " +
                       vertex_names_[dup->target]);
    }
    index_edges();
  }

  std::size_t vertex_count() const noexcept { return vertex_names_.size(); }
  std::size_t label_count() const noexcept { return label_names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::vector<std::string> const& vertex_names() const noexcept {
    return vertex_names_;
  }
  std::vector<std::string> const& alphabet() const noexcept {
    return label_names_;
  }
  std::string const& vertex_name(std::size_t v) const { return vertex_names_[v]; }
  std::string const& label_name(std::size_t a) const { return label_names_[a]; }
  std::vector<Edge> const& edges() const noexcept { return edges_; }

  std::optional<std::size_t> vertex_index(std::string const& name) const {
    return find(vertex_names_, name);
  }
  std::optional<std::size_t> label_index(std::string const& name) const {
    return find(label_names_, name);
  }

  /// Indices into edges() of the edges leaving / entering v.
  std::vector<std::size_t> const& out_edges(std::size_t v) const {
    return out_[v];
  }
  std::vector<std::size_t> const& in_edges(std::size_t v) const {
    return in_[v];
  }

  VertexSet all_vertices() const { return VertexSet::range(vertex_count()); }

  /// Builds a set from vertex identifiers; unknown identifiers are an error.
  VertexSet vertex_set(std::vector<std::string> const& names) const {
    std::vector<std::size_t> idx;
    for (auto const& n : names) {
      auto i = vertex_index(n);
      if (!i) throw ParseError("unknown vertex '" + n + "'");
      idx.push_back(*i);
    }
    return VertexSet(std::move(idx));
  }

  /// "{A,B}"
  std::string format(VertexSet const& s) const {
    std::string out = "{";
    bool first = true;
    for (auto v : s) {
      if (!first) out += ',';
      out += vertex_names_[v];
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(LabelledGraph const& a, LabelledGraph const& b) {
    return a.vertex_names_ == b.vertex_names_ &&
           a.label_names_ == b.label_names_ && a.edges_ == b.edges_;
  }

 private:
  static std::optional<std::size_t> find(std::vector<std::string> const& xs,
                                         std::string const& name) {
    auto it = std::lower_bound(xs.begin(), xs.end(), name);
    if (it == xs.end() || *it != name) return std::nullopt;
    return static_cast<std::size_t>(it - xs.begin());
  }

  void index_edges() {
    out_.assign(vertex_count(), {});
    in_.assign(vertex_count(), {});
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      out_[edges_[k].source].push_back(k);
      in_[edges_[k].target].push_back(k);
    }
  }

  std::vector<std::string> vertex_names_;
  std::vector<std::string> label_names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// r(A, a): targets of a-labelled edges leaving A.
inline VertexSet relative_range(LabelledGraph const& g, VertexSet const& a_set,
                                std::size_t letter) {
  std::vector<std::size_t> out;
  for (auto v : a_set) {
    for (auto k : g.out_edges(v)) {
      auto const& e = g.edges()[k];
      if (e.label == letter) out.push_back(e.target);
    }
  }
  return VertexSet(std::move(out));
}

/// r(A, w) for a word of label indices, one letter at a time.
inline VertexSet relative_range(LabelledGraph const& g, VertexSet a_set,
                                std::span<std::size_t const> word) {
  for (auto a : word) {
    if (a_set.empty()) break;
    a_set = relative_range(g, a_set, a);
  }
  return a_set;
}

/// r(A, w) for a word of label identifiers. A letter outside the alphabet
/// has empty range.
inline VertexSet relative_range(LabelledGraph const& g, VertexSet a_set,
                                std::vector<std::string> const& word) {
  for (auto const& a : word) {
    auto idx = g.label_index(a);
    if (!idx) return {};
    a_set = relative_range(g, a_set, *idx);
  }
  return a_set;
}

/// r(a) = r(E^0, a).
inline VertexSet range_of_letter(LabelledGraph const& g, std::size_t letter) {
  return relative_range(g, g.all_vertices(), letter);
}

/// L(A E^1) as sorted label indices.
inline std::vector<std::size_t> outgoing_labels(LabelledGraph const& g,
                                                VertexSet const& a_set) {
  std::vector<std::size_t> out;
  for (auto v : a_set) {
    for (auto k : g.out_edges(v)) out.push_back(g.edges()[k].label);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lgk
