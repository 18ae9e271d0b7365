#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lgk/error.hpp"
#include "lgk/graph.hpp"
#include "lgk/validate.hpp"

namespace lgk {

/// Omega_level: classes ordered by their least vertex.
struct Partition {
  std::size_t level = 0;
  std::vector<VertexSet> classes;
  std::vector<std::size_t> class_of;

  std::size_t size() const noexcept { return classes.size(); }

  /// Same set partition, whatever the level.
  bool same_classes(Partition const& o) const { return classes == o.classes; }
};

struct PartitionTower {
  std::vector<Partition> partitions;
  std::optional<std::size_t> stabilized_at;

  std::size_t horizon() const noexcept { return partitions.size(); }

  /// Omega_level, 1-based. Past the horizon of a stabilized tower the last
  /// partition stands in for every later level.
  Partition const& at(std::size_t level) const {
    if (level == 0) throw PreconditionError("partition levels start at 1");
    if (level <= partitions.size()) return partitions[level - 1];
    if (stabilized_at) return partitions.back();
    throw PreconditionError("level " + std::to_string(level) +
                            " is beyond the horizon " +
                            std::to_string(horizon()) +
                            " of an unstabilized tower");
  }
};

namespace detail {

// Groups vertices by signature; class indices follow first appearance in
// vertex order, which is the least-vertex ordering.
template <class Sig>
Partition partition_by(std::size_t level, std::vector<Sig> const& sigs) {
  Partition p;
  p.level = level;
  p.class_of.resize(sigs.size());
  std::map<Sig, std::size_t> index;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t v = 0; v < sigs.size(); ++v) {
    auto [it, fresh] = index.emplace(sigs[v], members.size());
    if (fresh) members.emplace_back();
    members[it->second].push_back(v);
    p.class_of[v] = it->second;
  }
  for (auto& m : members) p.classes.emplace_back(std::move(m));
  return p;
}

inline Partition first_partition(LabelledGraph const& g) {
  std::vector<std::vector<std::size_t>> sigs(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (auto k : g.in_edges(v)) sigs[v].push_back(g.edges()[k].label);
    std::sort(sigs[v].begin(), sigs[v].end());
    sigs[v].erase(std::unique(sigs[v].begin(), sigs[v].end()), sigs[v].end());
  }
  return partition_by(1, sigs);
}

// v ~_{l+1} w iff they share their l-class and the set of
// (l-class of source, label) over incoming edges.
inline Partition refine(LabelledGraph const& g, Partition const& prev) {
  using Sig = std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>;
  std::vector<Sig> sigs(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    sigs[v].first = prev.class_of[v];
    auto& in = sigs[v].second;
    for (auto k : g.in_edges(v)) {
      auto const& e = g.edges()[k];
      in.emplace_back(prev.class_of[e.source], e.label);
    }
    std::sort(in.begin(), in.end());
    in.erase(std::unique(in.begin(), in.end()), in.end());
  }
  return partition_by(prev.level + 1, sigs);
}

}  // namespace detail

/// Throws PreconditionError unless g is left-resolving with no sinks and no
/// sources.
inline void require_omega_ready(LabelledGraph const& g, char const* who) {
  auto rep = validate_graph(g, 1);
  auto problems = rep.problems();
  if (!problems.empty()) {
    throw PreconditionError(std::string(who) + ": " + problems.front());
  }
}

/// Omega_1, ..., Omega_L by backward refinement, L = min(max_level, s + 1)
/// where s is the least level with Omega_s = Omega_{s+1}.
inline PartitionTower refine_tower(LabelledGraph const& g,
                                   std::size_t max_level = 32) {
  if (max_level == 0) throw PreconditionError("refine_tower: max_level must be >= 1");
  require_omega_ready(g, "refine_tower");
  PartitionTower t;
  t.partitions.push_back(detail::first_partition(g));
  while (true) {
    Partition next = detail::refine(g, t.partitions.back());
    if (next.same_classes(t.partitions.back())) {
      t.stabilized_at = t.partitions.back().level;
      Partition again = detail::refine(g, next);
      if (!again.same_classes(next)) {
        throw ConsistencyError("refine_tower: partition changed after "
                               "stabilizing at level " +
                               std::to_string(*t.stabilized_at));
      }
      if (t.partitions.size() < max_level) t.partitions.push_back(std::move(next));
      break;
    }
    if (t.partitions.size() == max_level) break;
    t.partitions.push_back(std::move(next));
  }
  return t;
}

using Word = std::vector<std::size_t>;

/// Labels joined into a word; a "." separates letters when some label is
/// longer than one character.
inline std::string word_to_string(LabelledGraph const& g, Word const& w) {
  bool const dotted = std::any_of(
      g.alphabet().begin(), g.alphabet().end(),
      [](std::string const& a) { return a.size() != 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (dotted && i) out += '.';
    out += g.label_name(w[i]);
  }
  return out;
}

/// Lambda_l(v): labels of all paths of length 1..l ending at v, by
/// exhaustive backward enumeration. Refuses when |E^1|^l exceeds `cap`.
inline std::set<Word> lambda_set(LabelledGraph const& g, std::size_t v,
                                 std::size_t level,
                                 std::size_t cap = 1u << 22) {
  if (v >= g.vertex_count()) throw PreconditionError("lambda_set: no such vertex");
  if (level == 0) throw PreconditionError("lambda_set: level must be >= 1");
  double bound = 1;
  for (std::size_t k = 0; k < level; ++k) bound *= static_cast<double>(g.edge_count());
  if (bound > static_cast<double>(cap)) {
    throw ResourceError("lambda_set: enumeration bound " +
                        std::to_string(static_cast<long double>(bound)) +
                        " exceeds cap " + std::to_string(cap));
  }
  std::set<Word> out;
  // (start vertex, word) pairs, word read forwards along the path.
  std::set<std::pair<std::size_t, Word>> frontier{{v, {}}};
  for (std::size_t len = 1; len <= level; ++len) {
    std::set<std::pair<std::size_t, Word>> next;
    for (auto const& [u, w] : frontier) {
      for (auto k : g.in_edges(u)) {
        auto const& e = g.edges()[k];
        Word w2;
        w2.reserve(w.size() + 1);
        w2.push_back(e.label);
        w2.insert(w2.end(), w.begin(), w.end());
        out.insert(w2);
        next.emplace(e.source, std::move(w2));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// The (level+1)-classes whose union is r(class, a), in index order.
inline std::vector<std::size_t> class_relative_range(
    LabelledGraph const& g, PartitionTower const& tower, std::size_t level,
    std::size_t class_index, std::size_t letter) {
  auto const& here = tower.at(level);
  auto const& next = tower.at(level + 1);
  VertexSet const range = relative_range(g, here.classes.at(class_index), letter);
  std::vector<std::size_t> out;
  for (auto v : range) out.push_back(next.class_of[v]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  VertexSet cover;
  for (auto c : out) cover = cover | next.classes[c];
  if (cover != range) {
    throw ConsistencyError("class_relative_range: r(" +
                           g.format(here.classes[class_index]) + ", " +
                           g.label_name(letter) + ") = " + g.format(range) +
                           " is not a union of level " +
                           std::to_string(level + 1) + " classes");
  }
  return out;
}

/// One "level k: {v1,v2}" line per class.
inline std::string dump_tower_text(LabelledGraph const& g,
                                   PartitionTower const& t) {
  std::string out;
  for (auto const& p : t.partitions) {
    for (auto const& c : p.classes) {
      out += "level " + std::to_string(p.level) + ": " + g.format(c) + "\n";
    }
  }
  out += "stabilized_at: " +
         (t.stabilized_at ? std::to_string(*t.stabilized_at) : std::string("none")) +
         "\n";
  return out;
}

}  // namespace lgk
