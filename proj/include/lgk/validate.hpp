#pragma once

#include <cstddef>
#include <optional>
#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lgk/error.hpp"
#include "lgk/graph.hpp"

namespace lgk {

/// One structural check. `witness` names the offending vertex, letter or set
/// whenever the check reports a problem and is empty otherwise.
struct Flag {
  bool value = true;
  std::string witness;
};

/// Unset members were not examined. For has_sinks and has_sources the
/// problem state is `true`; for every other flag it is `false`.
struct ValidationReport {
  std::optional<Flag> left_resolving;
  std::optional<Flag> weakly_left_resolving;
  std::optional<Flag> regular;
  std::optional<Flag> accommodating;
  std::optional<Flag> has_sinks;
  std::optional<Flag> has_sources;
  std::optional<Flag> set_finite_at_horizon;
  std::optional<Flag> receiver_set_finite_at_horizon;

  /// (name, flag, whether `true` is the good state) in a fixed order.
  std::vector<std::tuple<char const*, std::optional<Flag> const*, bool>>
  entries() const {
    return {{"left_resolving", &left_resolving, true},
            {"weakly_left_resolving", &weakly_left_resolving, true},
            {"regular", &regular, true},
            {"accommodating", &accommodating, true},
            {"has_sinks", &has_sinks, false},
            {"has_sources", &has_sources, false},
            {"set_finite_at_horizon", &set_finite_at_horizon, true},
            {"receiver_set_finite_at_horizon", &receiver_set_finite_at_horizon,
             true}};
  }

  /// "name: witness" for every examined flag in its problem state.
  std::vector<std::string> problems() const {
    std::vector<std::string> out;
    for (auto const& [name, flag, good] : entries()) {
      if (*flag && (*flag)->value != good) {
        out.push_back(std::string(name) + ": " + (*flag)->witness);
      }
    }
    return out;
  }

  bool ok() const { return problems().empty(); }
};

/// Graph-level checks. Finite graphs are trivially set-finite and receiver
/// set-finite at every horizon; both flags are reported for uniformity.
inline ValidationReport validate_graph(LabelledGraph const& g,
                                       std::size_t horizon) {
  if (horizon == 0) throw PreconditionError("validate_graph: horizon must be >= 1");
  ValidationReport rep;
  rep.left_resolving = Flag{};
  rep.has_sinks = Flag{false, {}};
  rep.has_sources = Flag{false, {}};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (rep.left_resolving->value) {
      std::set<std::size_t> seen;
      for (auto k : g.in_edges(v)) {
        std::size_t const a = g.edges()[k].label;
        if (!seen.insert(a).second) {
          rep.left_resolving =
              Flag{false, "(" + g.vertex_name(v) + ", " + g.label_name(a) + ")"};
          break;
        }
      }
    }
    if (g.out_edges(v).empty() && !rep.has_sinks->value) {
      rep.has_sinks = Flag{true, g.vertex_name(v)};
    }
    if (g.in_edges(v).empty() && !rep.has_sources->value) {
      rep.has_sources = Flag{true, g.vertex_name(v)};
    }
  }
  rep.set_finite_at_horizon = Flag{};
  rep.receiver_set_finite_at_horizon = Flag{};
  return rep;
}

inline VertexSet sinks(LabelledGraph const& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.out_edges(v).empty()) out.push_back(v);
  }
  return VertexSet(std::move(out));
}

struct FamilyCheckOptions {
  /// Also require the sink singletons that generate E^{0,-}.
  bool contains_e0minus = false;
};

namespace detail {

inline bool member(SetFamily const& fam, VertexSet const& s) {
  return s.empty() || std::binary_search(fam.begin(), fam.end(), s);
}

}  // namespace detail

/// Family-level checks on a candidate accommodating family.
///
/// Closure under relative ranges and weak left-resolution are tested on
/// single letters: for a family closed under one-letter ranges,
/// r(A, wa) = r(r(A, w), a) carries both properties to every word.
inline ValidationReport validate_family(LabelledGraph const& g, SetFamily fam,
                                        FamilyCheckOptions opts = {}) {
  if (fam.empty()) throw PreconditionError("validate_family: empty family");
  canonicalize(fam);
  ValidationReport rep;
  auto fmt = [&g](VertexSet const& s) { return g.format(s); };
  std::size_t const letters = g.label_count();

  rep.accommodating = Flag{};
  auto fail_acc = [&rep](std::string w) {
    if (rep.accommodating->value) rep.accommodating = Flag{false, std::move(w)};
  };
  for (std::size_t a = 0; a < letters; ++a) {
    if (!detail::member(fam, range_of_letter(g, a))) {
      fail_acc("r(" + g.label_name(a) + ") = " + fmt(range_of_letter(g, a)) +
               " is not in the family");
    }
  }
  if (opts.contains_e0minus) {
    for (auto v : sinks(g)) {
      if (!detail::member(fam, VertexSet{v})) {
        fail_acc("sink singleton {" + g.vertex_name(v) + "} is not in the family");
      }
    }
  }
  for (auto const& x : fam) {
    for (std::size_t a = 0; a < letters; ++a) {
      auto r = relative_range(g, x, a);
      if (!detail::member(fam, r)) {
        fail_acc("r(" + fmt(x) + ", " + g.label_name(a) + ") = " + fmt(r) +
                 " is not in the family");
      }
    }
    for (auto const& y : fam) {
      if (!detail::member(fam, x & y)) {
        fail_acc(fmt(x) + " & " + fmt(y) + " is not in the family");
      }
      if (!detail::member(fam, x | y)) {
        fail_acc(fmt(x) + " | " + fmt(y) + " is not in the family");
      }
    }
  }

  rep.weakly_left_resolving = Flag{};
  for (std::size_t i = 0; i < fam.size() && rep.weakly_left_resolving->value; ++i) {
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      bool bad = false;
      for (std::size_t a = 0; a < letters && !bad; ++a) {
        auto lhs = relative_range(g, fam[i], a) & relative_range(g, fam[j], a);
        if (lhs != relative_range(g, fam[i] & fam[j], a)) {
          rep.weakly_left_resolving =
              Flag{false, "(" + fmt(fam[i]) + ", " + fmt(fam[j]) + ", " +
                              g.label_name(a) + ")"};
          bad = true;
        }
      }
      if (bad) break;
    }
  }

  rep.regular = Flag{};
  VertexSet const sink_set = sinks(g);
  for (std::size_t i = 0; i < fam.size() && rep.regular->value; ++i) {
    if (fam[i].intersects(sink_set)) continue;
    auto labels = outgoing_labels(g, fam[i]);
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      if (fam[j].intersects(sink_set) || outgoing_labels(g, fam[j]) != labels) {
        continue;
      }
      bool same = true;
      for (auto a : labels) {
        same = same && relative_range(g, fam[i], a) == relative_range(g, fam[j], a);
      }
      if (same) {
        rep.regular = Flag{false, "(" + fmt(fam[i]) + ", " + fmt(fam[j]) + ")"};
        break;
      }
    }
  }
  return rep;
}

/// Adds every union of members. Relative ranges and intersections distribute
/// over unions, so closure under them survives.
inline SetFamily close_under_unions(SetFamily fam, std::size_t cap = 1u << 16) {
  canonicalize(fam);
  std::set<VertexSet> seen(fam.begin(), fam.end());
  SetFamily const gens = fam;
  std::vector<VertexSet> frontier = fam;
  while (!frontier.empty()) {
    std::vector<VertexSet> next;
    for (auto const& x : frontier) {
      for (auto const& y : gens) {
        auto u = x | y;
        if (seen.insert(u).second) {
          if (seen.size() > cap) {
            throw ResourceError("close_under_unions: more than " +
                                std::to_string(cap) + " sets");
          }
          next.push_back(std::move(u));
        }
      }
    }
    fam.insert(fam.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  canonicalize(fam);
  return fam;
}

/// The closure of {r(a)} and the sink singletons under one-letter relative
/// ranges and intersections. The empty set is left implicit. Unions are not
/// added; see close_under_unions.
inline SetFamily build_E0minus(LabelledGraph const& g) {
  std::set<VertexSet> seen;
  std::vector<VertexSet> work;
  auto add = [&](VertexSet s) {
    if (!s.empty() && seen.insert(s).second) work.push_back(std::move(s));
  };
  for (std::size_t a = 0; a < g.label_count(); ++a) add(range_of_letter(g, a));
  for (auto v : sinks(g)) add(VertexSet{v});

  std::size_t const n = g.vertex_count();
  std::size_t const cap = n >= 63 ? std::size_t(-1) : (std::size_t(1) << n);
  std::size_t steps = 0;
  while (!work.empty()) {
    if (++steps > cap) {
      throw ResourceError("build_E0minus: closure exceeded 2^|E0| steps");
    }
    VertexSet x = std::move(work.back());
    work.pop_back();
    for (std::size_t a = 0; a < g.label_count(); ++a) {
      add(relative_range(g, x, a));
    }
    std::vector<VertexSet> snapshot(seen.begin(), seen.end());
    for (auto const& y : snapshot) add(x & y);
  }
  return SetFamily(seen.begin(), seen.end());
}

}  // namespace lgk
