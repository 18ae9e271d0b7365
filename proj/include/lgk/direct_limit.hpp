#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lgk/abelian_group.hpp"
#include "lgk/error.hpp"

namespace lgk {

enum class LimitKind { stabilized, split_pattern, undetermined };

inline char const* to_string(LimitKind k) {
  switch (k) {
    case LimitKind::stabilized:
      return "Stabilized";
    case LimitKind::split_pattern:
      return "SplitPattern";
    case LimitKind::undetermined:
      return "Undetermined";
  }
  return "?";
}

/// Classified inductive limit of a finite observed prefix of a sequence
/// G_1 -> G_2 -> ... -> G_horizon.
///
/// `level` is 1-based. For a split pattern, `added_free_rank` is the free
/// rank gained after `level`, or nullopt when every observed step gained
/// rank and the limit is reported as having countably infinite free rank.
struct LimitGroup {
  LimitKind kind = LimitKind::undetermined;
  std::size_t level = 0;
  FGAbelianGroup base;
  std::optional<std::size_t> added_free_rank = 0;
  bool beyond_horizon = false;
  std::vector<FGAbelianGroup> levels;
  std::vector<GroupHom> homs;
  std::size_t horizon = 0;

  /// The limit as a finitely generated group, when it is one.
  std::optional<FGAbelianGroup> finite_value() const {
    if (kind == LimitKind::stabilized) return base;
    if (kind == LimitKind::split_pattern && added_free_rank) {
      return make_group(base.free_rank + *added_free_rank, base.torsion);
    }
    return std::nullopt;
  }
};

/// "Z^inf + Z/2" style for infinite free rank, the canonical group string
/// otherwise, and "undetermined" when no classification applies.
inline std::string to_string(LimitGroup const& g) {
  if (auto v = g.finite_value()) return to_string(*v);
  if (g.kind == LimitKind::undetermined) return "undetermined";
  std::string out = "Z^inf";
  for (auto const& d : g.base.torsion) {
    out += " + Z/" + d.str();
  }
  return out;
}

namespace detail {

// Least index s such that pred holds for every hom from s to the end; the
// hom count when it fails for the last one.
template <class Pred>
std::size_t tail_start(std::vector<GroupHom> const& homs, Pred pred) {
  std::size_t s = homs.size();
  while (s > 0 && pred(homs[s - 1])) --s;
  return s;
}

}  // namespace detail

/// Classifies lim(levels, homs). Rules, first match wins:
/// stabilized from the least s after which every map is an isomorphism;
/// split pattern from the least s after which every map is split injective
/// (which forces torsion to map isomorphically); otherwise undetermined.
/// A sequence with no maps is undetermined: there is nothing to observe.
inline LimitGroup direct_limit(std::vector<FGAbelianGroup> levels,
                               std::vector<GroupHom> homs,
                               std::size_t horizon) {
  if (levels.size() != horizon) {
    throw ShapeError("direct_limit: " + std::to_string(levels.size()) +
                     " levels for horizon " + std::to_string(horizon));
  }
  if (horizon > 0 && homs.size() + 1 != horizon) {
    throw ShapeError("direct_limit: expected " + std::to_string(horizon - 1) +
                     " maps, got " + std::to_string(homs.size()));
  }
  for (std::size_t k = 0; k < homs.size(); ++k) {
    if (!(homs[k].source == levels[k]) || !(homs[k].target == levels[k + 1])) {
      throw ShapeError("direct_limit: map " + std::to_string(k + 1) +
                       " does not run from level " + std::to_string(k + 1) +
                       " to level " + std::to_string(k + 2));
    }
  }

  LimitGroup out;
  out.horizon = horizon;
  if (!homs.empty()) {
    std::size_t const n = homs.size();
    std::size_t s = detail::tail_start(homs, is_isomorphism);
    if (s < n) {
      out.kind = LimitKind::stabilized;
      out.level = s + 1;
      out.base = levels[s];
    } else {
      s = detail::tail_start(homs, [](GroupHom const& h) {
        return is_split_injective(h) && h.source.torsion == h.target.torsion;
      });
      if (s < n) {
        out.kind = LimitKind::split_pattern;
        out.level = s + 1;
        out.base = levels[s];
        out.beyond_horizon = true;
        bool every_step_grows = true;
        std::size_t added = 0;
        for (std::size_t k = s; k < n; ++k) {
          std::size_t const step =
              levels[k + 1].free_rank - levels[k].free_rank;
          every_step_grows = every_step_grows && step > 0;
          added += step;
        }
        if (every_step_grows) {
          out.added_free_rank = std::nullopt;
        } else {
          out.added_free_rank = added;
        }
      }
    }
  }
  out.levels = std::move(levels);
  out.homs = std::move(homs);
  return out;
}

}  // namespace lgk
