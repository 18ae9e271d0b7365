#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lgk/abelian_group.hpp"
#include "lgk/direct_limit.hpp"
#include "lgk/error.hpp"
#include "lgk/graph.hpp"
#include "lgk/int_matrix.hpp"
#include "lgk/partition.hpp"
#include "lgk/validate.hpp"

namespace lgk {

using KGroup = std::variant<FGAbelianGroup, LimitGroup>;

inline std::string to_string(KGroup const& g) {
  return std::visit([](auto const& x) { return to_string(x); }, g);
}

/// The group itself when it is finitely generated and known.
inline std::optional<FGAbelianGroup> finite_value(KGroup const& g) {
  if (auto const* f = std::get_if<FGAbelianGroup>(&g)) return *f;
  return std::get<LimitGroup>(g).finite_value();
}

enum class KMode { stabilized, tower, explicit_family, graph_algebra };

inline char const* to_string(KMode m) {
  switch (m) {
    case KMode::stabilized:
      return "stabilized";
    case KMode::tower:
      return "tower";
    case KMode::explicit_family:
      return "explicit_family";
    case KMode::graph_algebra:
      return "graph_algebra";
  }
  return "?";
}

struct LevelRow {
  std::size_t level;
  std::size_t class_count;
  FGAbelianGroup ker;
  FGAbelianGroup coker;
};

/// Outcome of (1-Phi)_{l+1} i_l == i_{l+1} (1-Phi)_l at one level.
struct IntertwiningCheck {
  std::size_t level;
  bool passed;
};

struct KTheoryResult {
  KGroup k0;
  KGroup k1;
  KMode mode = KMode::stabilized;
  std::vector<LevelRow> levels;
  std::vector<IntertwiningCheck> checks;
  std::optional<std::size_t> stabilized_at;
};

/// Columns indexed by Omega_l, rows by Omega_{l+1}:
/// chi_c |-> i_l(chi_c) - sum over a in L(c E^1) of chi_{r(c, a)}.
inline IntMatrix one_minus_phi_matrix(LabelledGraph const& g,
                                      PartitionTower const& tower,
                                      std::size_t level) {
  auto const& here = tower.at(level);
  auto const& next = tower.at(level + 1);
  IntMatrix m(next.size(), here.size());
  for (std::size_t d = 0; d < next.size(); ++d) {
    m(d, here.class_of[next.classes[d].members().front()]) += 1;
  }
  for (std::size_t c = 0; c < here.size(); ++c) {
    for (auto a : outgoing_labels(g, here.classes[c])) {
      for (auto d : class_relative_range(g, tower, level, c, a)) m(d, c) -= 1;
    }
  }
  return m;
}

/// 0/1 matrix of i_l: the column of an l-class marks the (l+1)-classes it
/// splits into.
inline IntMatrix inclusion_matrix(LabelledGraph const&,
                                  PartitionTower const& tower,
                                  std::size_t level) {
  auto const& here = tower.at(level);
  auto const& next = tower.at(level + 1);
  IntMatrix m(next.size(), here.size());
  for (std::size_t d = 0; d < next.size(); ++d) {
    m(d, here.class_of[next.classes[d].members().front()]) = 1;
  }
  return m;
}

inline bool intertwines(IntMatrix const& phi, IntMatrix const& phi_next,
                        IntMatrix const& incl, IntMatrix const& incl_next) {
  return phi_next * incl == incl_next * phi;
}

/// Per-level groups, connecting maps and both direct limits of a ladder
/// phi[k] : Z^dims[k] -> Z^dims[k+1] with inclusions incl[k] of the same
/// shape. The kernel map at level k is induced by incl[k], the cokernel map
/// by incl[k+1]. Intertwining is checked at every level that has both
/// neighbours; a failure throws ConsistencyError.
inline KTheoryResult ladder_ktheory(std::vector<IntMatrix> const& phi,
                                    std::vector<IntMatrix> const& incl,
                                    std::vector<std::size_t> const& class_counts) {
  if (phi.size() != incl.size() || phi.size() != class_counts.size()) {
    throw ShapeError("ladder_ktheory: mismatched level counts");
  }
  KTheoryResult res;
  res.mode = KMode::tower;
  std::size_t const n = phi.size();
  std::vector<FGAbelianGroup> kers, cokers;
  for (std::size_t k = 0; k < n; ++k) {
    kers.push_back(kernel_group(phi[k]));
    cokers.push_back(cokernel_presentation(phi[k]));
    res.levels.push_back({k + 1, class_counts[k], kers.back(), cokers.back()});
  }
  std::vector<GroupHom> ker_homs, coker_homs;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    bool ok = intertwines(phi[k], phi[k + 1], incl[k], incl[k + 1]);
    res.checks.push_back({k + 1, ok});
    if (!ok) {
      throw ConsistencyError("intertwining fails at level " + std::to_string(k + 1));
    }
    ker_homs.push_back(induced_hom(phi[k], phi[k + 1], incl[k], Homology::kernel));
    coker_homs.push_back(
        induced_hom(phi[k], phi[k + 1], incl[k + 1], Homology::cokernel));
  }
  res.k1 = direct_limit(std::move(kers), std::move(ker_homs), n);
  res.k0 = direct_limit(std::move(cokers), std::move(coker_homs), n);
  return res;
}

/// K-theory of C*(E, L, E^{0,-}) through the generalized-vertex tower.
///
/// When the tower stabilizes at s, (1-Phi)_s is square and K1, K0 are its
/// kernel and cokernel. Otherwise the per-level ladder is assembled and
/// both direct limits classified.
inline KTheoryResult ktheory_of_labelled_graph(LabelledGraph const& g,
                                               std::size_t max_level = 32) {
  PartitionTower const tower = refine_tower(g, max_level);
  if (!tower.stabilized_at) {
    std::vector<IntMatrix> phi, incl;
    std::vector<std::size_t> counts;
    for (std::size_t l = 1; l < tower.horizon(); ++l) {
      phi.push_back(one_minus_phi_matrix(g, tower, l));
      incl.push_back(inclusion_matrix(g, tower, l));
      counts.push_back(tower.at(l).size());
    }
    return ladder_ktheory(phi, incl, counts);
  }

  std::size_t const s = *tower.stabilized_at;
  KTheoryResult res;
  res.mode = KMode::stabilized;
  res.stabilized_at = s;
  std::vector<IntMatrix> phi, incl;
  for (std::size_t l = 1; l <= s + 1; ++l) {
    phi.push_back(one_minus_phi_matrix(g, tower, l));
    incl.push_back(inclusion_matrix(g, tower, l));
  }
  for (std::size_t l = 1; l <= s; ++l) {
    res.levels.push_back({l, tower.at(l).size(), kernel_group(phi[l - 1]),
                          cokernel_presentation(phi[l - 1])});
    bool ok = intertwines(phi[l - 1], phi[l], incl[l - 1], incl[l]);
    res.checks.push_back({l, ok});
    if (!ok) {
      throw ConsistencyError("intertwining fails at level " + std::to_string(l));
    }
  }
  res.k1 = res.levels.back().ker;
  res.k0 = res.levels.back().coker;
  return res;
}

/// Atom basis for an explicit finite family B.
///
/// atoms: nonempty classes of vertices of the union of B with equal
/// membership in every member, ordered by least vertex. hat_members: every
/// nonempty C \ D with C in B, D in B or empty, D inside C, with the first
/// such (C, D) found. n_sets: the members of hat-B whose relative ranges all
/// vanish (r(C, a) = r(D, a) for every letter). j_atoms: indices of the
/// atoms disjoint from every n_set.
struct FamilyBasis {
  struct Member {
    VertexSet set;
    VertexSet c;
    VertexSet d;
  };
  std::vector<VertexSet> atoms;
  std::vector<Member> hat_members;
  std::vector<VertexSet> n_sets;
  std::vector<std::size_t> j_atoms;
  std::vector<std::size_t> atom_rep;
  std::vector<std::optional<std::size_t>> atom_of;
};

inline FamilyBasis build_family_basis(LabelledGraph const& g, SetFamily fam) {
  canonicalize(fam);
  FamilyBasis fb;
  std::size_t const nv = g.vertex_count();

  std::vector<std::vector<bool>> profile(nv);
  std::vector<bool> covered(nv, false);
  for (auto const& s : fam) {
    for (auto v : s) covered[v] = true;
  }
  for (std::size_t v = 0; v < nv; ++v) {
    for (auto const& s : fam) profile[v].push_back(s.contains(v));
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::vector<bool>> keys;
  fb.atom_of.assign(nv, std::nullopt);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!covered[v]) continue;
    std::size_t k = 0;
    while (k < keys.size() && keys[k] != profile[v]) ++k;
    if (k == keys.size()) {
      keys.push_back(profile[v]);
      groups.emplace_back();
    }
    groups[k].push_back(v);
    fb.atom_of[v] = k;
  }
  for (auto& grp : groups) fb.atoms.emplace_back(std::move(grp));

  std::vector<VertexSet> with_empty{VertexSet{}};
  with_empty.insert(with_empty.end(), fam.begin(), fam.end());
  std::set<VertexSet> seen, seen_n;
  for (auto const& c : fam) {
    for (auto const& d : with_empty) {
      if (!d.is_subset_of(c) || d == c) continue;
      VertexSet a = c - d;
      if (seen.insert(a).second) fb.hat_members.push_back({a, c, d});
      bool null_ranges = true;
      for (std::size_t l = 0; l < g.label_count() && null_ranges; ++l) {
        null_ranges = relative_range(g, c, l) == relative_range(g, d, l);
      }
      if (null_ranges && seen_n.insert(a).second) fb.n_sets.push_back(a);
    }
  }

  for (std::size_t k = 0; k < fb.atoms.size(); ++k) {
    auto it = std::find_if(fb.hat_members.begin(), fb.hat_members.end(),
                           [&](auto const& m) { return m.set == fb.atoms[k]; });
    if (it == fb.hat_members.end()) {
      throw ConsistencyError("atom " + g.format(fb.atoms[k]) +
                             " has no representation C \\ D in the family");
    }
    fb.atom_rep.push_back(static_cast<std::size_t>(it - fb.hat_members.begin()));
    bool clear = std::none_of(fb.n_sets.begin(), fb.n_sets.end(),
                              [&](auto const& n) { return n.intersects(fb.atoms[k]); });
    if (clear) fb.j_atoms.push_back(k);
  }
  return fb;
}

namespace detail {

// Adds sign * chi_s in atom coordinates to column col of m.
inline void add_atoms(LabelledGraph const& g, FamilyBasis const& fb,
                      VertexSet const& s, long sign, IntMatrix& m,
                      std::size_t col) {
  VertexSet cover;
  std::vector<std::size_t> hit;
  for (auto v : s) {
    if (!fb.atom_of[v]) {
      throw ConsistencyError(g.format(s) + " leaves the union of the family");
    }
    hit.push_back(*fb.atom_of[v]);
  }
  std::sort(hit.begin(), hit.end());
  hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
  for (auto k : hit) {
    cover = cover | fb.atoms[k];
    m(k, col) += sign;
  }
  if (cover != s) {
    throw ConsistencyError(g.format(s) + " is not a union of atoms");
  }
}

}  // namespace detail

/// (1-Phi) from span{chi_A : A in hat-B_J} (basis: j_atoms) to
/// span{chi_A : A in hat-B} (basis: atoms). An atom with representation
/// C \ D maps to itself minus sum over letters of chi_{r(C,a)} - chi_{r(D,a)}.
inline IntMatrix family_one_minus_phi(LabelledGraph const& g,
                                      FamilyBasis const& fb) {
  IntMatrix m(fb.atoms.size(), fb.j_atoms.size());
  for (std::size_t col = 0; col < fb.j_atoms.size(); ++col) {
    std::size_t const k = fb.j_atoms[col];
    auto const& rep = fb.hat_members[fb.atom_rep[k]];
    m(k, col) += 1;
    for (std::size_t a = 0; a < g.label_count(); ++a) {
      detail::add_atoms(g, fb, relative_range(g, rep.c, a), -1, m, col);
      detail::add_atoms(g, fb, relative_range(g, rep.d, a), +1, m, col);
    }
  }
  return m;
}

/// K-theory of C*(E, L, B) for an explicit finite family. The family must
/// be accommodating, and the labelled space weakly left-resolving and
/// regular.
inline KTheoryResult ktheory_explicit_family(LabelledGraph const& g,
                                             SetFamily const& fam,
                                             FamilyCheckOptions opts = {}) {
  auto rep = validate_family(g, fam, opts);
  auto problems = rep.problems();
  if (!problems.empty()) {
    throw PreconditionError("ktheory_explicit_family: " + problems.front());
  }
  FamilyBasis const fb = build_family_basis(g, fam);
  IntMatrix const m = family_one_minus_phi(g, fb);
  KTheoryResult res;
  res.mode = KMode::explicit_family;
  auto ker = kernel_group(m);
  auto coker = cokernel_presentation(m);
  res.levels.push_back({1, fb.atoms.size(), ker, coker});
  res.k1 = ker;
  res.k0 = coker;
  return res;
}

/// Explicit-family mode on E^{0,-}, closed under unions first.
inline KTheoryResult ktheory_e0minus(LabelledGraph const& g) {
  return ktheory_explicit_family(g, close_under_unions(build_E0minus(g)),
                                 FamilyCheckOptions{true});
}

/// K-theory of the graph algebra C*(E), labels ignored: (1-Phi) e_v =
/// e_v - sum over edges f leaving v of e_{r(f)}, for every vertex v that
/// emits an edge; rows run over all vertices.
inline KTheoryResult graph_algebra_ktheory(LabelledGraph const& e) {
  std::vector<std::size_t> nonsingular;
  for (std::size_t v = 0; v < e.vertex_count(); ++v) {
    if (!e.out_edges(v).empty()) nonsingular.push_back(v);
  }
  IntMatrix m(e.vertex_count(), nonsingular.size());
  for (std::size_t col = 0; col < nonsingular.size(); ++col) {
    std::size_t const v = nonsingular[col];
    m(v, col) += 1;
    for (auto k : e.out_edges(v)) m(e.edges()[k].target, col) -= 1;
  }
  KTheoryResult res;
  res.mode = KMode::graph_algebra;
  auto ker = kernel_group(m);
  auto coker = cokernel_presentation(m);
  res.levels.push_back({1, e.vertex_count(), ker, coker});
  res.k1 = ker;
  res.k0 = coker;
  return res;
}

}  // namespace lgk
