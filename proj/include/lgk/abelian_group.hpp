#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lgk/int_matrix.hpp"
#include "lgk/smith.hpp"

namespace lgk {

/// Finitely generated abelian group Z^r + Z/d1 + ... + Z/dk with d1 | ... | dk
/// and every di >= 2.
///
/// Generators are ordered torsion first, then free. Two coordinate maps tie
/// the abstract generators to the ambient lattice the group was computed in:
/// `to_generators` (g x n) sends an ambient vector to generator coordinates
/// (torsion coordinates still need reducing mod di), and `from_generators`
/// (n x g) sends a generator to an ambient representative.
///
/// Equality is isomorphism; the coordinate maps never take part in it.
struct FGAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  IntMatrix to_generators;
  IntMatrix from_generators;

  std::size_t generator_count() const { return torsion.size() + free_rank; }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

  /// Relation order of generator k; zero for free generators.
  Integer order_of(std::size_t k) const {
    return k < torsion.size() ? torsion[k] : Integer(0);
  }

  /// Reduces a coordinate vector into canonical form.
  void reduce(std::vector<Integer>& coords) const {
    for (std::size_t k = 0; k < torsion.size(); ++k) {
      coords[k] = mod_nonneg(coords[k], torsion[k]);
    }
  }

  friend bool operator==(FGAbelianGroup const& a, FGAbelianGroup const& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

/// Canonical text form: "0", or "Z^r" / "Z" and "Z/d" parts joined by " + ",
/// free part first and torsion in divisibility order.
inline std::string to_string(FGAbelianGroup const& g) {
  if (g.is_trivial()) {
    return "0";
  }
  std::string out;
  auto append = [&out](std::string const& part) {
    if (!out.empty()) out += " + ";
    out += part;
  };
  if (g.free_rank == 1) {
    append("Z");
  } else if (g.free_rank > 1) {
    append("Z^" + std::to_string(g.free_rank));
  }
  for (auto const& d : g.torsion) {
    append("Z/" + d.str());
  }
  return out;
}

inline FGAbelianGroup make_group(std::size_t free_rank,
                                 std::vector<Integer> torsion = {}) {
  FGAbelianGroup g;
  g.free_rank = free_rank;
  g.torsion = std::move(torsion);
  return g;
}

namespace detail {

inline FGAbelianGroup cokernel_from_smith(SmithDecomposition const& s,
                                          std::size_t rows) {
  FGAbelianGroup g;
  std::vector<std::size_t> gens;
  for (std::size_t k = 0; k < s.rank; ++k) {
    if (s.d(k, k) > 1) {
      gens.push_back(k);
      g.torsion.push_back(s.d(k, k));
    }
  }
  for (std::size_t k = s.rank; k < rows; ++k) {
    gens.push_back(k);
  }
  g.free_rank = rows - s.rank;
  g.to_generators = s.u.select_rows(gens);
  g.from_generators = s.u_inv.select_columns(gens);
  return g;
}

// Whether every column of `cols` lies in the image of the matrix whose normal
// form is `s`.
inline bool columns_in_image(SmithDecomposition const& s,
                             IntMatrix const& cols) {
  IntMatrix z = s.u * cols;
  for (std::size_t j = 0; j < z.cols(); ++j) {
    for (std::size_t k = 0; k < z.rows(); ++k) {
      if (k < s.rank) {
        if (z(k, j) % s.d(k, k) != 0) return false;
      } else if (z(k, j) != 0) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// coker(m) = Z^rows / im(m), read off the normal form of m.
inline FGAbelianGroup cokernel_presentation(IntMatrix const& m) {
  return detail::cokernel_from_smith(smith_normal_form(m), m.rows());
}

/// ker(m) as a free group, with coordinates relative to the domain of m.
inline FGAbelianGroup kernel_group(IntMatrix const& m) {
  auto s = smith_normal_form(m);
  std::vector<std::size_t> idx;
  for (std::size_t j = s.rank; j < m.cols(); ++j) {
    idx.push_back(j);
  }
  FGAbelianGroup g;
  g.free_rank = idx.size();
  g.from_generators = s.v.select_columns(idx);
  g.to_generators = s.v_inv.select_rows(idx);
  return g;
}

/// Homomorphism between two presented groups, as a matrix in generator
/// coordinates (columns: source generators, rows: target generators), with
/// torsion rows reduced.
struct GroupHom {
  FGAbelianGroup source;
  FGAbelianGroup target;
  IntMatrix matrix;
};

enum class Homology { kernel, cokernel };

/// The map induced by `bridge` on kernels or cokernels of a commuting pair.
///
/// kernel mode: bridge maps dom(a_src) -> dom(a_tgt) and must carry
/// ker(a_src) into ker(a_tgt). cokernel mode: bridge maps cod(a_src) ->
/// cod(a_tgt) and must carry im(a_src) into im(a_tgt). Both inclusions are
/// checked; a failure throws ConsistencyError.
inline GroupHom induced_hom(IntMatrix const& a_src, IntMatrix const& a_tgt,
                            IntMatrix const& bridge, Homology which) {
  GroupHom h;
  if (which == Homology::kernel) {
    if (bridge.cols() != a_src.cols() || bridge.rows() != a_tgt.cols()) {
      throw ShapeError("induced_hom(kernel): bridge is " + bridge.shape() +
                       ", expected " + std::to_string(a_tgt.cols()) + "x" +
                       std::to_string(a_src.cols()));
    }
    h.source = kernel_group(a_src);
    h.target = kernel_group(a_tgt);
    IntMatrix images = bridge * h.source.from_generators;
    if (!(a_tgt * images).is_zero()) {
      throw ConsistencyError(
          "induced_hom(kernel): bridge does not map ker(a_src) into "
          "ker(a_tgt)");
    }
    h.matrix = h.target.to_generators * images;
    return h;
  }
  if (bridge.cols() != a_src.rows() || bridge.rows() != a_tgt.rows()) {
    throw ShapeError("induced_hom(cokernel): bridge is " + bridge.shape() +
                     ", expected " + std::to_string(a_tgt.rows()) + "x" +
                     std::to_string(a_src.rows()));
  }
  auto s_tgt = smith_normal_form(a_tgt);
  if (!detail::columns_in_image(s_tgt, bridge * a_src)) {
    throw ConsistencyError(
        "induced_hom(cokernel): bridge does not map im(a_src) into im(a_tgt)");
  }
  h.source = cokernel_presentation(a_src);
  h.target = detail::cokernel_from_smith(s_tgt, a_tgt.rows());
  h.matrix = h.target.to_generators * bridge * h.source.from_generators;
  for (std::size_t k = 0; k < h.target.torsion.size(); ++k) {
    for (std::size_t j = 0; j < h.matrix.cols(); ++j) {
      h.matrix(k, j) = mod_nonneg(h.matrix(k, j), h.target.torsion[k]);
    }
  }
  return h;
}

/// f after g. Requires g.target and f.source to share coordinates.
inline GroupHom compose(GroupHom const& f, GroupHom const& g) {
  GroupHom h{g.source, f.target, f.matrix * g.matrix};
  for (std::size_t k = 0; k < h.target.torsion.size(); ++k) {
    for (std::size_t j = 0; j < h.matrix.cols(); ++j) {
      h.matrix(k, j) = mod_nonneg(h.matrix(k, j), h.target.torsion[k]);
    }
  }
  return h;
}

inline bool same_map(GroupHom const& a, GroupHom const& b) {
  return a.source == b.source && a.target == b.target && a.matrix == b.matrix;
}

namespace detail {

// Relation columns for the target: column i is d_i e_i for each torsion
// generator.
inline IntMatrix relation_matrix(FGAbelianGroup const& g) {
  IntMatrix r(g.generator_count(), g.torsion.size());
  for (std::size_t i = 0; i < g.torsion.size(); ++i) {
    r(i, i) = g.torsion[i];
  }
  return r;
}

}  // namespace detail

/// Kernel of h is trivial.
inline bool is_injective(GroupHom const& h) {
  // x is in ker h iff (x, y) solves [H | R'] (x; y) = 0 for some y.
  IntMatrix joint = h.matrix.hconcat(detail::relation_matrix(h.target));
  IntMatrix k = kernel_basis(joint);
  std::size_t const g = h.source.generator_count();
  for (std::size_t j = 0; j < k.cols(); ++j) {
    for (std::size_t i = 0; i < g; ++i) {
      Integer const order = h.source.order_of(i);
      if (order == 0 ? k(i, j) != 0 : k(i, j) % order != 0) {
        return false;
      }
    }
  }
  return true;
}

/// Presentation of target / im(h).
inline FGAbelianGroup hom_cokernel(GroupHom const& h) {
  return cokernel_presentation(
      h.matrix.hconcat(detail::relation_matrix(h.target)));
}

inline bool is_surjective(GroupHom const& h) {
  return hom_cokernel(h).is_trivial();
}

inline bool is_isomorphism(GroupHom const& h) {
  return is_injective(h) && is_surjective(h);
}

/// Injective with free cokernel, so the target splits as image + free.
inline bool is_split_injective(GroupHom const& h) {
  return is_injective(h) && hom_cokernel(h).torsion.empty();
}

}  // namespace lgk
