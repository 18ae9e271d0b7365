#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lgk/int_matrix.hpp"

namespace lgk {

/// u * m * v == d, with d diagonal, d(0,0) | d(1,1) | ... all nonnegative,
/// and u, v unimodular. The inverses are carried along so that coordinates
/// can be moved in both directions without a second reduction.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix v_inv;
  std::size_t rank = 0;

  /// Diagonal entries d(i,i) for i < min(rows, cols).
  std::vector<Integer> diagonal() const {
    std::size_t const n = std::min(d.rows(), d.cols());
    std::vector<Integer> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(d(i, i));
    }
    return out;
  }
};

namespace detail {

class SmithReducer {
 public:
  explicit SmithReducer(IntMatrix const& m)
      : a_(m),
        u_(IntMatrix::identity(m.rows())),
        u_inv_(IntMatrix::identity(m.rows())),
        v_(IntMatrix::identity(m.cols())),
        v_inv_(IntMatrix::identity(m.cols())) {}

  SmithDecomposition run() {
    std::size_t const n = std::min(a_.rows(), a_.cols());
    std::size_t t = 0;
    for (; t < n; ++t) {
      if (!bring_pivot(t)) {
        break;
      }
      while (!(clear_cross(t) && enforce_divisibility(t))) {
        bring_pivot(t);
      }
      if (a_(t, t) < 0) {
        negate_row(t);
      }
    }
    return SmithDecomposition{std::move(u_), std::move(a_), std::move(v_),
                              std::move(u_inv_), std::move(v_inv_), t};
  }

 private:
  // Smallest nonzero |entry| in the trailing block, first in (row, col)
  // order among ties.
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(
      std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = t; i < a_.rows(); ++i) {
      for (std::size_t j = t; j < a_.cols(); ++j) {
        Integer const& x = a_(i, j);
        if (x == 0) continue;
        Integer ax = abs(x);
        if (!best || ax < best_abs) {
          best = {i, j};
          best_abs = std::move(ax);
        }
      }
    }
    return best;
  }

  bool bring_pivot(std::size_t t) {
    auto p = find_pivot(t);
    if (!p) {
      return false;
    }
    swap_rows(t, p->first);
    swap_cols(t, p->second);
    return true;
  }

  // Reduces row t and column t modulo the pivot. Returns true when both are
  // zero apart from the pivot itself.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    Integer const pivot = a_(t, t);
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      if (a_(i, t) == 0) continue;
      Integer q = a_(i, t) / pivot;
      add_row(i, t, -q);
      if (a_(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
      if (a_(t, j) == 0) continue;
      Integer q = a_(t, j) / pivot;
      add_col(j, t, -q);
      if (a_(t, j) != 0) clean = false;
    }
    return clean;
  }

  // The pivot must divide the whole trailing block; otherwise fold the
  // offending row into row t and go around again.
  bool enforce_divisibility(std::size_t t) {
    Integer const pivot = a_(t, t);
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(i, j) % pivot != 0) {
          add_row(t, i, 1);
          return false;
        }
      }
    }
    return true;
  }

  void add_row(std::size_t dst, std::size_t src, Integer const& c) {
    a_.add_row_multiple(dst, src, c);
    u_.add_row_multiple(dst, src, c);
    u_inv_.add_col_multiple(src, dst, -c);
  }
  void add_col(std::size_t dst, std::size_t src, Integer const& c) {
    a_.add_col_multiple(dst, src, c);
    v_.add_col_multiple(dst, src, c);
    v_inv_.add_row_multiple(src, dst, -c);
  }
  void swap_rows(std::size_t x, std::size_t y) {
    a_.swap_rows(x, y);
    u_.swap_rows(x, y);
    u_inv_.swap_cols(x, y);
  }
  void swap_cols(std::size_t x, std::size_t y) {
    a_.swap_cols(x, y);
    v_.swap_cols(x, y);
    v_inv_.swap_rows(x, y);
  }
  void negate_row(std::size_t r) {
    a_.negate_row(r);
    u_.negate_row(r);
    u_inv_.negate_col(r);
  }

  IntMatrix a_;
  IntMatrix u_;
  IntMatrix u_inv_;
  IntMatrix v_;
  IntMatrix v_inv_;
};

}  // namespace detail

/// Smith normal form with transforms. Deterministic: the pivot is always the
/// smallest nonzero |entry| of the trailing block, ties broken by (row, col).
inline SmithDecomposition smith_normal_form(IntMatrix const& m) {
  return detail::SmithReducer(m).run();
}

/// Checks every postcondition of a decomposition of `m`: the product
/// identity, diagonal shape, sign and divisibility chain, and that the
/// stored inverses really are inverses (which certifies unimodularity).
inline bool verify_smith(IntMatrix const& m, SmithDecomposition const& s) {
  if (s.u * m * s.v != s.d) return false;
  if (s.u * s.u_inv != IntMatrix::identity(m.rows())) return false;
  if (s.v * s.v_inv != IntMatrix::identity(m.cols())) return false;
  for (std::size_t i = 0; i < s.d.rows(); ++i) {
    for (std::size_t j = 0; j < s.d.cols(); ++j) {
      if (i != j && s.d(i, j) != 0) return false;
    }
  }
  auto diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) return false;
    if ((diag[i] != 0) != (i < s.rank)) return false;
    if (i + 1 < diag.size() && diag[i] != 0 && diag[i + 1] % diag[i] != 0) {
      return false;
    }
  }
  return true;
}

/// Columns form a basis of the integer kernel of `m`; the basis extends to a
/// basis of the whole domain lattice.
inline IntMatrix kernel_basis(IntMatrix const& m) {
  auto s = smith_normal_form(m);
  std::vector<std::size_t> idx;
  for (std::size_t j = s.rank; j < m.cols(); ++j) {
    idx.push_back(j);
  }
  return s.v.select_columns(idx);
}

/// True iff `m` is injective with free cokernel, i.e. its image is a direct
/// summand of the target lattice.
inline bool is_split_injective(IntMatrix const& m) {
  auto s = smith_normal_form(m);
  if (s.rank != m.cols()) return false;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.d(i, i) != 1) return false;
  }
  return true;
}

}  // namespace lgk
