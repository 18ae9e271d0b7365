#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lgk/graph.hpp"
#include "lgk/int_matrix.hpp"

namespace test {

using lgk::Integer;
using lgk::IntMatrix;
using Rational = boost::multiprecision::cpp_rational;

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                               std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

inline IntMatrix permute(std::mt19937_64& rng, IntMatrix const& m) {
  std::vector<std::size_t> r(m.rows()), c(m.cols());
  std::iota(r.begin(), r.end(), 0);
  std::iota(c.begin(), c.end(), 0);
  std::shuffle(r.begin(), r.end(), rng);
  std::shuffle(c.begin(), c.end(), rng);
  return m.select_rows(r).select_columns(c);
}

/// Bareiss fraction-free elimination.
inline Integer determinant(IntMatrix a) {
  std::size_t const n = a.rows();
  if (n != a.cols()) throw lgk::ShapeError("determinant of non-square matrix");
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return n == 0 ? Integer(1) : sign * a(n - 1, n - 1);
}

/// Rank over the rationals by plain Gaussian elimination.
inline std::size_t rational_rank(IntMatrix const& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = Rational(m(i, j));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t p = rank;
    while (p < m.rows() && a[p][col] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[rank][col];
      for (std::size_t j = col; j < m.cols(); ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Solves k c = x over the rationals for k of full column rank; nullopt when
/// x is outside the rational span.
inline std::optional<std::vector<Rational>> rational_solve(
    IntMatrix const& k, std::vector<Integer> const& x) {
  std::size_t const n = k.rows(), c = k.cols();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(c + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c; ++j) a[i][j] = Rational(k(i, j));
    a[i][c] = Rational(x[i]);
  }
  std::vector<std::size_t> pivot_row(c);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < c; ++col) {
    std::size_t p = rank;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[rank]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[rank][col];
      for (std::size_t j = col; j <= c; ++j) a[i][j] -= f * a[rank][j];
    }
    pivot_row[col] = rank++;
  }
  for (std::size_t i = rank; i < n; ++i) {
    if (a[i][c] != 0) return std::nullopt;
  }
  std::vector<Rational> out(c);
  for (std::size_t col = 0; col < c; ++col) {
    out[col] = a[pivot_row[col]][c] / a[pivot_row[col]][col];
  }
  return out;
}

/// The integer kernel of m inside the box [-b, b]^n, by enumeration,
/// coincides with the box points of the lattice spanned by kernel_basis(m).
inline bool kernel_box_equivalent(IntMatrix const& m, long b);

/// Random left-resolving graph with no sinks and no sources: every vertex
/// gets at least one incoming edge, with distinct labels per target.
inline lgk::LabelledGraph random_left_resolving(std::mt19937_64& rng,
                                                std::size_t n,
                                                std::size_t letters,
                                                double density) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::bernoulli_distribution coin(density);
  while (true) {
    std::vector<lgk::NamedEdge> edges;
    std::vector<bool> emits(n, false), receives(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t a = 0; a < letters; ++a) {
        if (!coin(rng)) continue;
        std::size_t u = pick(rng);
        edges.push_back({"v" + std::to_string(u), std::string(1, char('a' + a)),
                         "v" + std::to_string(v)});
        emits[u] = receives[v] = true;
      }
    }
    bool ok = std::all_of(emits.begin(), emits.end(), [](bool x) { return x; }) &&
              std::all_of(receives.begin(), receives.end(), [](bool x) { return x; });
    if (ok) return lgk::LabelledGraph({}, edges);
  }
}

/// Random directed graph with no sinks or sources, each edge carrying its own
/// label.
inline lgk::LabelledGraph random_trivially_labelled(std::mt19937_64& rng,
                                                    std::size_t n,
                                                    std::size_t max_out) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> deg(1, max_out);
  while (true) {
    std::vector<lgk::NamedEdge> edges;
    std::vector<bool> receives(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t d = deg(rng);
      for (std::size_t k = 0; k < d; ++k) {
        std::size_t w = pick(rng);
        edges.push_back({"v" + std::to_string(v), "e" + std::to_string(edges.size()),
                         "v" + std::to_string(w)});
        receives[w] = true;
      }
    }
    if (std::all_of(receives.begin(), receives.end(), [](bool x) { return x; })) {
      return lgk::LabelledGraph({}, edges);
    }
  }
}

}  // namespace test

#include "lgk/smith.hpp"

namespace test {

inline bool kernel_box_equivalent(IntMatrix const& m, long b) {
  IntMatrix const k = lgk::kernel_basis(m);
  if (!(m * k).is_zero()) return false;
  if (rational_rank(k) != k.cols()) return false;
  if (k.cols() + rational_rank(m) != m.cols()) return false;
  std::size_t const n = m.cols();
  std::vector<long> dense(m.rows() * n);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) dense[i * n + j] = static_cast<long>(m(i, j));
  }
  std::vector<long> x(n, -b);
  while (true) {
    bool zero = true;
    for (std::size_t i = 0; i < m.rows() && zero; ++i) {
      long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += dense[i * n + j] * x[j];
      zero = s == 0;
    }
    if (zero) {
      std::vector<Integer> xi(x.begin(), x.end());
      auto c = rational_solve(k, xi);
      if (!c) return false;
      for (auto const& q : *c) {
        if (denominator(q) != 1) return false;
      }
    }
    std::size_t j = 0;
    while (j < n && x[j] == b) x[j++] = -b;
    if (j == n) break;
    ++x[j];
  }
  return true;
}

}  // namespace test
