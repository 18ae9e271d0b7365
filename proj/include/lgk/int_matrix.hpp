#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lgk/error.hpp"

namespace lgk {

// Arbitrary precision: Smith reduction of even small matrices can produce
// intermediate entries far outside 64 bits.
using Integer = boost::multiprecision::cpp_int;

/// Dense row-major matrix over the integers. Zero-row and zero-column shapes
/// are valid and represent maps to or from the zero group.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (auto const& row : rows) {
      if (row.size() != cols_) {
        throw ShapeError("ragged matrix literal");
      }
      for (long x : row) {
        data_.emplace_back(x);
      }
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  static IntMatrix from_rows(std::vector<std::vector<Integer>> const& rows,
                             std::size_t cols_if_empty = 0) {
    std::size_t const r = rows.size();
    std::size_t const c = r == 0 ? cols_if_empty : rows.front().size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) {
        throw ShapeError("ragged matrix rows");
      }
      for (std::size_t j = 0; j < c; ++j) {
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  Integer const& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<Integer const> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<Integer> column(std::size_t j) const {
    std::vector<Integer> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out[i] = (*this)(i, j);
    }
    return out;
  }

  bool is_zero() const {
    for (auto const& x : data_) {
      if (x != 0) {
        return false;
      }
    }
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        t(j, i) = (*this)(i, j);
      }
    }
    return t;
  }

  /// Submatrix made of the listed columns, in the given order.
  IntMatrix select_columns(std::span<std::size_t const> idx) const {
    IntMatrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < idx.size(); ++k) {
        out(i, k) = (*this)(i, idx[k]);
      }
    }
    return out;
  }

  IntMatrix select_rows(std::span<std::size_t const> idx) const {
    IntMatrix out(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      for (std::size_t j = 0; j < cols_; ++j) {
        out(k, j) = (*this)(idx[k], j);
      }
    }
    return out;
  }

  /// [this | other]
  IntMatrix hconcat(IntMatrix const& other) const {
    if (other.rows_ != rows_) {
      throw ShapeError("hconcat: row count mismatch");
    }
    IntMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        out(i, j) = (*this)(i, j);
      }
      for (std::size_t j = 0; j < other.cols_; ++j) {
        out(i, cols_ + j) = other(i, j);
      }
    }
    return out;
  }

  // Elementary operations used by the normal form.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) {
      std::swap((*this)(a, j), (*this)(b, j));
    }
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) {
      std::swap((*this)(i, a), (*this)(i, b));
    }
  }
  /// row[dst] += c * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, Integer const& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) {
      (*this)(dst, j) += c * (*this)(src, j);
    }
  }
  /// col[dst] += c * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, Integer const& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) {
      (*this)(i, dst) += c * (*this)(i, src);
    }
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) {
      (*this)(r, j) = -(*this)(r, j);
    }
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) {
      (*this)(i, c) = -(*this)(i, c);
    }
  }

  friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

  friend IntMatrix operator*(IntMatrix const& a, IntMatrix const& b) {
    if (a.cols_ != b.rows_) {
      throw ShapeError("matrix product: " + a.shape() + " * " + b.shape());
    }
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Integer const& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          out(i, j) += x * b(k, j);
        }
      }
    }
    return out;
  }

  friend IntMatrix operator-(IntMatrix const& a, IntMatrix const& b) {
    a.require_same_shape(b, "difference");
    IntMatrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) {
      out.data_[k] -= b.data_[k];
    }
    return out;
  }

  friend IntMatrix operator+(IntMatrix const& a, IntMatrix const& b) {
    a.require_same_shape(b, "sum");
    IntMatrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) {
      out.data_[k] += b.data_[k];
    }
    return out;
  }

  std::vector<Integer> apply(std::span<Integer const> x) const {
    if (x.size() != cols_) {
      throw ShapeError("matrix-vector product: size mismatch");
    }
    std::vector<Integer> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        y[i] += (*this)(i, j) * x[j];
      }
    }
    return y;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  friend std::ostream& operator<<(std::ostream& os, IntMatrix const& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) {
        os << (j ? "," : "") << m(i, j);
      }
      os << ']';
    }
    return os << ']';
  }

 private:
  void require_same_shape(IntMatrix const& b, char const* what) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw ShapeError(std::string("matrix ") + what + ": " + shape() +
                       " vs " + b.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// x mod d in [0, d), for d > 0.
inline Integer mod_nonneg(Integer const& x, Integer const& d) {
  Integer r = x % d;
  if (r < 0) r += d;
  return r;
}

}  // namespace lgk
