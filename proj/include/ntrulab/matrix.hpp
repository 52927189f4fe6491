#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ntrulab/error.hpp"
#include "ntrulab/integer.hpp"

namespace ntrulab {

// Dense row-major matrix. Rows are the natural unit: lattice bases store one
// basis vector per row.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionMismatch("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    auto a = row(i);
    auto b = row(j);
    for (std::size_t k = 0; k < cols_; ++k) std::swap(a[k], b[k]);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) add_mul(c(i, j), aik, b(k, j));
    }
  return c;
}

// Row vector times matrix.
inline IntVector operator*(const IntVector& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw DimensionMismatch("vector-matrix shape mismatch");
  IntVector out(m.cols(), Integer(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) add_mul(out[j], v[i], r[j]);
  }
  return out;
}

// Gram matrix B B^T of the rows.
inline IntMatrix gram_matrix(const IntMatrix& b) {
  IntMatrix g(b.rows(), b.rows(), Integer(0));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Integer acc = 0;
      auto ri = b.row(i);
      auto rj = b.row(j);
      for (std::size_t k = 0; k < b.cols(); ++k) add_mul(acc, ri[k], rj[k]);
      g(i, j) = acc;
      g(j, i) = acc;
    }
  return g;
}

// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k);
        sub_mul(v, m(i, k), m(k, j));
        m(i, j) = v / prev;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace ntrulab
