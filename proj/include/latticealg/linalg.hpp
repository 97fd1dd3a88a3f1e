#pragma once

// Small exact linear algebra: dense rational matrices and Gauss-Jordan solving.

#include "latticealg/lattice.hpp"

#include <optional>
#include <vector>

namespace latticealg {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

struct SolveResult {
  bool consistent = false;
  std::size_t rank = 0;
  /// A particular solution (free variables set to zero) when consistent.
  std::vector<Scalar> solution;
  bool unique() const { return consistent && rank == solution.size(); }
};

/// Solves m·x = rhs exactly by Gauss-Jordan elimination.
inline SolveResult solve(Matrix m, std::vector<Scalar> rhs) {
  require_dim(m.rows(), rhs.size());
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(piv, k), m(r, k));
      std::swap(rhs[piv], rhs[r]);
    }
    const Scalar inv = 1 / m(r, c);
    for (std::size_t k = c; k < cols; ++k) m(r, k) *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Scalar f = m(i, c);
      for (std::size_t k = c; k < cols; ++k) m(i, k) -= f * m(r, k);
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  SolveResult out;
  out.rank = r;
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return out;
  out.consistent = true;
  out.solution.assign(cols, Scalar(0));
  for (std::size_t i = 0; i < r; ++i) out.solution[pivot_col[i]] = rhs[i];
  return out;
}

}  // namespace latticealg
