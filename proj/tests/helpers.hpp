#pragma once

// Shared test utilities: fixture loading, seeded random rationals, and
// independent reference computations used as oracles.

#include "latticealg/builtins.hpp"
#include "latticealg/linalg.hpp"

#include <random>

namespace testutil {

using namespace latticealg;

inline Algebra fixture(const std::string& name) { return builtin(name); }

inline Scalar random_rational(std::mt19937_64& rng, int lo = -6, int hi = 6, int max_den = 5) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
  Scalar q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Element random_element(std::mt19937_64& rng, std::size_t dim, int lo = -6, int hi = 6) {
  Element x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = random_rational(rng, lo, hi);
  return x;
}

inline Element random_positive(std::mt19937_64& rng, std::size_t dim) {
  return random_element(rng, dim, 0, 6);
}

inline OperatorMatrix random_operator(std::mt19937_64& rng, std::size_t dim) {
  OperatorMatrix t(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) t(r, c) = random_rational(rng);
  return t;
}

/// Determinant by fraction-free elimination with exact rationals.
inline Scalar determinant(Matrix m) {
  const std::size_t n = m.rows();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Scalar f = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

/// Matrix product, for checking operator identities independently.
inline Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

/// Expands an element of an operator-norm algebra into its s×s matrix.
inline Matrix as_matrix(const NormSpec& n, const Element& x) {
  Matrix m(n.matrix_size, n.matrix_size);
  for (std::size_t i = 0; i < n.units.size(); ++i)
    for (auto [r, c] : n.units[i]) m(r, c) += x[i];
  return m;
}

/// Coordinate vector of an s×s matrix in the matrix-unit basis (each unit's
/// first cell carries the coordinate).
inline Element from_matrix(const NormSpec& n, const Matrix& m) {
  Element x(n.units.size());
  for (std::size_t i = 0; i < n.units.size(); ++i) {
    const auto [r, c] = n.units[i].front();
    x[i] = m(r, c);
  }
  return x;
}

}  // namespace testutil
