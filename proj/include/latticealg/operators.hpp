#pragma once

// Regular operators on a finite-dimensional coordinatewise lattice.
//
// On R^n with the coordinatewise order every matrix is regular and the
// operator lattice is entrywise: |T|, S∨T and S∧T are computed entry by
// entry. rk_oracle re-derives S∨T from the Riesz-Kantorovich supremum over
// positive decompositions, independently of the entrywise shortcut.

#include "latticealg/algebra.hpp"
#include "latticealg/linalg.hpp"

#include <cstdlib>
#include <optional>
#include <stdexcept>

namespace latticealg {

/// Square matrix acting on atom coordinates: (Tx)_k = sum_i T(k, i) x_i.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(std::size_t dim) : m_(dim, dim) {}
  explicit OperatorMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw InputError("operator matrix must be square");
  }

  static OperatorMatrix identity(std::size_t dim) { return OperatorMatrix(Matrix::identity(dim)); }
  static OperatorMatrix diagonal(const std::vector<Scalar>& d) {
    OperatorMatrix t(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) t(i, i) = d[i];
    return t;
  }

  std::size_t dim() const { return m_.rows(); }
  Scalar& operator()(std::size_t r, std::size_t c) { return m_(r, c); }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const Matrix& matrix() const { return m_; }

  Element apply(const Element& x) const {
    require_dim(dim(), x.dim());
    Element y(dim());
    for (std::size_t k = 0; k < dim(); ++k)
      for (std::size_t i = 0; i < dim(); ++i)
        if (m_(k, i) != 0 && x[i] != 0) y[k] += m_(k, i) * x[i];
    return y;
  }

  bool is_nonnegative() const {
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c)
        if (m_(r, c) < 0) return false;
    return true;
  }
  bool is_zero() const {
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c)
        if (m_(r, c) != 0) return false;
    return true;
  }

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_dim(a.dim(), b.dim());
    OperatorMatrix out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t t = 0; t < a.dim(); ++t) {
        if (a(r, t) == 0) continue;
        for (std::size_t c = 0; c < a.dim(); ++c)
          if (b(t, c) != 0) out(r, c) += a(r, t) * b(t, c);
      }
    return out;
  }
  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) {
    require_dim(a.dim(), b.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < a.dim(); ++c) a(r, c) += b(r, c);
    return a;
  }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) {
    require_dim(a.dim(), b.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < a.dim(); ++c) a(r, c) -= b(r, c);
    return a;
  }
  friend OperatorMatrix operator*(const Scalar& s, OperatorMatrix a) {
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (std::size_t c = 0; c < a.dim(); ++c) a(r, c) *= s;
    return a;
  }
  friend bool operator==(const OperatorMatrix&, const OperatorMatrix&) = default;

  /// Entrywise order.
  friend bool leq(const OperatorMatrix& a, const OperatorMatrix& b) {
    return (b - a).is_nonnegative();
  }

 private:
  Matrix m_;
};

/// Matrix of x ↦ a x.
inline OperatorMatrix left_mult(const Algebra& alg, const Element& a) {
  require_dim(alg.dim(), a.dim());
  OperatorMatrix t(alg.dim());
  for (const auto& [idx, c] : alg.tensor()) {
    const auto [i, j, k] = idx;
    if (a[i] != 0) t(k, j) += c * a[i];
  }
  return t;
}

/// Matrix of x ↦ x b.
inline OperatorMatrix right_mult(const Algebra& alg, const Element& b) {
  require_dim(alg.dim(), b.dim());
  OperatorMatrix t(alg.dim());
  for (const auto& [idx, c] : alg.tensor()) {
    const auto [i, j, k] = idx;
    if (b[j] != 0) t(k, i) += c * b[j];
  }
  return t;
}

/// Matrix of x ↦ a x b, i.e. L_a R_b.
inline OperatorMatrix mult_op(const Algebra& alg, const Element& a, const Element& b) {
  return left_mult(alg, a) * right_mult(alg, b);
}

inline OperatorMatrix op_modulus(const OperatorMatrix& t) {
  OperatorMatrix out = t;
  for (std::size_t r = 0; r < t.dim(); ++r)
    for (std::size_t c = 0; c < t.dim(); ++c) out(r, c) = ::abs(t(r, c));
  return out;
}

inline OperatorMatrix op_sup(const OperatorMatrix& s, const OperatorMatrix& t) {
  require_dim(s.dim(), t.dim());
  OperatorMatrix out = s;
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t c = 0; c < s.dim(); ++c)
      if (out(r, c) < t(r, c)) out(r, c) = t(r, c);
  return out;
}

inline OperatorMatrix op_inf(const OperatorMatrix& s, const OperatorMatrix& t) {
  require_dim(s.dim(), t.dim());
  OperatorMatrix out = s;
  for (std::size_t r = 0; r < s.dim(); ++r)
    for (std::size_t c = 0; c < s.dim(); ++c)
      if (t(r, c) < out(r, c)) out(r, c) = t(r, c);
  return out;
}

class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultOracleDimCap = 12;

/// Riesz-Kantorovich supremum (S∨T)x = sup{Su + Tv : u, v >= 0, u + v = x}
/// evaluated by brute force over the 2^dim vertices u ∈ ∏{0, x_i} of the
/// decomposition polytope. Each output coordinate is linear in u, so its
/// maximum over the box is attained at a vertex.
inline Element rk_oracle(const OperatorMatrix& s, const OperatorMatrix& t, const Element& x,
                         std::size_t dim_cap = kDefaultOracleDimCap) {
  require_dim(s.dim(), t.dim());
  require_dim(s.dim(), x.dim());
  if (!x.is_positive()) throw std::invalid_argument("rk_oracle: x must be positive");
  const std::size_t n = x.dim();
  if (n > dim_cap)
    throw OracleRefused("rk_oracle: dimension " + std::to_string(n) + " exceeds cap " +
                        std::to_string(dim_cap));
  std::optional<Element> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Element u(n);
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) u[i] = x[i];
    const Element candidate = s.apply(u) + t.apply(x - u);
    best = best ? sup(*best, candidate) : candidate;
  }
  return *best;
}

/// Band projection on R^n: P² = P and 0 <= P <= I.
inline bool is_band_projection_op(const OperatorMatrix& m) {
  if (!m.is_nonnegative()) return false;
  if (!(OperatorMatrix::identity(m.dim()) - m).is_nonnegative()) return false;
  return m * m == m;
}

/// Diagonal of a band projection: 0 <= P <= I forces off-diagonal zeros, and
/// idempotence forces 0/1 on the diagonal.
inline std::vector<bool> band_projection_mask(const OperatorMatrix& m) {
  if (!is_band_projection_op(m)) throw std::invalid_argument("not a band projection");
  std::vector<bool> mask(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) mask[i] = m(i, i) == 1;
  return mask;
}

/// ‖T‖_r = ‖|T|‖ for the operator norm induced by a weighted sup or one norm.
/// Other norm kinds yield nullopt.
inline std::optional<Scalar> regular_norm(const OperatorMatrix& t, const NormSpec& n) {
  if (n.kind != NormKind::sup && n.kind != NormKind::one) return std::nullopt;
  if (!n.weights.empty()) require_dim(t.dim(), n.weights.size());
  const auto mod = op_modulus(t);
  Scalar best = 0;
  if (n.kind == NormKind::sup) {
    // sup over |x| <= 1/w of max_k w_k (|T||x|)_k
    for (std::size_t k = 0; k < t.dim(); ++k) {
      Scalar row = 0;
      for (std::size_t i = 0; i < t.dim(); ++i) row += mod(k, i) / n.weight(i);
      row *= n.weight(k);
      if (best < row) best = row;
    }
  } else {
    // extreme points of the unit ball are atoms scaled by 1/w_i
    for (std::size_t i = 0; i < t.dim(); ++i) {
      Scalar col = 0;
      for (std::size_t k = 0; k < t.dim(); ++k) col += n.weight(k) * mod(k, i);
      col /= n.weight(i);
      if (best < col) best = col;
    }
  }
  return best;
}

}  // namespace latticealg
