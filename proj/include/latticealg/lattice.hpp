#pragma once

// Coordinatewise vector lattice over exact rationals.
//
// Every finite-dimensional Archimedean vector lattice is lattice isomorphic to
// R^n with the coordinatewise order, so elements are stored as coordinate
// vectors in the atom basis and sup/inf/modulus are computed entrywise.

#include "latticealg/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace latticealg {

class Element {
 public:
  Element() = default;
  explicit Element(std::size_t dim) : coords_(dim) {}
  explicit Element(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  Element(std::initializer_list<Scalar> coords) : coords_(coords) {}

  /// `value` times the i-th atom.
  static Element atom(std::size_t dim, std::size_t i, const Scalar& value = 1) {
    Element x(dim);
    x.coords_.at(i) = value;
    return x;
  }

  std::size_t dim() const { return coords_.size(); }
  std::span<const Scalar> coords() const { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& q) { return q == 0; });
  }
  bool is_positive() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& q) { return q >= 0; });
  }
  /// Indices of nonzero coordinates, ascending.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] != 0) s.push_back(i);
    return s;
  }

  Element& operator+=(const Element& o) {
    require_dim(dim(), o.dim());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Element& operator-=(const Element& o) {
    require_dim(dim(), o.dim());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Element& operator*=(const Scalar& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Scalar(-1); }
  friend Element operator*(const Scalar& s, Element a) { return a *= s; }
  friend Element operator*(Element a, const Scalar& s) { return a *= s; }

  friend bool operator==(const Element& a, const Element& b) { return a.coords_ == b.coords_; }

  /// Lexicographic on coordinates; used for deterministic ordering only.
  friend bool lex_less(const Element& a, const Element& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
  }

 private:
  std::vector<Scalar> coords_;
};

namespace detail {
template <typename F>
Element zip(const Element& x, const Element& y, F f) {
  require_dim(x.dim(), y.dim());
  std::vector<Scalar> out;
  out.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out.push_back(f(x[i], y[i]));
  return Element(std::move(out));
}
}  // namespace detail

inline Element sup(const Element& x, const Element& y) {
  return detail::zip(x, y, [](const Scalar& a, const Scalar& b) { return a < b ? b : a; });
}

inline Element inf(const Element& x, const Element& y) {
  return detail::zip(x, y, [](const Scalar& a, const Scalar& b) { return b < a ? b : a; });
}

inline Element abs(const Element& x) {
  return detail::zip(x, x, [](const Scalar& a, const Scalar&) { return Scalar(::abs(a)); });
}

inline Element pos_part(const Element& x) { return sup(x, Element(x.dim())); }

inline Element neg_part(const Element& x) { return sup(-x, Element(x.dim())); }

/// x <= y coordinatewise.
inline bool leq(const Element& x, const Element& y) {
  require_dim(x.dim(), y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

/// |x| ∧ |y| = 0.
inline bool is_disjoint(const Element& x, const Element& y) {
  return inf(abs(x), abs(y)).is_zero();
}

// ---------------------------------------------------------------------------
// Lattice norms

enum class NormKind {
  sup,       // max_i w_i |x_i|
  one,       // sum_i w_i |x_i|
  p,         // (sum_i w_i |x_i|^p)^(1/p)
  op,        // l-infinity operator norm of a matrix realization with disjoint matrix units
  lpsum,     // outer l-sup / l-1 / l-p combination of block norms
};

struct NormBlock;

struct NormSpec {
  NormKind kind = NormKind::sup;
  /// Exponent for `p`, and for `lpsum` when `outer == p`.
  Scalar p = 1;
  /// Positive weights, one per coordinate; empty means all ones.
  std::vector<Scalar> weights;

  /// `op` kind: square matrix size, and for each coordinate the (row, col)
  /// cells of its matrix unit. Cells of distinct coordinates are disjoint.
  std::size_t matrix_size = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> units;

  /// `lpsum` kind.
  NormKind outer = NormKind::sup;
  std::vector<NormBlock> blocks;

  static NormSpec sup_norm(std::vector<Scalar> w = {}) {
    NormSpec n;
    n.kind = NormKind::sup;
    n.weights = std::move(w);
    return n;
  }
  static NormSpec one_norm(std::vector<Scalar> w = {}) {
    NormSpec n;
    n.kind = NormKind::one;
    n.weights = std::move(w);
    return n;
  }
  static NormSpec p_norm(Scalar p, std::vector<Scalar> w = {}) {
    NormSpec n;
    n.kind = NormKind::p;
    n.p = std::move(p);
    n.weights = std::move(w);
    return n;
  }

  Scalar weight(std::size_t i) const { return weights.empty() ? Scalar(1) : weights.at(i); }

  /// Throws InputError when the descriptor is malformed for dimension `dim`.
  void validate(std::size_t dim) const;

  friend bool operator==(const NormSpec&, const NormSpec&);
};

struct NormBlock {
  std::size_t dim = 0;
  NormSpec norm;
  friend bool operator==(const NormBlock& a, const NormBlock& b) {
    return a.dim == b.dim && a.norm == b.norm;
  }
};

inline bool operator==(const NormSpec& a, const NormSpec& b) {
  return a.kind == b.kind && a.p == b.p && a.weights == b.weights &&
         a.matrix_size == b.matrix_size && a.units == b.units && a.outer == b.outer &&
         a.blocks == b.blocks;
}

inline const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::sup: return "sup";
    case NormKind::one: return "one";
    case NormKind::p: return "p";
    case NormKind::op: return "operator";
    case NormKind::lpsum: return "lpsum";
  }
  return "?";
}

inline void NormSpec::validate(std::size_t dim) const {
  if (!weights.empty()) {
    if (weights.size() != dim)
      throw InputError("norm weights: expected " + std::to_string(dim) + " entries, got " +
                       std::to_string(weights.size()));
    for (const auto& w : weights)
      if (w <= 0) throw InputError("norm weights must be strictly positive");
  }
  if ((kind == NormKind::p || (kind == NormKind::lpsum && outer == NormKind::p)) && p < 1)
    throw InputError("norm exponent p must be >= 1");
  if (kind == NormKind::op) {
    if (units.size() != dim)
      throw InputError("operator norm: expected " + std::to_string(dim) + " matrix units");
    std::vector<bool> used(matrix_size * matrix_size, false);
    for (const auto& cells : units) {
      if (cells.empty()) throw InputError("operator norm: empty matrix unit");
      for (auto [r, c] : cells) {
        if (r >= matrix_size || c >= matrix_size)
          throw InputError("operator norm: cell out of range");
        if (used[r * matrix_size + c]) throw InputError("operator norm: matrix units overlap");
        used[r * matrix_size + c] = true;
      }
    }
  }
  if (kind == NormKind::lpsum) {
    if (outer == NormKind::op || outer == NormKind::lpsum)
      throw InputError("lpsum outer kind must be sup, one or p");
    std::size_t total = 0;
    for (const auto& b : blocks) {
      if (b.dim == 0) throw InputError("lpsum: empty block");
      b.norm.validate(b.dim);
      total += b.dim;
    }
    if (total != dim) throw InputError("lpsum: block dimensions do not add up");
  }
}

namespace detail {

inline long double pow_rational(long double base, const Scalar& p) {
  return std::pow(base, to_long_double(p));
}

// Combines nonnegative parts with an outer sup/one/p rule.
inline NormValue combine(NormKind outer, const Scalar& p, const std::vector<NormValue>& parts) {
  const bool all_exact =
      std::all_of(parts.begin(), parts.end(), [](const NormValue& v) { return v.exact; });
  if (all_exact && outer != NormKind::p) {
    Scalar acc = 0;
    for (const auto& v : parts) {
      if (outer == NormKind::sup) acc = acc < v.value ? v.value : acc;
      else acc += v.value;
    }
    return NormValue::of(acc);
  }
  if (outer == NormKind::p && p == 1) return combine(NormKind::one, p, parts);
  long double acc = 0, err = 0;
  for (const auto& v : parts) {
    if (outer == NormKind::sup) {
      acc = std::max(acc, v.approx.value);
      err = std::max(err, v.approx.error);
    } else if (outer == NormKind::one) {
      acc += v.approx.value;
      err += v.approx.error;
    } else {
      acc += pow_rational(v.approx.value, p);
    }
  }
  if (outer == NormKind::p) {
    const long double value = pow_rational(acc, Scalar(1) / p);
    // Minkowski: the outer l^p norm is 1-Lipschitz in the l^p norm of the
    // part errors, which is bounded by their sum; add rounding slack.
    for (const auto& v : parts) err += v.approx.error;
    err += 64 * std::numeric_limits<double>::epsilon() * (1 + value) * parts.size();
    return NormValue::real(value, err);
  }
  return NormValue::real(acc, err);
}

}  // namespace detail

/// ‖x‖ for the given lattice norm. Exact for every kind except `p` (and
/// `lpsum` with an l^p outer combination), which return a real with an error
/// bound.
inline NormValue norm(const Element& x, const NormSpec& n) {
  switch (n.kind) {
    case NormKind::sup:
    case NormKind::one: {
      if (!n.weights.empty()) require_dim(x.dim(), n.weights.size());
      std::vector<NormValue> parts;
      parts.reserve(x.dim());
      for (std::size_t i = 0; i < x.dim(); ++i)
        parts.push_back(NormValue::of(n.weight(i) * ::abs(x[i])));
      if (parts.empty()) return NormValue::of(0);
      return detail::combine(n.kind, n.p, parts);
    }
    case NormKind::p: {
      if (!n.weights.empty()) require_dim(x.dim(), n.weights.size());
      if (n.p == 1) return norm(x, NormSpec::one_norm(n.weights));
      long double acc = 0;
      for (std::size_t i = 0; i < x.dim(); ++i)
        acc += to_long_double(n.weight(i)) *
               detail::pow_rational(to_long_double(Scalar(::abs(x[i]))), n.p);
      const long double value = detail::pow_rational(acc, Scalar(1) / n.p);
      // Conversions and pow each cost a few ulps of double precision.
      const long double err =
          64 * std::numeric_limits<double>::epsilon() * (1 + value) * (1 + x.dim());
      return NormValue::real(value, err);
    }
    case NormKind::op: {
      require_dim(n.units.size(), x.dim());
      std::vector<Scalar> rows(n.matrix_size);
      for (std::size_t i = 0; i < x.dim(); ++i)
        for (auto [r, c] : n.units[i]) rows[r] += ::abs(x[i]);
      Scalar best = 0;
      for (const auto& r : rows)
        if (best < r) best = r;
      return NormValue::of(best);
    }
    case NormKind::lpsum: {
      std::vector<NormValue> parts;
      std::size_t offset = 0;
      for (const auto& b : n.blocks) {
        Element part(std::vector<Scalar>(x.coords().begin() + offset,
                                         x.coords().begin() + offset + b.dim));
        parts.push_back(norm(part, b.norm));
        offset += b.dim;
      }
      require_dim(offset, x.dim());
      return detail::combine(n.outer, n.p, parts);
    }
  }
  return NormValue::of(0);
}

}  // namespace latticealg
