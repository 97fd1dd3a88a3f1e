#pragma once

// Finite-dimensional lattice algebras given by a structure tensor over the
// atom basis: b_i * b_j = sum_k c_{ijk} b_k.

#include "latticealg/lattice.hpp"
#include "latticealg/linalg.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace latticealg {

using TensorIndex = std::tuple<std::size_t, std::size_t, std::size_t>;

class Algebra {
 public:
  Algebra() = default;

  /// Throws InputError on out-of-range indices, bad norm descriptor or
  /// identity of the wrong dimension. Mathematical axioms are not enforced
  /// here; verify_axioms reports on them.
  Algebra(std::string name, std::size_t dim, std::map<TensorIndex, Scalar> tensor, NormSpec norm,
          std::optional<Element> identity = std::nullopt)
      : name_(std::move(name)),
        dim_(dim),
        tensor_(std::move(tensor)),
        norm_(std::move(norm)),
        identity_(std::move(identity)) {
    if (dim_ == 0) throw InputError("algebra dimension must be positive");
    for (auto it = tensor_.begin(); it != tensor_.end();) {
      const auto [i, j, k] = it->first;
      if (i >= dim_ || j >= dim_ || k >= dim_)
        throw InputError("tensor index out of range: (" + std::to_string(i) + "," +
                         std::to_string(j) + "," + std::to_string(k) + ")");
      if (it->second == 0) it = tensor_.erase(it);
      else ++it;
    }
    norm_.validate(dim_);
    if (identity_ && identity_->dim() != dim_)
      throw InputError("identity has dimension " + std::to_string(identity_->dim()) +
                       ", algebra has " + std::to_string(dim_));
    products_.assign(dim_ * dim_, Element(dim_));
    for (const auto& [idx, c] : tensor_) {
      const auto [i, j, k] = idx;
      products_[i * dim_ + j][k] = c;
    }
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::map<TensorIndex, Scalar>& tensor() const { return tensor_; }
  const NormSpec& norm() const { return norm_; }
  /// Identity as declared by the fixture/file, if any.
  const std::optional<Element>& identity() const { return identity_; }
  bool has_identity() const { return identity_.has_value(); }
  const Element& e() const {
    if (!identity_) throw InputError("algebra '" + name_ + "' has no identity");
    return *identity_;
  }

  /// b_i * b_j.
  const Element& basis_product(std::size_t i, std::size_t j) const {
    return products_[i * dim_ + j];
  }

  Element multiply(const Element& x, const Element& y) const {
    require_dim(dim_, x.dim());
    require_dim(dim_, y.dim());
    Element out(dim_);
    for (const auto& [idx, c] : tensor_) {
      const auto [i, j, k] = idx;
      if (x[i] == 0 || y[j] == 0) continue;
      out[k] += c * x[i] * y[j];
    }
    return out;
  }

  NormValue norm_of(const Element& x) const { return latticealg::norm(x, norm_); }

  // Descriptive metadata carried along from the algebra file.
  std::vector<std::string> basis_labels;
  std::string description;
  std::map<std::string, Element> elements;
  std::map<std::string, Matrix> operators;

  std::string label(std::size_t i) const {
    return i < basis_labels.size() ? basis_labels[i] : "b" + std::to_string(i);
  }
  const Element& element(const std::string& n) const {
    auto it = elements.find(n);
    if (it == elements.end())
      throw InputError("algebra '" + name_ + "' has no element named '" + n + "'");
    return it->second;
  }

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::map<TensorIndex, Scalar> tensor_;
  NormSpec norm_;
  std::optional<Element> identity_;
  std::vector<Element> products_;
};

// ---------------------------------------------------------------------------
// Identity

struct IdentityInfo {
  Element e;
  bool is_positive = false;
  bool norm_one = false;
  NormValue norm;
};

/// Solves e*b_i = b_i = b_i*e. Returns the unique solution when one exists.
inline std::optional<IdentityInfo> find_identity(const Algebra& a) {
  const std::size_t n = a.dim();
  Matrix m(2 * n * n, n);
  std::vector<Scalar> rhs(2 * n * n);
  // Row (i,k) of the left block: sum_j e_j c_{j i k} = delta_{ik}; right block
  // uses c_{i j k}.
  for (const auto& [idx, c] : a.tensor()) {
    const auto [i, j, k] = idx;
    m(j * n + k, i) += c;              // e_i * b_j, coordinate k
    m(n * n + i * n + k, j) += c;      // b_i * e_j, coordinate k
  }
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i * n + i] = 1;
    rhs[n * n + i * n + i] = 1;
  }
  const auto sol = solve(std::move(m), std::move(rhs));
  // Two identities would coincide (e = e e' = e'), so a consistent system is
  // always uniquely solvable; the rank test only guards against bad input.
  if (!sol.unique()) return std::nullopt;
  IdentityInfo info;
  info.e = Element(sol.solution);
  info.is_positive = info.e.is_positive();
  info.norm = a.norm_of(info.e);
  info.norm_one = info.norm.exact ? info.norm.value == 1
                                  : std::fabs(info.norm.approx.value - 1) <= info.norm.approx.error;
  return info;
}

// ---------------------------------------------------------------------------
// Axioms

enum class Verdict { proved, unknown };

inline const char* to_string(Verdict v) { return v == Verdict::proved ? "proved" : "unknown"; }

struct AxiomReport {
  bool positivity = true;
  std::optional<TensorIndex> negative_entry;

  bool associativity = true;
  std::optional<std::array<std::size_t, 3>> associativity_witness;

  bool identity_declared = false;
  /// Declared identity satisfies e*b_i = b_i*e = b_i (true when none declared).
  bool identity_laws = true;
  std::optional<std::size_t> identity_witness;
  std::optional<IdentityInfo> found_identity;
  /// Declared identity agrees with the solved one.
  bool identity_matches = true;

  Verdict submultiplicativity = Verdict::unknown;
  std::string submultiplicativity_reason;

  /// Exact axioms only; an unknown submultiplicativity verdict does not fail.
  bool ok() const { return positivity && associativity && identity_laws && identity_matches; }
};

namespace detail {

inline bool product_leq_max_unit(const std::map<TensorIndex, Scalar>& tensor, std::size_t dim,
                                 const NormSpec& n) {
  // Unit ball of the weighted sup norm is {|x| <= u}, u_i = 1/w_i. For a
  // positive tensor |xy| <= |x||y| <= ‖x‖‖y‖ u*u, so u*u <= u suffices.
  std::vector<Scalar> u(dim);
  for (std::size_t i = 0; i < dim; ++i) u[i] = 1 / n.weight(i);
  std::vector<Scalar> uu(dim);
  for (const auto& [idx, c] : tensor) {
    const auto [i, j, k] = idx;
    uu[k] += c * u[i] * u[j];
  }
  for (std::size_t k = 0; k < dim; ++k)
    if (uu[k] > u[k]) return false;
  return true;
}

inline bool pairwise_one_norm(const std::map<TensorIndex, Scalar>& tensor, std::size_t dim,
                              const NormSpec& n) {
  // ‖b_i b_j‖ <= ‖b_i‖‖b_j‖ on atoms extends to all x, y by the triangle
  // inequality on |xy| <= sum |x_i||y_j| b_i b_j.
  std::vector<Scalar> prod_norm(dim * dim);
  for (const auto& [idx, c] : tensor) {
    const auto [i, j, k] = idx;
    prod_norm[i * dim + j] += c * n.weight(k);
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (prod_norm[i * dim + j] > n.weight(i) * n.weight(j)) return false;
  return true;
}

inline bool pointwise_p_norm(const std::map<TensorIndex, Scalar>& tensor, const NormSpec& n) {
  // Coordinatewise product (xy)_i = c_i x_i y_i. Then
  // ‖xy‖^p = sum w_i c_i^p |x_i|^p |y_i|^p <= max_i (c_i^p / w_i) ‖x‖^p ‖y‖^p.
  const mpz_class& num = n.p.get_num();
  const mpz_class& den = n.p.get_den();
  if (!num.fits_ulong_p() || !den.fits_ulong_p()) return false;
  for (const auto& [idx, c] : tensor) {
    const auto [i, j, k] = idx;
    if (i != j || j != k) return false;
    // c^p <= w  <=>  c^num <= w^den
    mpq_class base = c;
    mpz_class cn, cd, wn, wd;
    mpz_pow_ui(cn.get_mpz_t(), base.get_num().get_mpz_t(), num.get_ui());
    mpz_pow_ui(cd.get_mpz_t(), base.get_den().get_mpz_t(), num.get_ui());
    const Scalar w = n.weight(i);
    mpz_pow_ui(wn.get_mpz_t(), w.get_num().get_mpz_t(), den.get_ui());
    mpz_pow_ui(wd.get_mpz_t(), w.get_den().get_mpz_t(), den.get_ui());
    if (Scalar(cn, cd) > Scalar(wn, wd)) return false;
  }
  return true;
}

inline bool matrix_realization(const std::map<TensorIndex, Scalar>& tensor, std::size_t dim,
                               const NormSpec& n, std::string& why) {
  // b_i -> M_i must be an algebra homomorphism into M_size(R); then the
  // l-infinity operator norm pulled back along it is submultiplicative.
  const std::size_t s = n.matrix_size;
  auto unit = [&](std::size_t i) {
    Matrix m(s, s);
    for (auto [r, c] : n.units[i]) m(r, c) = 1;
    return m;
  };
  std::vector<Matrix> units;
  for (std::size_t i = 0; i < dim; ++i) units.push_back(unit(i));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      Matrix prod(s, s);
      for (std::size_t r = 0; r < s; ++r)
        for (std::size_t t = 0; t < s; ++t) {
          if (units[i](r, t) == 0) continue;
          for (std::size_t c = 0; c < s; ++c) prod(r, c) += units[j](t, c);
        }
      Matrix expect(s, s);
      for (std::size_t k = 0; k < dim; ++k) {
        auto it = tensor.find({i, j, k});
        if (it == tensor.end()) continue;
        for (auto [r, c] : n.units[k]) expect(r, c) += it->second;
      }
      if (!(prod == expect)) {
        why = "matrix units do not realize b" + std::to_string(i) + "*b" + std::to_string(j);
        return false;
      }
    }
  return true;
}

inline Verdict submultiplicativity(const std::map<TensorIndex, Scalar>& tensor, std::size_t dim,
                                   const NormSpec& n, std::string& why) {
  for (const auto& [idx, c] : tensor)
    if (c < 0) {
      why = "tensor has a negative entry";
      return Verdict::unknown;
    }
  switch (n.kind) {
    case NormKind::sup:
      if (product_leq_max_unit(tensor, dim, n)) {
        why = "u*u <= u for the unit-ball corner u";
        return Verdict::proved;
      }
      why = "u*u <= u fails for the unit-ball corner u";
      return Verdict::unknown;
    case NormKind::one:
      if (pairwise_one_norm(tensor, dim, n)) {
        why = "‖b_i*b_j‖ <= ‖b_i‖‖b_j‖ for all atom pairs";
        return Verdict::proved;
      }
      why = "atom-pair bound fails";
      return Verdict::unknown;
    case NormKind::p:
      if (pointwise_p_norm(tensor, n)) {
        why = "pointwise product with c_i^p <= w_i";
        return Verdict::proved;
      }
      why = "no sufficient condition available for this p-norm";
      return Verdict::unknown;
    case NormKind::op:
      if (matrix_realization(tensor, dim, n, why)) {
        why = "matrix units realize the product; operator norm";
        return Verdict::proved;
      }
      return Verdict::unknown;
    case NormKind::lpsum: {
      // Block-diagonal tensor and every block submultiplicative:
      // ‖xy‖ <= ‖x‖_p ‖y‖_inf <= ‖x‖_p ‖y‖_p.
      std::vector<std::size_t> block_of(dim);
      std::vector<std::size_t> offsets;
      std::size_t off = 0;
      for (std::size_t b = 0; b < n.blocks.size(); ++b) {
        offsets.push_back(off);
        for (std::size_t t = 0; t < n.blocks[b].dim; ++t) block_of[off + t] = b;
        off += n.blocks[b].dim;
      }
      std::vector<std::map<TensorIndex, Scalar>> parts(n.blocks.size());
      for (const auto& [idx, c] : tensor) {
        const auto [i, j, k] = idx;
        const auto b = block_of[i];
        if (block_of[j] != b || block_of[k] != b) {
          why = "tensor is not block diagonal";
          return Verdict::unknown;
        }
        parts[b][{i - offsets[b], j - offsets[b], k - offsets[b]}] = c;
      }
      for (std::size_t b = 0; b < n.blocks.size(); ++b) {
        std::string inner;
        if (submultiplicativity(parts[b], n.blocks[b].dim, n.blocks[b].norm, inner) !=
            Verdict::proved) {
          why = "block " + std::to_string(b) + ": " + inner;
          return Verdict::unknown;
        }
      }
      why = "block diagonal with submultiplicative blocks";
      return Verdict::proved;
    }
  }
  return Verdict::unknown;
}

}  // namespace detail

inline AxiomReport verify_axioms(const Algebra& a) {
  AxiomReport r;
  const std::size_t n = a.dim();
  for (const auto& [idx, c] : a.tensor())
    if (c < 0) {
      r.positivity = false;
      r.negative_entry = idx;
      break;
    }
  for (std::size_t i = 0; i < n && r.associativity; ++i)
    for (std::size_t j = 0; j < n && r.associativity; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto lhs = a.multiply(a.basis_product(i, j), Element::atom(n, k));
        const auto rhs = a.multiply(Element::atom(n, i), a.basis_product(j, k));
        if (!(lhs == rhs)) {
          r.associativity = false;
          r.associativity_witness = std::array<std::size_t, 3>{i, j, k};
          break;
        }
      }
  r.found_identity = find_identity(a);
  if (a.has_identity()) {
    r.identity_declared = true;
    const Element& e = a.e();
    for (std::size_t i = 0; i < n; ++i) {
      const auto b = Element::atom(n, i);
      if (!(a.multiply(e, b) == b) || !(a.multiply(b, e) == b)) {
        r.identity_laws = false;
        r.identity_witness = i;
        break;
      }
    }
    r.identity_matches = r.found_identity && r.found_identity->e == e;
  }
  r.submultiplicativity =
      detail::submultiplicativity(a.tensor(), n, a.norm(), r.submultiplicativity_reason);
  return r;
}

// ---------------------------------------------------------------------------
// l^p sums

/// Block-diagonal sum with coordinatewise order and product. Only the sup
/// combination keeps an identity of norm one, so the identity is carried over
/// only for `outer == sup` when every summand has one.
inline Algebra lp_sum(const std::vector<Algebra>& summands, NormKind outer, Scalar p = 1,
                      std::string name = {}) {
  if (summands.empty()) throw InputError("lp_sum needs at least one summand");
  if (summands.size() == 1 && outer == NormKind::sup) {
    Algebra copy = summands.front();
    return copy;
  }
  std::map<TensorIndex, Scalar> tensor;
  NormSpec norm;
  norm.kind = NormKind::lpsum;
  norm.outer = outer;
  norm.p = p;
  std::size_t off = 0;
  bool all_unital = true;
  std::vector<Scalar> e;
  std::vector<std::string> labels;
  std::map<std::string, Element> elements;
  std::size_t total = 0;
  for (const auto& s : summands) total += s.dim();
  for (std::size_t idx = 0; idx < summands.size(); ++idx) {
    const auto& s = summands[idx];
    for (const auto& [t, c] : s.tensor()) {
      const auto [i, j, k] = t;
      tensor[{i + off, j + off, k + off}] = c;
    }
    norm.blocks.push_back({s.dim(), s.norm()});
    if (s.has_identity())
      for (const auto& c : s.e().coords()) e.push_back(c);
    else
      all_unital = false;
    for (std::size_t i = 0; i < s.dim(); ++i)
      labels.push_back(s.label(i) + "@" + std::to_string(idx));
    for (const auto& [ename, x] : s.elements) {
      Element embedded(total);
      for (std::size_t i = 0; i < s.dim(); ++i) embedded[off + i] = x[i];
      elements[ename + "@" + std::to_string(idx)] = embedded;
    }
    off += s.dim();
  }
  if (name.empty()) {
    name = std::string(outer == NormKind::sup ? "linf" : outer == NormKind::one ? "l1" : "lp") + "(";
    for (std::size_t i = 0; i < summands.size(); ++i)
      name += (i ? "," : "") + summands[i].name();
    name += ")";
  }
  std::optional<Element> identity;
  if (all_unital && outer == NormKind::sup) identity = Element(e);
  Algebra out(std::move(name), off, std::move(tensor), std::move(norm), std::move(identity));
  out.basis_labels = std::move(labels);
  out.elements = std::move(elements);
  return out;
}

}  // namespace latticealg
