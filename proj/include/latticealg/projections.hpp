#pragma once

// Element-level projections: order idempotents OI(A), band projections BP(A)
// and their one-sided versions BP_l(A), BP_r(A).

#include "latticealg/ideal.hpp"
#include "latticealg/operators.hpp"

#include <functional>
#include <limits>

namespace latticealg {

/// Outcome of an element-level band projection test. Nonpositive candidates
/// are rejected without evaluating the operator.
struct BpVerdict {
  bool holds = false;
  bool nonpositive = false;
  explicit operator bool() const { return holds; }
};

namespace detail {
inline BpVerdict bp_of(const Element& a, const std::function<OperatorMatrix()>& op) {
  if (!a.is_positive()) return {false, true};
  return {is_band_projection_op(op()), false};
}
}  // namespace detail

/// L_a R_a is a band projection.
inline BpVerdict is_band_projection(const Algebra& alg, const Element& a) {
  return detail::bp_of(a, [&] { return mult_op(alg, a, a); });
}
/// L_a is a band projection.
inline BpVerdict is_left_bp(const Algebra& alg, const Element& a) {
  return detail::bp_of(a, [&] { return left_mult(alg, a); });
}
/// R_a is a band projection.
inline BpVerdict is_right_bp(const Algebra& alg, const Element& a) {
  return detail::bp_of(a, [&] { return right_mult(alg, a); });
}

/// p² = p and 0 <= p <= e. nullopt when the algebra has no identity.
inline std::optional<bool> is_order_idempotent(const Algebra& alg, const Element& p) {
  if (!alg.has_identity()) return std::nullopt;
  require_dim(alg.dim(), p.dim());
  return p.is_positive() && leq(p, alg.e()) && alg.multiply(p, p) == p;
}

struct ProjectionClassification {
  Element element;
  std::optional<bool> is_oi;  // nullopt without identity
  bool is_bp = false;
  bool is_left_bp = false;
  bool is_right_bp = false;
  bool nonpositive = false;
};

inline ProjectionClassification classify(const Algebra& alg, const Element& a) {
  ProjectionClassification c;
  c.element = a;
  c.is_oi = is_order_idempotent(alg, a);
  const auto bp = is_band_projection(alg, a);
  c.nonpositive = bp.nonpositive;
  c.is_bp = bp.holds;
  c.is_left_bp = is_left_bp(alg, a).holds;
  c.is_right_bp = is_right_bp(alg, a).holds;
  return c;
}

/// OI(A) as all sums of subsets of the atoms of A_e, in subset-mask order
/// (bit s selects the s-th point of K).
inline std::vector<Element> enumerate_order_idempotents(const Algebra& alg) {
  const auto rep = ck_representation(alg);
  const std::size_t m = rep.atoms.size();
  if (m >= 24) throw std::length_error("too many atoms to enumerate order idempotents");
  std::vector<Element> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Element p(alg.dim());
    for (std::size_t s = 0; s < m; ++s)
      if (mask >> s & 1) p += rep.atoms[s];
    out.push_back(std::move(p));
  }
  return out;
}

struct OiOperations {
  Element join;        // p + q - pq
  Element meet;        // pq
  Element complement;  // e - p
  /// join/meet equal the lattice sup/inf, and all three are order idempotents.
  bool consistent = false;
};

inline OiOperations oi_boolean(const Algebra& alg, const Element& p, const Element& q) {
  if (is_order_idempotent(alg, p) != true || is_order_idempotent(alg, q) != true)
    throw std::invalid_argument("oi_boolean: inputs must be order idempotents");
  OiOperations r;
  const Element pq = alg.multiply(p, q);
  r.join = p + q - pq;
  r.meet = pq;
  r.complement = alg.e() - p;
  r.consistent = r.join == sup(p, q) && r.meet == inf(p, q) &&
                 *is_order_idempotent(alg, r.join) && *is_order_idempotent(alg, r.meet) &&
                 *is_order_idempotent(alg, r.complement);
  return r;
}

// ---------------------------------------------------------------------------
// The four equivalent conditions for a band projection p in a unital algebra

struct Equivalences {
  bool order_idempotent = false;  // (i)
  bool idempotent = false;        // (ii)
  bool in_identity_ideal = false; // (iii)
  bool positive_inverse = false;  // (iv) (λe + p)^{-1} >= 0 for some λ > ‖p‖
  std::vector<Scalar> lambdas_tried;
  std::optional<Scalar> witness_lambda;

  bool all_equal() const {
    return order_idempotent == idempotent && idempotent == in_identity_ideal &&
           in_identity_ideal == positive_inverse;
  }
};

namespace detail {
/// Smallest integer strictly above an upper bound for ‖x‖.
inline Scalar integer_above_norm(const NormValue& v) {
  if (v.exact) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), v.value.get_num().get_mpz_t(), v.value.get_den().get_mpz_t());
    return Scalar(fl + 1);
  }
  return Scalar(static_cast<long>(std::floor(v.approx.value + v.approx.error)) + 1);
}
}  // namespace detail

/// Condition (iv) is decided by a finite procedure. If p ∈ A_e the explicit
/// λ = ‖p‖_e + 2 (raised above ‖p‖ when the ambient norm is larger) certifies
/// it; otherwise λ runs over `probe_offsets` above ‖p‖ and no positive
/// inverse is reported when none is found, which is exact here because (iii)
/// failing forces (iv) to fail.
inline Equivalences check_equivalences(const Algebra& alg, const Element& p,
                                       const std::vector<Scalar>& probe_offsets = {1, 2, 3, 5, 10,
                                                                                   100}) {
  if (!alg.has_identity()) throw std::invalid_argument("check_equivalences: no identity");
  if (!is_band_projection(alg, p)) throw std::invalid_argument("check_equivalences: p is not in BP(A)");
  Equivalences r;
  r.order_idempotent = *is_order_idempotent(alg, p);
  r.idempotent = alg.multiply(p, p) == p;
  const auto pe = e_norm(alg, p);
  r.in_identity_ideal = pe.has_value();

  const Scalar above = detail::integer_above_norm(alg.norm_of(p));
  std::vector<Scalar> lambdas;
  if (pe) {
    Scalar lambda = *pe + 2;
    if (lambda < above) lambda = above + 1;
    lambdas.push_back(lambda);
  } else {
    for (const auto& off : probe_offsets) lambdas.push_back(above + off);
  }
  for (const auto& lambda : lambdas) {
    r.lambdas_tried.push_back(lambda);
    const auto inv = inverse(alg, lambda * alg.e() + p);
    if (inv && inv->is_positive()) {
      r.positive_inverse = true;
      r.witness_lambda = lambda;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Commutation

struct CommutationReport {
  /// Indices (into the candidate list) of members of BP_l ∩ BP_r.
  std::vector<std::size_t> lr_members;
  bool lr_commute = true;
  std::optional<std::pair<std::size_t, std::size_t>> lr_violation;
  /// A pair of BP(A) candidates with ab != ba, if any.
  std::optional<std::pair<std::size_t, std::size_t>> noncommuting_bp;
};

inline CommutationReport commutation_check(const Algebra& alg, const std::vector<Element>& cand) {
  CommutationReport r;
  std::vector<std::size_t> bp;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const auto c = classify(alg, cand[i]);
    if (c.is_bp) bp.push_back(i);
    if (c.is_left_bp && c.is_right_bp) r.lr_members.push_back(i);
  }
  auto commute = [&](std::size_t i, std::size_t j) {
    return alg.multiply(cand[i], cand[j]) == alg.multiply(cand[j], cand[i]);
  };
  for (std::size_t a = 0; a < r.lr_members.size() && r.lr_commute; ++a)
    for (std::size_t b = a + 1; b < r.lr_members.size(); ++b)
      if (!commute(r.lr_members[a], r.lr_members[b])) {
        r.lr_commute = false;
        r.lr_violation = {r.lr_members[a], r.lr_members[b]};
        break;
      }
  for (std::size_t a = 0; a < bp.size() && !r.noncommuting_bp; ++a)
    for (std::size_t b = a + 1; b < bp.size(); ++b)
      if (!commute(bp[a], bp[b])) {
        r.noncommuting_bp = {bp[a], bp[b]};
        break;
      }
  return r;
}

// ---------------------------------------------------------------------------
// Grid search

struct GridSpec {
  /// Candidate values for every coordinate, ascending.
  std::vector<Scalar> values;

  /// {0, 1/n, 2/n, ..., 1}.
  static GridSpec uniform(unsigned n) {
    GridSpec g;
    if (n == 0) {
      g.values = {Scalar(0)};
      return g;
    }
    for (unsigned k = 0; k <= n; ++k) g.values.push_back(Scalar(k, n));
    for (auto& v : g.values) v.canonicalize();
    return g;
  }
};

/// Calls f on every grid point in lexicographic order.
template <typename F>
void for_each_grid_point(std::size_t dim, const GridSpec& grid, F&& f) {
  const std::size_t base = grid.values.size();
  if (base == 0) return;
  std::vector<std::size_t> digits(dim, 0);
  Element x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = grid.values[0];
  while (true) {
    f(static_cast<const Element&>(x));
    std::size_t pos = dim;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < base) {
        x[pos] = grid.values[digits[pos]];
        break;
      }
      digits[pos] = 0;
      x[pos] = grid.values[0];
      if (pos == 0) return;
    }
    if (dim == 0) return;
  }
}

enum class ProjectionClass { band, left_and_right };

/// Grid points certified exactly as members of BP(A) (or BP_l ∩ BP_r).
/// Never claims completeness: BP(A) may contain rays.
inline std::vector<Element> search_band_projections(const Algebra& alg, const GridSpec& grid,
                                                    ProjectionClass which = ProjectionClass::band) {
  std::vector<Element> found;
  for_each_grid_point(alg.dim(), grid, [&](const Element& x) {
    const bool member = which == ProjectionClass::band
                            ? is_band_projection(alg, x).holds
                            : is_left_bp(alg, x).holds && is_right_bp(alg, x).holds;
    if (member) found.push_back(x);
  });
  return found;
}

}  // namespace latticealg
