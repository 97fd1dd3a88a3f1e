#pragma once

// Principal ideals, the ideal A_e generated by the identity, and its
// representation as functions on a finite set of atoms.
//
// In the coordinatewise model the order ideal generated by e is the span of
// the atoms in supp(e). It is a subalgebra on which the product is pointwise
// in the coordinates x_t / e_t, i.e. A_e ≅ C(K) with K = supp(e).

#include "latticealg/algebra.hpp"
#include "latticealg/operators.hpp"

#include <random>
#include <set>

namespace latticealg {

struct IdealBasis {
  std::set<std::size_t> support;
  Element generator;

  bool contains(const Element& x) const {
    for (auto i : x.support())
      if (!support.count(i)) return false;
    return true;
  }
};

/// Smallest support containing supp(a) that is closed under two-sided
/// multiplication by the atoms.
inline IdealBasis principal_ideal(const Algebra& alg, const Element& a) {
  require_dim(alg.dim(), a.dim());
  IdealBasis ideal{{}, a};
  for (auto i : a.support()) ideal.support.insert(i);
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<std::size_t> current(ideal.support.begin(), ideal.support.end());
    for (auto j : current)
      for (std::size_t i = 0; i < alg.dim(); ++i)
        for (const auto* prod : {&alg.basis_product(i, j), &alg.basis_product(j, i)})
          for (auto k : prod->support())
            changed |= ideal.support.insert(k).second;
  }
  return ideal;
}

/// ‖x‖_e = inf{λ : |x| <= λe}; nullopt when x ∉ A_e.
inline std::optional<Scalar> e_norm(const Algebra& alg, const Element& x) {
  const Element& e = alg.e();
  require_dim(e.dim(), x.dim());
  Scalar best = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i] == 0) continue;
    if (e[i] <= 0) return std::nullopt;
    const Scalar r = ::abs(x[i]) / e[i];
    if (best < r) best = r;
  }
  return best;
}

inline bool in_identity_ideal(const Algebra& alg, const Element& x) {
  return e_norm(alg, x).has_value();
}

struct IdentityIdeal {
  IdealBasis ideal;
  /// Atoms of the disjoint complement A_e^d.
  std::set<std::size_t> complement;
  /// Diagonal 0/1 band projection onto A_e.
  OperatorMatrix projection;
  /// Band {e}^dd computed from disjointness alone; must equal the ideal.
  std::set<std::size_t> band;
  bool band_equals_ideal = false;
  /// Random reconstructions x = P x + (I - P) x with (I - P) x ⊥ e.
  std::size_t reconstructions = 0;
  bool decomposition_ok = true;

  Element component(const Element& x) const { return projection.apply(x); }
};

/// A_e as an order ideal, its band projection, and a randomized check that
/// A = A_e ⊕ A_e^d.
inline IdentityIdeal identity_ideal(const Algebra& alg, std::size_t samples = 16,
                                    std::uint64_t seed = 1) {
  const Element& e = alg.e();
  const std::size_t n = alg.dim();
  IdentityIdeal out;
  out.ideal.generator = e;
  std::vector<Scalar> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (e[i] > 0) {
      out.ideal.support.insert(i);
      diag[i] = 1;
    } else {
      out.complement.insert(i);
    }
  }
  out.projection = OperatorMatrix::diagonal(diag);

  // {e}^d, then its disjoint complement, using only the lattice structure.
  std::vector<Element> perp;
  for (std::size_t i = 0; i < n; ++i)
    if (is_disjoint(Element::atom(n, i), e)) perp.push_back(Element::atom(n, i));
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = Element::atom(n, i);
    bool disjoint_from_all = true;
    for (const auto& y : perp) disjoint_from_all &= is_disjoint(b, y);
    if (disjoint_from_all) out.band.insert(i);
  }
  out.band_equals_ideal = out.band == out.ideal.support;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (std::size_t s = 0; s < samples; ++s) {
    Element x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = Scalar(num(rng), den(rng));
    const Element xe = out.projection.apply(x);
    const Element xd = x - xe;
    const bool ok = xe + xd == x && in_identity_ideal(alg, xe) && is_disjoint(xd, e);
    out.decomposition_ok &= ok;
    ++out.reconstructions;
  }
  return out;
}

// ---------------------------------------------------------------------------
// C(K) representation

class InvariantFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CKRepresentation {
  /// Points of K, as atom indices of supp(e).
  std::vector<std::size_t> points;
  /// Minimal idempotents of A_e: atom t scaled to e_t. Indicator of {t}.
  std::vector<Element> atoms;
  Element e;

  /// Function on K of x ∈ A_e: t ↦ x_t / e_t. These are the point
  /// evaluations (multiplicative functionals) of the representation.
  std::vector<Scalar> coords(const Element& x) const {
    std::vector<Scalar> f;
    f.reserve(points.size());
    for (auto t : points) f.push_back(x[t] / e[t]);
    return f;
  }
  Scalar evaluate(std::size_t point_index, const Element& x) const {
    const auto t = points.at(point_index);
    return x[t] / e[t];
  }
  Element from_coords(const std::vector<Scalar>& f) const {
    require_dim(points.size(), f.size());
    Element x(e.dim());
    for (std::size_t s = 0; s < points.size(); ++s) x[points[s]] = f[s] * e[points[s]];
    return x;
  }
  /// Coordinate matrix: column s is atom s.
  Matrix coordinate_matrix() const {
    Matrix m(e.dim(), points.size());
    for (std::size_t s = 0; s < points.size(); ++s) m(points[s], s) = e[points[s]];
    return m;
  }
};

/// Atoms of A_e and the pointwise coordinate map. Throws InvariantFailure
/// when the input cannot be a lattice algebra (e.g. atoms not idempotent).
inline CKRepresentation ck_representation(const Algebra& alg) {
  const Element& e = alg.e();
  const std::size_t n = alg.dim();
  CKRepresentation rep;
  rep.e = e;
  for (std::size_t t = 0; t < n; ++t) {
    if (e[t] < 0) throw InvariantFailure("identity is not positive");
    if (e[t] == 0) continue;
    rep.points.push_back(t);
    rep.atoms.push_back(Element::atom(n, t, e[t]));
  }
  Element total(n);
  for (std::size_t s = 0; s < rep.atoms.size(); ++s) {
    total += rep.atoms[s];
    for (std::size_t r = 0; r < rep.atoms.size(); ++r) {
      const Element prod = alg.multiply(rep.atoms[s], rep.atoms[r]);
      const Element expect = s == r ? rep.atoms[s] : Element(n);
      if (!(prod == expect))
        throw InvariantFailure("atoms " + alg.label(rep.points[s]) + ", " +
                               alg.label(rep.points[r]) + " are not orthogonal idempotents");
      if (s != r && !is_disjoint(rep.atoms[s], rep.atoms[r]))
        throw InvariantFailure("atoms are not disjoint");
    }
  }
  if (!(total == e)) throw InvariantFailure("atoms do not sum to e");
  return rep;
}

/// Checks the representation invariants on a given element pair of A_e:
/// lattice and algebra homomorphism, and the AM-norm identity.
inline bool ck_homomorphism_holds(const Algebra& alg, const CKRepresentation& rep,
                                  const Element& x, const Element& y) {
  auto pointwise = [](std::vector<Scalar> f, const std::vector<Scalar>& g, auto op) {
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = op(f[i], g[i]);
    return f;
  };
  const auto fx = rep.coords(x), fy = rep.coords(y);
  if (!(rep.from_coords(fx) == x)) return false;
  if (rep.coords(alg.multiply(x, y)) !=
      pointwise(fx, fy, [](const Scalar& a, const Scalar& b) { return Scalar(a * b); }))
    return false;
  if (rep.coords(sup(x, y)) !=
      pointwise(fx, fy, [](const Scalar& a, const Scalar& b) { return a < b ? b : a; }))
    return false;
  if (rep.coords(inf(x, y)) !=
      pointwise(fx, fy, [](const Scalar& a, const Scalar& b) { return b < a ? b : a; }))
    return false;
  Scalar sup_abs = 0;
  for (const auto& v : fx)
    if (sup_abs < ::abs(v)) sup_abs = ::abs(v);
  const auto en = e_norm(alg, x);
  return en && *en == sup_abs;
}

// ---------------------------------------------------------------------------
// Truncations a ∧ ne

struct TruncationReport {
  std::vector<Element> truncations;  // a_n for n = 1..max_n
  bool monotone = true;
  bool cauchy_bound = true;
  std::optional<std::pair<std::size_t, std::size_t>> bound_witness;
  Element limit;                     // band projection of a onto B_e
  std::optional<std::size_t> stabilizes_at;
  bool stabilization_expected = false;
  bool ok() const {
    return monotone && cauchy_bound && (!stabilization_expected || stabilizes_at.has_value());
  }
};

namespace detail {
inline bool norm_leq(const NormValue& lhs, const NormValue& rhs_scaled_base, const Scalar& factor) {
  if (lhs.exact && rhs_scaled_base.exact) return lhs.value <= rhs_scaled_base.value * factor;
  return lhs.approx.value - lhs.approx.error <=
         rhs_scaled_base.approx.value * to_long_double(factor) + rhs_scaled_base.approx.error;
}
}  // namespace detail

/// a_n = a ∧ ne for n = 1..max_n: monotone, ‖a_m - a_n‖ <= ‖a‖²/n for m >= n,
/// and equal to the B_e-component of a once n >= ‖P_e a‖_e.
inline TruncationReport truncation_cauchy_check(const Algebra& alg, const Element& a,
                                                std::size_t max_n = 20) {
  if (!a.is_positive()) throw std::invalid_argument("truncation_cauchy_check: a must be positive");
  const Element& e = alg.e();
  TruncationReport r;
  for (std::size_t n = 1; n <= max_n; ++n) r.truncations.push_back(inf(a, Scalar(n) * e));
  const auto ideal = identity_ideal(alg, 0);
  r.limit = ideal.component(a);
  const auto a_norm = alg.norm_of(a);
  NormValue a_sq = a_norm;
  if (a_norm.exact) a_sq = NormValue::of(a_norm.value * a_norm.value);
  else a_sq = NormValue::real(a_norm.approx.value * a_norm.approx.value,
                              a_norm.approx.error * (2 * a_norm.approx.value + a_norm.approx.error));
  for (std::size_t n = 1; n <= max_n; ++n)
    for (std::size_t m = n; m <= max_n; ++m) {
      const auto& an = r.truncations[n - 1];
      const auto& am = r.truncations[m - 1];
      if (!leq(an, am)) r.monotone = false;
      if (!detail::norm_leq(alg.norm_of(am - an), a_sq, Scalar(1, n)) && r.cauchy_bound) {
        r.cauchy_bound = false;
        r.bound_witness = {n, m};
      }
    }
  const auto need = *e_norm(alg, r.limit);
  r.stabilization_expected = need <= max_n;
  for (std::size_t n = 1; n <= max_n; ++n) {
    bool stable = true;
    for (std::size_t m = n; m <= max_n; ++m) stable &= r.truncations[m - 1] == r.limit;
    if (stable) {
      r.stabilizes_at = n;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Inverse closedness

struct InverseReport {
  bool invertible = false;
  Element inverse;
  bool inverse_in_ideal = false;
  bool two_sided = false;
  bool ok() const { return !invertible || (inverse_in_ideal && two_sided); }
};

/// Inverse of a in A by solving a*y = e, when it exists.
inline std::optional<Element> inverse(const Algebra& alg, const Element& a) {
  const auto sol = solve(left_mult(alg, a).matrix(), std::vector<Scalar>(alg.e().coords().begin(),
                                                                        alg.e().coords().end()));
  if (!sol.unique()) return std::nullopt;
  Element y(sol.solution);
  if (!(alg.multiply(y, a) == alg.e())) return std::nullopt;
  return y;
}

inline InverseReport inverse_closed_check(const Algebra& alg, const Element& a) {
  if (!in_identity_ideal(alg, a))
    throw std::invalid_argument("inverse_closed_check: element is not in A_e");
  InverseReport r;
  const auto sol = solve(left_mult(alg, a).matrix(),
                         std::vector<Scalar>(alg.e().coords().begin(), alg.e().coords().end()));
  if (!sol.unique()) return r;
  r.invertible = true;
  r.inverse = Element(sol.solution);
  r.inverse_in_ideal = in_identity_ideal(alg, r.inverse);
  r.two_sided = alg.multiply(r.inverse, a) == alg.e() && alg.multiply(a, r.inverse) == alg.e();
  return r;
}

}  // namespace latticealg
