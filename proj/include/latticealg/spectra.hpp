#pragma once

// Spectra of elements of a unital algebra.
//
// σ(a) is taken to be the spectrum of the left regular representation L_a.
// The map a ↦ L_a is injective (L_a e = a) and unital, so in finite
// dimensions a - λe is invertible in A exactly when L_a - λI is invertible:
// a right inverse y with (a - λe)y = e is automatically two-sided. Hence
// σ(a) is the root set of det(L_a - λI).

#include "latticealg/ideal.hpp"
#include "latticealg/polynomial.hpp"
#include "latticealg/projections.hpp"

#include <complex>

namespace latticealg {

struct NumericRoot {
  std::complex<long double> value;
  long double radius = 0;  // a root lies within this distance of `value`
  bool real = false;       // certified by Sturm counting
  unsigned multiplicity = 1;
};

struct SpectrumResult {
  /// det(L_a - λI).
  Polynomial char_poly;
  /// Exact rational roots with algebraic multiplicities, ascending.
  std::vector<std::pair<Scalar, unsigned>> rational_roots;
  /// Remaining (irrational) roots.
  std::vector<NumericRoot> other_roots;
  RealApprox spectral_radius;
  std::optional<Scalar> exact_spectral_radius;
  /// Every root is real / real and >= 0. Decided exactly by Sturm sequences.
  bool all_real = true;
  bool all_nonnegative = true;

  bool all_rational() const { return other_roots.empty(); }

  std::vector<Scalar> distinct_rational() const {
    std::vector<Scalar> out;
    for (const auto& [r, m] : rational_roots) out.push_back(r);
    return out;
  }
  /// σ ⊆ set, exact; false whenever an irrational root exists.
  bool subset_of(const std::vector<Scalar>& set) const {
    if (!all_rational()) return false;
    for (const auto& [r, m] : rational_roots)
      if (std::find(set.begin(), set.end(), r) == set.end()) return false;
    return true;
  }
  /// "-λ(λ+1)(λ-1)"-style factored display.
  std::string factored(const std::string& var = "λ") const;
};

inline std::string SpectrumResult::factored(const std::string& var) const {
  std::string out;
  if (char_poly.is_zero()) return "0";
  Polynomial rest = char_poly;
  const Scalar lead = char_poly.leading();
  if (lead == -1) out += "-";
  else if (lead != 1) out += format_scalar(lead);
  auto with_power = [](std::string f, unsigned m) {
    return m > 1 ? f + "^" + std::to_string(m) : f;
  };
  // zero root first, then the others ascending
  std::vector<std::pair<Scalar, unsigned>> ordered;
  for (const auto& rm : rational_roots)
    if (rm.first == 0) ordered.push_back(rm);
  for (const auto& rm : rational_roots)
    if (rm.first != 0) ordered.push_back(rm);
  for (const auto& [r, m] : ordered) {
    std::string f;
    if (r == 0) f = var;
    else if (r > 0) f = "(" + var + "-" + format_scalar(r) + ")";
    else f = "(" + var + "+" + format_scalar(-r) + ")";
    out += with_power(f, m);
    for (unsigned k = 0; k < m; ++k) rest = Polynomial::divmod(rest, Polynomial::linear_root(r)).first;
  }
  if (rest.degree() > 0) out += "(" + rest.monic().to_string(var) + ")";
  if (out.empty() || out == "-") out += "1";
  return out;
}

/// Spectrum of a single matrix; the algebra-free core of spectrum().
inline SpectrumResult matrix_spectrum(const Matrix& t) {
  SpectrumResult s;
  s.char_poly = char_poly(t);
  Polynomial rest = s.char_poly;

  // Exact rational roots with multiplicities.
  const auto factors = squarefree_factors(s.char_poly);
  Polynomial radical({Scalar(1)});
  for (const auto& [f, m] : factors) radical = radical * f;
  for (const auto& r : rational_roots_squarefree(radical)) {
    unsigned mult = 0;
    const auto lin = Polynomial::linear_root(r);
    while (rest.degree() > 0 && rest(r) == 0) {
      rest = Polynomial::divmod(rest, lin).first;
      ++mult;
    }
    s.rational_roots.emplace_back(r, mult);
  }
  std::sort(s.rational_roots.begin(), s.rational_roots.end());

  long double radius = 0;
  for (const auto& [r, m] : s.rational_roots) {
    radius = std::max(radius, std::fabs(to_long_double(r)));
    if (r < 0) s.all_nonnegative = false;
  }
  Scalar exact_radius = 0;
  for (const auto& [r, m] : s.rational_roots)
    if (exact_radius < ::abs(r)) exact_radius = ::abs(r);

  long double radius_err = 0;
  for (const auto& [f, m] : squarefree_factors(rest)) {
    auto roots = numeric_roots(f);
    const std::size_t real_count = count_real_roots(f);
    if (count_real_roots_below(f, Scalar(0)) > 0) s.all_nonnegative = false;
    if (real_count < f.degree()) {
      s.all_real = false;
      s.all_nonnegative = false;
    }
    // The real_count roots closest to the real axis are the real ones.
    std::vector<std::size_t> order(roots.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::fabs(roots[a].imag()) < std::fabs(roots[b].imag());
    });
    for (std::size_t k = 0; k < order.size(); ++k) {
      NumericRoot nr;
      nr.value = roots[order[k]];
      nr.radius = inclusion_radius(f, nr.value);
      nr.real = k < real_count;
      if (nr.real) nr.value.imag(0);
      nr.multiplicity = m;
      radius = std::max(radius, std::abs(nr.value));
      radius_err = std::max(radius_err, nr.radius);
      s.other_roots.push_back(nr);
    }
  }
  std::sort(s.other_roots.begin(), s.other_roots.end(), [](const auto& a, const auto& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  s.spectral_radius = {radius, radius_err};
  if (s.other_roots.empty()) s.exact_spectral_radius = exact_radius;
  return s;
}

inline SpectrumResult spectrum(const Algebra& alg, const Element& a) {
  if (!alg.has_identity()) throw Inapplicable("spectrum: algebra has no identity");
  return matrix_spectrum(left_mult(alg, a).matrix());
}

/// Evaluates a polynomial at an element of the algebra (Horner, powers of a).
inline Element evaluate_at(const Algebra& alg, const Polynomial& p, const Element& a) {
  Element acc(alg.dim());
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) acc = alg.multiply(acc, a) + c[k] * alg.e();
  return acc;
}

// ---------------------------------------------------------------------------
// Spectral facts about band projections

struct BpSpectrumReport {
  SpectrumResult spectrum;
  bool within_pm1_0 = false;   // σ(p) ⊆ {-1, 0, 1}
  bool square_zero = false;    // p² = 0
  bool sigma_zero = false;     // σ(p) = {0}, required when p² = 0
  bool radius_one = false;     // r(p) = 1, required when p² != 0
  bool square_e_norm_one = false;  // ‖p²‖_e = 1, required when p² != 0
  bool ok() const {
    return within_pm1_0 && (square_zero ? sigma_zero : radius_one && square_e_norm_one);
  }
};

inline BpSpectrumReport check_bp_spectrum(const Algebra& alg, const Element& p) {
  if (!alg.has_identity()) throw Inapplicable("check_bp_spectrum: algebra has no identity");
  if (!is_band_projection(alg, p)) throw std::invalid_argument("check_bp_spectrum: p is not in BP(A)");
  BpSpectrumReport r;
  r.spectrum = spectrum(alg, p);
  r.within_pm1_0 = r.spectrum.subset_of({Scalar(-1), Scalar(0), Scalar(1)});
  const Element p2 = alg.multiply(p, p);
  r.square_zero = p2.is_zero();
  r.sigma_zero = r.spectrum.subset_of({Scalar(0)});
  r.radius_one = r.spectrum.exact_spectral_radius && *r.spectrum.exact_spectral_radius == 1;
  const auto en = e_norm(alg, p2);
  r.square_e_norm_one = en && *en == 1;
  return r;
}

struct PositiveSpectrumReport {
  bool applicable = false;
  std::string reason;  // failed hypothesis when not applicable
  Element inverse;
  bool in_identity_ideal = false;
  bool spectrum_nonnegative = false;
  /// a ∈ A_e  <=>  σ(a) ⊆ R_+
  bool consistent() const { return in_identity_ideal == spectrum_nonnegative; }
};

/// For a >= 0 invertible with a^{-1} >= 0: a ∈ A_e iff σ(a) ⊆ R_+.
inline PositiveSpectrumReport positive_spectrum_center_check(const Algebra& alg, const Element& a) {
  if (!alg.has_identity()) throw Inapplicable("positive_spectrum_center_check: no identity");
  PositiveSpectrumReport r;
  if (!a.is_positive()) {
    r.reason = "a is not positive";
    return r;
  }
  const auto inv = inverse(alg, a);
  if (!inv) {
    r.reason = "a is not invertible";
    return r;
  }
  r.inverse = *inv;
  if (!inv->is_positive()) {
    r.reason = "inverse of a is not positive";
    return r;
  }
  r.applicable = true;
  r.in_identity_ideal = in_identity_ideal(alg, a);
  r.spectrum_nonnegative = spectrum(alg, a).all_nonnegative;
  return r;
}

struct ShiftedIdempotentReport {
  std::optional<Element> shifted;  // a - λe when every hypothesis holds
  std::string failed_hypothesis;
  bool order_idempotent = false;
  bool ok() const { return shifted.has_value() && order_idempotent; }
};

/// a >= 0 invertible with a^{-1} >= 0, λ >= 0 and σ(a) ⊆ {λ, λ+1}: then
/// a - λe ∈ OI(A).
inline ShiftedIdempotentReport shifted_idempotent_check(const Algebra& alg, const Element& a,
                                                        const Scalar& lambda) {
  if (!alg.has_identity()) throw Inapplicable("shifted_idempotent_check: no identity");
  ShiftedIdempotentReport r;
  if (lambda < 0) {
    r.failed_hypothesis = "lambda >= 0";
    return r;
  }
  if (!a.is_positive()) {
    r.failed_hypothesis = "a >= 0";
    return r;
  }
  const auto inv = inverse(alg, a);
  if (!inv) {
    r.failed_hypothesis = "a invertible";
    return r;
  }
  if (!inv->is_positive()) {
    r.failed_hypothesis = "a^-1 >= 0";
    return r;
  }
  if (!spectrum(alg, a).subset_of({lambda, lambda + 1})) {
    r.failed_hypothesis = "spectrum within {lambda, lambda+1}";
    return r;
  }
  r.shifted = a - lambda * alg.e();
  r.order_idempotent = is_order_idempotent(alg, *r.shifted) == true;
  return r;
}

}  // namespace latticealg
