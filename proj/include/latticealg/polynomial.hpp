#pragma once

// Univariate polynomials with rational coefficients, plus the root machinery
// used for spectra: exact rational roots, Sturm counting, and Aberth
// iteration with inclusion radii for the rest.

#include "latticealg/linalg.hpp"
#include "latticealg/scalar.hpp"

#include <algorithm>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

namespace latticealg {

class Polynomial {
 public:
  Polynomial() = default;
  /// Coefficients from the constant term upwards.
  explicit Polynomial(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }

  static Polynomial monomial(const Scalar& coeff, std::size_t degree) {
    std::vector<Scalar> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }
  /// x - r
  static Polynomial linear_root(const Scalar& r) { return Polynomial({-r, Scalar(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

  Scalar operator()(const Scalar& x) const {
    Scalar acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  std::complex<long double> operator()(std::complex<long double> z) const {
    std::complex<long double> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + to_long_double(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (c_.empty()) return {};
    Polynomial p = *this;
    const Scalar lead = leading();
    for (auto& x : p.c_) x /= lead;
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Scalar& s, Polynomial p) {
    for (auto& x : p.c_) x *= s;
    p.trim();
    return p;
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Scalar> rem = a.c_;
    if (rem.size() < b.c_.size()) return {Polynomial(), a};
    std::vector<Scalar> quo(rem.size() - b.c_.size() + 1);
    const Scalar lead = b.leading();
    for (std::size_t k = quo.size(); k-- > 0;) {
      const Scalar f = rem[k + b.c_.size() - 1] / lead;
      quo[k] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= f * b.c_[j];
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  /// Monic gcd.
  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Expanded form, highest degree first, e.g. "-λ^3 + λ".
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

inline std::string Polynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Scalar& a = c_[k];
    if (a == 0) continue;
    const bool negative = a < 0;
    const Scalar mag = ::abs(a);
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    const bool unit = mag == 1 && k > 0;
    if (!unit) out += format_scalar(mag);
    if (k > 0) out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

/// det(λI - T) by the Faddeev-LeVerrier recurrence.
inline Polynomial char_poly_monic(const Matrix& t) {
  const std::size_t n = t.rows();
  std::vector<Scalar> c(n + 1);
  c[n] = 1;
  Matrix m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = T M_{k-1} + c_{n-k+1} I
    Matrix next(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        if (t(r, s) == 0) continue;
        for (std::size_t q = 0; q < n; ++q) next(r, q) += t(r, s) * m(s, q);
      }
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    // c_{n-k} = -tr(T M_k) / k
    Scalar tr = 0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) tr += t(r, s) * next(s, r);
    c[n - k] = -tr / static_cast<unsigned long>(k);
    m = std::move(next);
  }
  return Polynomial(std::move(c));
}

/// det(T - λI) = (-1)^n det(λI - T).
inline Polynomial char_poly(const Matrix& t) {
  auto p = char_poly_monic(t);
  return t.rows() % 2 ? Scalar(-1) * p : p;
}

// ---------------------------------------------------------------------------
// Real root counting

/// Sturm sequence of a squarefree polynomial.
inline std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    auto r = Polynomial::divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(Scalar(-1) * r);
  }
  return seq;
}

namespace detail {
inline std::size_t sign_changes(const std::vector<int>& signs) {
  std::size_t changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}
inline std::vector<int> signs_at_neg_inf(const std::vector<Polynomial>& seq) {
  std::vector<int> s;
  for (const auto& p : seq) {
    const int lead = ::sgn(p.leading());
    s.push_back(p.degree() % 2 ? -lead : lead);
  }
  return s;
}
inline std::vector<int> signs_at_pos_inf(const std::vector<Polynomial>& seq) {
  std::vector<int> s;
  for (const auto& p : seq) s.push_back(::sgn(p.leading()));
  return s;
}
inline std::vector<int> signs_at(const std::vector<Polynomial>& seq, const Scalar& x) {
  std::vector<int> s;
  for (const auto& p : seq) s.push_back(::sgn(p(x)));
  return s;
}
}  // namespace detail

/// Number of distinct real roots of a squarefree polynomial.
inline std::size_t count_real_roots(const Polynomial& p) {
  if (p.degree() == 0) return 0;
  const auto seq = sturm_sequence(p);
  return detail::sign_changes(detail::signs_at_neg_inf(seq)) -
         detail::sign_changes(detail::signs_at_pos_inf(seq));
}

/// Distinct real roots in (-inf, x) of a squarefree polynomial.
inline std::size_t count_real_roots_below(const Polynomial& p, const Scalar& x) {
  if (p.degree() == 0) return 0;
  const auto seq = sturm_sequence(p);
  // Sturm counts roots in (a, b]; a root exactly at x is excluded by
  // subtracting it back out.
  std::size_t n = detail::sign_changes(detail::signs_at_neg_inf(seq)) -
                  detail::sign_changes(detail::signs_at(seq, x));
  if (p(x) == 0) --n;
  return n;
}

// ---------------------------------------------------------------------------
// Factor helpers

/// Squarefree factorization (Yun): returns (factor, multiplicity) pairs with
/// monic squarefree, pairwise coprime factors.
inline std::vector<std::pair<Polynomial, unsigned>> squarefree_factors(const Polynomial& f) {
  std::vector<std::pair<Polynomial, unsigned>> out;
  if (f.degree() == 0) return out;
  const Polynomial fm = f.monic();
  Polynomial a = Polynomial::gcd(fm, fm.derivative());
  Polynomial b = Polynomial::divmod(fm, a).first;
  Polynomial c = Polynomial::divmod(fm.derivative(), a).first;
  Polynomial d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    Polynomial g = Polynomial::gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = Polynomial::divmod(b, g).first;
    c = Polynomial::divmod(d, g).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/// Numeric roots of a squarefree polynomial (Aberth-Ehrlich iteration).
inline std::vector<std::complex<long double>> numeric_roots(const Polynomial& p) {
  using C = std::complex<long double>;
  const std::size_t n = p.degree();
  std::vector<C> z;
  if (n == 0) return z;
  const auto m = p.monic();
  std::vector<long double> a(n + 1);
  for (std::size_t i = 0; i <= n; ++i) a[i] = to_long_double(m.coeff(i));
  if (n == 1) return {C(-a[0], 0)};
  long double bound = 0;  // Cauchy bound
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::fabs(a[i]));
  bound += 1;
  auto eval = [&](C x) {
    C v = a[n], d = 0;
    for (std::size_t i = n; i-- > 0;) {
      d = d * x + v;
      v = v * x + a[i];
    }
    return std::pair{v, d};
  };
  for (std::size_t k = 0; k < n; ++k) {
    const long double ang = 2 * 3.14159265358979323846L * k / n + 0.4L;
    z.push_back(std::polar(bound * 0.5L, ang));
  }
  for (int iter = 0; iter < 800; ++iter) {
    long double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      auto [v, d] = eval(z[k]);
      if (v == C(0)) continue;
      const C ratio = v / d;
      C sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += C(1) / (z[k] - z[j]);
      const C step = ratio / (C(1) - ratio * sum);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1 + std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  // A few Newton polishing steps.
  for (auto& x : z)
    for (int i = 0; i < 3; ++i) {
      auto [v, d] = eval(x);
      if (d != C(0)) x -= v / d;
    }
  return z;
}

/// Radius of a disc around z guaranteed (up to rounding) to contain a root of
/// a squarefree polynomial of degree n: n |p(z)| / |p'(z)|, plus rounding slack.
inline long double inclusion_radius(const Polynomial& p, std::complex<long double> z) {
  const auto m = p.monic();
  const auto v = m(z);
  const auto d = m.derivative()(z);
  const long double n = static_cast<long double>(p.degree());
  long double scale = 0;
  for (const auto& c : m.coeffs()) scale = std::max(scale, std::fabs(to_long_double(c)));
  const long double slack =
      32 * std::numeric_limits<long double>::epsilon() * (1 + std::abs(z)) * (1 + scale);
  if (std::abs(d) == 0) return std::numeric_limits<long double>::infinity();
  return n * std::abs(v) / std::abs(d) + slack;
}

namespace detail {

inline std::vector<mpz_class> integer_coefficients(const Polynomial& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> out;
  for (const auto& c : p.coeffs()) out.push_back(mpz_class(c * l));
  mpz_class g = 0;
  for (const auto& c : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 0)
    for (auto& c : out) c /= g;
  return out;
}

inline std::vector<mpz_class> small_divisors(mpz_class v) {
  v = ::abs(v);
  std::vector<mpz_class> d;
  for (mpz_class k = 1; k * k <= v; ++k)
    if (v % k == 0) {
      d.push_back(k);
      if (k * k != v) d.push_back(v / k);
    }
  return d;
}

inline void continued_fraction_candidates(long double x, std::vector<Scalar>& out) {
  // Convergents h/k of x.
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  long double r = x;
  for (int i = 0; i < 40; ++i) {
    const long double fl = std::floor(r);
    if (std::fabs(fl) > 1e15L) break;
    const mpz_class a(static_cast<long>(fl));
    const mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
    out.emplace_back(h2, k2);
    out.back().canonicalize();
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const long double frac = r - fl;
    if (frac < 1e-15L) break;
    r = 1 / frac;
    if (k2 > mpz_class("1000000000000")) break;
  }
}

}  // namespace detail

/// Rational roots of a squarefree polynomial, each verified exactly. Small
/// end coefficients use the rational root theorem; otherwise candidates come
/// from continued-fraction convergents of the numeric real roots.
inline std::vector<Scalar> rational_roots_squarefree(const Polynomial& p) {
  std::vector<Scalar> roots;
  if (p.degree() == 0) return roots;
  auto add = [&](const Scalar& r) {
    if (std::find(roots.begin(), roots.end(), r) == roots.end() && p(r) == 0) roots.push_back(r);
  };
  if (p.coeff(0) == 0) add(Scalar(0));
  const auto ints = detail::integer_coefficients(p);
  // Rational root theorem when the end coefficients are small.
  std::size_t lo = 0;
  while (lo < ints.size() && ints[lo] == 0) ++lo;
  const mpz_class& a0 = ints[lo];
  const mpz_class& an = ints.back();
  if (::abs(a0) <= 1000000 && ::abs(an) <= 1000000) {
    for (const auto& num : detail::small_divisors(a0))
      for (const auto& den : detail::small_divisors(an)) {
        Scalar r(num, den);
        r.canonicalize();
        add(r);
        add(-r);
      }
  } else {
    for (const auto& z : numeric_roots(p)) {
      if (std::fabs(z.imag()) > 1e-6L * (1 + std::abs(z))) continue;
      std::vector<Scalar> cands;
      detail::continued_fraction_candidates(z.real(), cands);
      for (const auto& c : cands) add(c);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace latticealg
