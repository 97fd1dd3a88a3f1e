#include "helpers.hpp"

#include "latticealg/polynomial.hpp"

#include <gtest/gtest.h>

using namespace latticealg;

namespace {

Polynomial from_roots(const std::vector<Scalar>& roots) {
  Polynomial p({Scalar(1)});
  for (const auto& r : roots) p = p * Polynomial::linear_root(r);
  return p;
}

Polynomial random_poly(std::mt19937_64& rng, std::size_t deg) {
  std::vector<Scalar> c(deg + 1);
  for (auto& x : c) x = testutil::random_rational(rng);
  if (c.back() == 0) c.back() = 1;
  return Polynomial(c);
}

}  // namespace

TEST(Polynomial, ArithmeticAndDisplay) {
  const Polynomial p({Scalar(-1), Scalar(0), Scalar(1)});  // x^2 - 1
  EXPECT_EQ(p.to_string("λ"), "λ^2 - 1");
  EXPECT_EQ((p * p).degree(), 4u);
  EXPECT_EQ(p.derivative().to_string(), "2x");
  EXPECT_EQ(Polynomial().to_string(), "0");
  EXPECT_EQ(p(Scalar(3)), 8);
}

TEST(PolynomialProperty, DivisionIdentity) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_poly(rng, t % 7), b = random_poly(rng, 1 + t % 4);
    const auto [q, r] = Polynomial::divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_TRUE(r.is_zero() || r.degree() < b.degree());
  }
}

TEST(PolynomialProperty, GcdOfProductsWithSharedRoots) {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 50; ++t) {
    const Scalar shared = testutil::random_rational(rng);
    Scalar other_a = testutil::random_rational(rng), other_b = testutil::random_rational(rng);
    if (other_a == shared || other_b == shared || other_a == other_b) continue;
    const auto g = Polynomial::gcd(from_roots({shared, other_a}), from_roots({shared, other_b}));
    EXPECT_EQ(g, Polynomial::linear_root(shared));
  }
}

TEST(CharPoly, MatchesDeterminantOracle) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + t % 6;
    const auto m = testutil::random_operator(rng, n).matrix();
    const auto cp = char_poly(m);
    EXPECT_EQ(cp.degree(), n);
    for (int k = 0; k < 4; ++k) {
      const Scalar lambda = testutil::random_rational(rng);
      Matrix shifted = m;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
      EXPECT_EQ(cp(lambda), testutil::determinant(shifted));
    }
    EXPECT_EQ(char_poly_monic(m).leading(), 1);
  }
}

TEST(Sturm, CountsRealRoots) {
  EXPECT_EQ(count_real_roots(Polynomial({Scalar(-2), Scalar(0), Scalar(1)})), 2u);
  EXPECT_EQ(count_real_roots(Polynomial({Scalar(1), Scalar(0), Scalar(1)})), 0u);
  const auto p = from_roots({1, 2, 3});
  EXPECT_EQ(count_real_roots_below(p, 2), 1u);
  EXPECT_EQ(count_real_roots_below(p, Scalar(5, 2)), 2u);
  EXPECT_EQ(count_real_roots_below(p, 0), 0u);
}

TEST(SturmProperty, RandomRealRootedProducts) {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 60; ++t) {
    std::vector<Scalar> roots;
    for (int k = 0; k < 1 + t % 5; ++k) {
      const Scalar r = testutil::random_rational(rng);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    // times (x^2 + 1), which has no real roots
    const auto p = from_roots(roots) * Polynomial({Scalar(1), Scalar(0), Scalar(1)});
    EXPECT_EQ(count_real_roots(p), roots.size());
    const std::size_t negatives =
        std::count_if(roots.begin(), roots.end(), [](const Scalar& r) { return r < 0; });
    EXPECT_EQ(count_real_roots_below(p, 0), negatives);
    auto found = rational_roots_squarefree(p);
    std::sort(roots.begin(), roots.end());
    EXPECT_EQ(found, roots);
  }
}

TEST(Squarefree, YunFactorization) {
  const auto p = from_roots({1, 1, -2, -2, -2, 5});
  const auto f = squarefree_factors(Scalar(3) * p);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], std::make_pair(Polynomial::linear_root(5), 1u));
  EXPECT_EQ(f[1], std::make_pair(Polynomial::linear_root(1), 2u));
  EXPECT_EQ(f[2], std::make_pair(Polynomial::linear_root(-2), 3u));
}

TEST(NumericRoots, InclusionRadiusContainsTrueRoot) {
  const Polynomial p({Scalar(-2), Scalar(0), Scalar(1)});
  for (const auto& z : numeric_roots(p)) {
    const long double truth = z.real() > 0 ? std::sqrt(2.0L) : -std::sqrt(2.0L);
    EXPECT_LE(std::abs(z - std::complex<long double>(truth, 0)), inclusion_radius(p, z));
    EXPECT_LT(inclusion_radius(p, z), 1e-12L);
  }
}

TEST(NumericRootsProperty, ResidualsAreSmall) {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 40; ++t) {
    const auto p = random_poly(rng, 2 + t % 5);
    const auto sf = squarefree_factors(p);
    for (const auto& [f, m] : sf)
      for (const auto& z : numeric_roots(f)) EXPECT_LT(inclusion_radius(f, z), 1e-6L);
  }
}

TEST(RationalRoots, LargeCoefficientPath) {
  // End coefficients beyond the rational-root-theorem limit.
  const Scalar r1(1234567, 1000003), r2(-7654321, 99991);
  const auto p = from_roots({r1, r2}) * Polynomial({Scalar(3), Scalar(0), Scalar(1)});
  EXPECT_EQ(rational_roots_squarefree(p), (std::vector<Scalar>{r2, r1}));
}
