#include "helpers.hpp"

#include "latticealg/spectra.hpp"

#include <gtest/gtest.h>

using namespace latticealg;
using testutil::fixture;

TEST(Spectrum, ReflectionFixture) {
  const auto alg = fixture("m3-reflection");
  const auto s = spectrum(alg, alg.element("p"));
  EXPECT_EQ(s.char_poly, Polynomial({Scalar(0), Scalar(1), Scalar(0), Scalar(-1)}));
  EXPECT_EQ(s.distinct_rational(), (std::vector<Scalar>{-1, 0, 1}));
  EXPECT_TRUE(s.all_rational());
  EXPECT_EQ(s.factored(), "-λ(λ+1)(λ-1)");
  EXPECT_EQ(s.exact_spectral_radius, Scalar(1));
  EXPECT_TRUE(s.all_real);
  EXPECT_FALSE(s.all_nonnegative);
}

TEST(Spectrum, LinfSumBandProjection) {
  const auto alg = fixture("linf-upper2");
  const auto s = spectrum(alg, alg.element("q"));
  EXPECT_EQ(s.distinct_rational(), (std::vector<Scalar>{0, 1}));
  EXPECT_EQ(s.factored(), "λ^4(λ-1)^2");
}

TEST(Spectrum, DiagonalElement) {
  const auto alg = fixture("upper2");
  const auto s = spectrum(alg, alg.element("diag23"));
  EXPECT_EQ(s.distinct_rational(), (std::vector<Scalar>{2, 3}));
  EXPECT_TRUE(s.all_nonnegative);
  EXPECT_EQ(s.exact_spectral_radius, Scalar(3));
}

TEST(Spectrum, IrrationalRealRoots) {
  // [[1, 1], [1, 0]] acts on M_2 by left multiplication: eigenvalues (1 ± √5)/2.
  const auto alg = fixture("regop2");
  const auto s = spectrum(alg, Element{1, 1, 1, 0});
  EXPECT_FALSE(s.all_rational());
  EXPECT_TRUE(s.all_real);
  EXPECT_FALSE(s.all_nonnegative);
  EXPECT_FALSE(s.exact_spectral_radius);
  const long double phi = (1 + std::sqrt(5.0L)) / 2;
  EXPECT_LE(std::fabs(s.spectral_radius.value - phi), s.spectral_radius.error + 1e-15L);
  for (const auto& r : s.other_roots) {
    EXPECT_TRUE(r.real);
    EXPECT_EQ(r.multiplicity, 2u);
  }
}

TEST(Spectrum, ComplexRoots) {
  const auto alg = fixture("regop2");
  const auto s = spectrum(alg, Element{0, 1, -1, 0});
  EXPECT_FALSE(s.all_real);
  EXPECT_FALSE(s.all_nonnegative);
  EXPECT_NEAR(static_cast<double>(s.spectral_radius.value), 1.0, 1e-12);
  EXPECT_FALSE(s.subset_of({Scalar(1)}));
}

TEST(Spectrum, RequiresIdentity) {
  EXPECT_THROW(spectrum(fixture("noid3"), Element{1, 0, 0}), Inapplicable);
}

TEST(SpectrumProperty, CayleyHamiltonInTheAlgebra) {
  std::mt19937_64 rng(83);
  for (const auto& name : builtin_names()) {
    const auto alg = fixture(name);
    if (!alg.has_identity()) continue;
    for (int t = 0; t < 10; ++t) {
      const auto a = testutil::random_element(rng, alg.dim());
      const auto s = spectrum(alg, a);
      EXPECT_TRUE(evaluate_at(alg, s.char_poly, a).is_zero()) << name;
      // every listed rational root makes a - λe singular
      for (const auto& [r, m] : s.rational_roots) EXPECT_FALSE(inverse(alg, a - r * alg.e())) << name;
    }
  }
}

TEST(BpSpectrum, NilpotentAndReflection) {
  const auto up = fixture("upper2");
  const auto nil = check_bp_spectrum(up, Element{0, 1, 0});
  EXPECT_TRUE(nil.square_zero);
  EXPECT_TRUE(nil.sigma_zero);
  EXPECT_TRUE(nil.ok());
  const auto m3 = fixture("m3-reflection");
  const auto refl = check_bp_spectrum(m3, m3.element("p"));
  EXPECT_FALSE(refl.square_zero);
  EXPECT_TRUE(refl.radius_one);
  EXPECT_TRUE(refl.square_e_norm_one);
  EXPECT_TRUE(refl.ok());
  EXPECT_THROW(check_bp_spectrum(up, Element{1, 1, 0}), std::invalid_argument);
}

TEST(BpSpectrumProperty, GridBandProjections) {
  for (const auto& name : builtin_names()) {
    const auto alg = fixture(name);
    if (!alg.has_identity()) continue;
    const unsigned n = alg.dim() > 4 ? 1 : 2;
    for (const auto& p : search_band_projections(alg, GridSpec::uniform(n)))
      EXPECT_TRUE(check_bp_spectrum(alg, p).ok()) << name;
  }
}

TEST(PositiveSpectrum, ConsistentOnFixtureElements) {
  const auto ck2 = fixture("ck2");
  const auto r = positive_spectrum_center_check(ck2, ck2.element("a"));
  EXPECT_TRUE(r.applicable);
  EXPECT_EQ(r.inverse, (Element{Scalar(1, 2), 3}));
  EXPECT_TRUE(r.in_identity_ideal);
  EXPECT_TRUE(r.spectrum_nonnegative);
  EXPECT_TRUE(r.consistent());

  const auto m3 = fixture("m3-reflection");
  const auto r2 = positive_spectrum_center_check(m3, m3.element("p+2e"));
  EXPECT_FALSE(r2.applicable);
  EXPECT_EQ(r2.reason, "inverse of a is not positive");

  const auto up = fixture("upper2");
  EXPECT_EQ(positive_spectrum_center_check(up, Element{0, 1, 0}).reason, "a is not invertible");
  EXPECT_EQ(positive_spectrum_center_check(up, Element{-1, 0, 1}).reason, "a is not positive");
}

TEST(PositiveSpectrumProperty, RandomPositiveInvertibles) {
  std::mt19937_64 rng(89);
  std::size_t applicable = 0;
  for (const auto& name : builtin_names()) {
    const auto alg = fixture(name);
    if (!alg.has_identity()) continue;
    for (int t = 0; t < 30; ++t) {
      const auto a = testutil::random_positive(rng, alg.dim());
      const auto r = positive_spectrum_center_check(alg, a);
      if (!r.applicable) continue;
      ++applicable;
      EXPECT_TRUE(r.consistent()) << name;
    }
  }
  EXPECT_GT(applicable, 0u);
}

TEST(ShiftedIdempotent, HypothesesAndConclusion) {
  const auto ck2 = fixture("ck2");
  const auto ok = shifted_idempotent_check(ck2, ck2.element("c"), 2);
  ASSERT_TRUE(ok.shifted);
  EXPECT_EQ(*ok.shifted, (Element{0, 1}));
  EXPECT_TRUE(ok.ok());
  EXPECT_EQ(shifted_idempotent_check(ck2, ck2.element("c"), -1).failed_hypothesis, "lambda >= 0");
  EXPECT_EQ(shifted_idempotent_check(ck2, ck2.element("a"), 2).failed_hypothesis,
            "spectrum within {lambda, lambda+1}");
  const auto up = fixture("upper2");
  EXPECT_EQ(shifted_idempotent_check(up, Element{0, 1, 0}, 0).failed_hypothesis, "a invertible");
}

TEST(Spectrum, IdentityAndZero) {
  for (const auto& name : builtin_names()) {
    const auto alg = fixture(name);
    if (!alg.has_identity()) continue;
    const auto se = spectrum(alg, alg.e());
    ASSERT_EQ(se.rational_roots.size(), 1u);
    EXPECT_EQ(se.rational_roots[0], std::make_pair(Scalar(1), static_cast<unsigned>(alg.dim())));
    EXPECT_EQ(spectrum(alg, Element(alg.dim())).distinct_rational(), (std::vector<Scalar>{0}));
  }
  const auto up = fixture("upper2");
  EXPECT_EQ(spectrum(up, up.element("p")).distinct_rational(), (std::vector<Scalar>{0}));
}

TEST(SpectrumProperty, OrderIdempotentsHaveSpectrumZeroOne) {
  for (const auto& name : builtin_names()) {
    const auto alg = fixture(name);
    if (!alg.has_identity()) continue;
    for (const auto& p : enumerate_order_idempotents(alg)) {
      if (p.is_zero() || p == alg.e()) continue;
      EXPECT_EQ(spectrum(alg, p).distinct_rational(), (std::vector<Scalar>{0, 1})) << name;
    }
  }
}

TEST(SpectrumProperty, ScalingAndIdealNorm) {
  std::mt19937_64 rng(97);
  for (const auto& name : builtin_names()) {
    const auto alg = fixture(name);
    if (!alg.has_identity()) continue;
    for (int t = 0; t < 10; ++t) {
      const auto a = testutil::random_element(rng, alg.dim());
      Scalar alpha = testutil::random_rational(rng);
      if (alpha == 0) alpha = 2;
      const auto s = spectrum(alg, a), sa = spectrum(alg, alpha * a);
      ASSERT_EQ(s.all_rational(), sa.all_rational());
      std::vector<Scalar> scaled;
      for (const auto& r : s.distinct_rational()) scaled.push_back(alpha * r);
      std::sort(scaled.begin(), scaled.end());
      EXPECT_EQ(sa.distinct_rational(), scaled) << name;
      // For a ∈ A_e the spectrum is the value set in C(K): ‖a‖_e = r(a).
      const auto ae = identity_ideal(alg, 0).component(a);
      const auto sp = spectrum(alg, ae);
      if (sp.exact_spectral_radius) {
        // components outside A_e contribute eigenvalue 0
        EXPECT_EQ(*e_norm(alg, ae), *sp.exact_spectral_radius) << name;
      }
    }
  }
}

TEST(Spectrum, NumericRootsReconstructCharPoly) {
  const auto alg = fixture("regop2");
  const auto s = spectrum(alg, Element{1, 1, 1, 0});
  std::vector<std::complex<long double>> poly{1};
  auto mul = [&](std::complex<long double> r) {
    std::vector<std::complex<long double>> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= r * poly[i];
    }
    poly = next;
  };
  for (const auto& [r, m] : s.rational_roots)
    for (unsigned k = 0; k < m; ++k) mul(to_long_double(r));
  for (const auto& r : s.other_roots)
    for (unsigned k = 0; k < r.multiplicity; ++k) mul(r.value);
  const auto monic = s.char_poly.monic();
  ASSERT_EQ(poly.size(), monic.coeffs().size());
  for (std::size_t i = 0; i < poly.size(); ++i)
    EXPECT_NEAR(static_cast<double>(poly[i].real()), static_cast<double>(to_long_double(monic.coeff(i))), 1e-9);
}

TEST(PositiveSpectrum, ScalarMultipleAndDiagonal) {
  const auto ck2 = fixture("ck2");
  const auto two_e = positive_spectrum_center_check(ck2, Scalar(2) * ck2.e());
  EXPECT_TRUE(two_e.applicable && two_e.in_identity_ideal && two_e.spectrum_nonnegative);
  const auto b = positive_spectrum_center_check(ck2, ck2.element("b"));
  EXPECT_TRUE(b.applicable && b.in_identity_ideal && b.spectrum_nonnegative);
}

TEST(ShiftedIdempotent, IdentityAndUpperTriangularDiagonal) {
  const auto up = fixture("upper2");
  EXPECT_TRUE(shifted_idempotent_check(up, up.e(), 0).ok());
  const auto r = shifted_idempotent_check(up, up.element("diag23"), 2);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.shifted, up.element("E22"));
}
