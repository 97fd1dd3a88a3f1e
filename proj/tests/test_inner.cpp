#include "helpers.hpp"

#include "latticealg/cli.hpp"
#include "latticealg/inner.hpp"

#include <gtest/gtest.h>

using namespace latticealg;
using testutil::fixture;

namespace {

ProjectionFamily family_of(const Algebra& alg, std::vector<Element> members) {
  auto check = validate_family(alg, std::move(members));
  EXPECT_TRUE(check.valid()) << check.violation;
  return *check.family;
}

std::vector<GammaSet> all_gammas(std::size_t n) {
  std::vector<IndexPair> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) pairs.push_back({a, b});
  std::vector<GammaSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    GammaSet g;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) g.insert(pairs[i]);
    out.push_back(g);
  }
  return out;
}

}  // namespace

TEST(Noid3, InnerProjectionsAndNonInnerWitness) {
  const auto alg = fixture("noid3");
  const auto fam = family_of(alg, {alg.element("p1"), alg.element("p2")});
  const auto en = enumerate_inner(alg, fam);
  ASSERT_EQ(en.size(), 4u);
  EXPECT_EQ(en.subsets, 16u);
  const std::vector<OperatorMatrix> expect{
      OperatorMatrix(3), OperatorMatrix::diagonal({1, 0, 0}), OperatorMatrix::diagonal({0, 1, 0}),
      OperatorMatrix::diagonal({1, 1, 0})};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(en.projections[i].second, expect[i]);

  const OperatorMatrix z(alg.operators.at("z-projection"));
  EXPECT_TRUE(is_band_projection_op(z));
  EXPECT_FALSE(is_inner(alg, fam, z));
  for (const char* name : {"x-projection", "y-projection", "xy-projection"})
    EXPECT_TRUE(is_inner(alg, fam, OperatorMatrix(alg.operators.at(name)))) << name;
}

TEST(Noid3, FamilySearchFindsBothProjections) {
  const auto alg = fixture("noid3");
  std::vector<Element> pool;
  for (const auto& [n, x] : alg.elements) pool.push_back(x);
  const auto fams = find_families(alg, pool);
  ASSERT_FALSE(fams.empty());
  EXPECT_EQ(fams.front().size(), 2u);
  // p1 + p2 alone is also maximal
  EXPECT_EQ(fams.size(), 2u);
}

TEST(RegularOperators, SixteenInnerProjections) {
  const auto alg = fixture("regop2");
  const auto fam = family_of(alg, {alg.element("P1"), alg.element("P2")});
  const auto en = enumerate_inner(alg, fam);
  EXPECT_EQ(en.size(), 16u);
  EXPECT_EQ(en.generators.size(), 4u);
  // every diagonal band projection of M_2 is inner here
  for (std::size_t mask = 0; mask < 16; ++mask) {
    std::vector<Scalar> d(4);
    for (std::size_t i = 0; i < 4; ++i) d[i] = mask >> i & 1;
    EXPECT_TRUE(is_inner(alg, fam, OperatorMatrix::diagonal(d)));
  }
}

TEST(InnerProperty, BooleanLawsForAllGammaPairs) {
  for (const char* name : {"noid3", "regop2"}) {
    const auto alg = fixture(name);
    std::vector<Element> pool;
    for (const auto& [n, x] : alg.elements) pool.push_back(x);
    const auto fam = find_families(alg, pool).front();
    ASSERT_EQ(fam.size(), 2u);
    const auto gammas = all_gammas(fam.size());
    for (const auto& g : gammas)
      for (const auto& d : gammas) EXPECT_TRUE(boolean_laws(alg, fam, g, d).ok()) << name;
  }
}

TEST(InnerProperty, SupEqualsSumOnRandomVectors) {
  const auto alg = fixture("regop2");
  const auto fam = family_of(alg, {alg.element("P1"), alg.element("P2")});
  for (const auto& g : all_gammas(2)) EXPECT_NO_THROW(inner_bp(alg, fam, g, 8, 13));
}

TEST(Family, InvalidMembersHaveWitnesses) {
  const auto alg = fixture("upper2");
  // E12 is not a left band projection
  auto bad = validate_family(alg, {alg.element("E11"), alg.element("E12")});
  EXPECT_FALSE(bad.valid());
  EXPECT_EQ(bad.witness, (IndexPair{1, 1}));
  // E11 twice is not orthogonal
  auto dup = validate_family(alg, {alg.element("E11"), alg.element("E11")});
  EXPECT_FALSE(dup.valid());
  EXPECT_EQ(dup.witness, (IndexPair{0, 1}));
}

TEST(Inner, CapAndRangeGuards) {
  const auto alg = fixture("ck3");
  const auto fam = family_of(alg, {alg.element("t0"), alg.element("t1"), alg.element("t2")});
  EXPECT_THROW(enumerate_inner(alg, fam, 8), CapExceeded);
  EXPECT_EQ(enumerate_inner(alg, fam, 9).size(), 8u);
  EXPECT_THROW(inner_bp(alg, fam, {{0, 3}}), std::out_of_range);
  EXPECT_THROW(is_inner(alg, fam, OperatorMatrix::identity(3) * OperatorMatrix::identity(3) +
                                       OperatorMatrix::identity(3)),
               std::invalid_argument);
}

TEST(Inner, EmptyPoolGivesEmptyFamily) {
  const auto alg = fixture("upper2");
  const auto fams = find_families(alg, {Element{0, 1, 0}});
  ASSERT_EQ(fams.size(), 1u);
  EXPECT_EQ(fams.front().size(), 0u);
  EXPECT_EQ(enumerate_inner(alg, fams.front()).size(), 1u);
}

TEST(Gamma, Parsing) {
  using cli::parse_gamma;
  EXPECT_EQ(parse_gamma("(0,1),(1,1)"), (GammaSet{{0, 1}, {1, 1}}));
  EXPECT_EQ(parse_gamma(" { (0, 0) } "), (GammaSet{{0, 0}}));
  EXPECT_TRUE(parse_gamma("").empty());
  EXPECT_THROW(parse_gamma("(0,1)x(1,1)"), InputError);
  EXPECT_THROW(parse_gamma("(0,1"), InputError);
}
