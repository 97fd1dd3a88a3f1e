#pragma once

// Inner band projections P_Γ x = ⋁_{(α,β)∈Γ} p_α x p_β built from an
// orthogonal family of left-and-right band projections.
//
// With finitely many indices the supremum is a finite sum: for distinct pairs
// the band projections L_{p_α}R_{p_β} are mutually disjoint, so the sup of
// the positive terms p_α x p_β equals their sum.

#include "latticealg/operators.hpp"
#include "latticealg/projections.hpp"

#include <cstdlib>
#include <random>
#include <set>
#include <stdexcept>

namespace latticealg {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 16;

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Γ ⊆ Λ × Λ.
using GammaSet = std::set<IndexPair>;

/// Orthogonal family {p_λ} ⊆ BP_l(A) ∩ BP_r(A) with p_α p_β = δ_{αβ} p_α.
/// Only obtainable through validate_family.
class ProjectionFamily {
 public:
  const std::vector<Element>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const Element& operator[](std::size_t i) const { return members_[i]; }

 private:
  explicit ProjectionFamily(std::vector<Element> m) : members_(std::move(m)) {}
  std::vector<Element> members_;
  friend struct FamilyCheck validate_family(const Algebra&, std::vector<Element>);
};

struct FamilyCheck {
  std::optional<ProjectionFamily> family;
  std::string violation;
  /// Offending member (first == second) or pair.
  std::optional<IndexPair> witness;
  bool valid() const { return family.has_value(); }
};

inline FamilyCheck validate_family(const Algebra& alg, std::vector<Element> members) {
  FamilyCheck r;
  for (std::size_t i = 0; i < members.size(); ++i) {
    require_dim(alg.dim(), members[i].dim());
    if (!is_left_bp(alg, members[i]) || !is_right_bp(alg, members[i])) {
      r.violation = "member " + std::to_string(i) + " is not in BP_l ∩ BP_r";
      r.witness = IndexPair{i, i};
      return r;
    }
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) {
      const Element prod = alg.multiply(members[i], members[j]);
      const Element expect = i == j ? members[i] : Element(alg.dim());
      if (!(prod == expect)) {
        r.violation = i == j ? "member " + std::to_string(i) + " is not idempotent"
                             : "members " + std::to_string(i) + " and " + std::to_string(j) +
                                   " are not orthogonal";
        r.witness = IndexPair{i, j};
        return r;
      }
    }
  r.family = ProjectionFamily(std::move(members));
  return r;
}

inline void check_gamma(const ProjectionFamily& f, const GammaSet& g) {
  for (auto [a, b] : g)
    if (a >= f.size() || b >= f.size()) throw std::out_of_range("Γ index outside the family");
}

/// Σ_{(α,β)∈Γ} L_{p_α} R_{p_β}, checked to be a band projection and to agree
/// with the coordinatewise supremum on random positive vectors.
inline OperatorMatrix inner_bp(const Algebra& alg, const ProjectionFamily& f, const GammaSet& g,
                               std::size_t samples = 4, std::uint64_t seed = 7) {
  check_gamma(f, g);
  OperatorMatrix m(alg.dim());
  for (auto [a, b] : g) m = m + mult_op(alg, f[a], f[b]);
  if (!is_band_projection_op(m)) throw InvariantFailure("P_Γ is not a band projection");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(0, 30), den(1, 7);
  for (std::size_t s = 0; s < samples; ++s) {
    Element x(alg.dim());
    for (std::size_t i = 0; i < alg.dim(); ++i) x[i] = Scalar(num(rng), den(rng));
    Element best(alg.dim());
    for (auto [a, b] : g) best = sup(best, alg.multiply(alg.multiply(f[a], x), f[b]));
    if (!(best == m.apply(x))) throw InvariantFailure("sup of p_a x p_b differs from their sum");
  }
  return m;
}

inline GammaSet full_gamma(std::size_t n) {
  GammaSet g;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.insert({a, b});
  return g;
}

struct BooleanLawsReport {
  bool meet = false;        // P_Γ P_Δ = P_{Γ∩Δ}
  bool join = false;        // P_Γ + P_Δ - P_{Γ∩Δ} = P_{Γ∪Δ}
  bool complement = false;  // P_{Λ×Λ} - P_Γ = P_{Λ×Λ \ Γ}
  bool ok() const { return meet && join && complement; }
};

inline BooleanLawsReport boolean_laws(const Algebra& alg, const ProjectionFamily& f,
                                      const GammaSet& gamma, const GammaSet& delta) {
  GammaSet both, either, rest;
  std::set_intersection(gamma.begin(), gamma.end(), delta.begin(), delta.end(),
                        std::inserter(both, both.end()));
  std::set_union(gamma.begin(), gamma.end(), delta.begin(), delta.end(),
                 std::inserter(either, either.end()));
  const GammaSet all = full_gamma(f.size());
  std::set_difference(all.begin(), all.end(), gamma.begin(), gamma.end(),
                      std::inserter(rest, rest.end()));
  const auto pg = inner_bp(alg, f, gamma, 0), pd = inner_bp(alg, f, delta, 0);
  const auto pboth = inner_bp(alg, f, both, 0);
  BooleanLawsReport r;
  r.meet = pg * pd == pboth;
  r.join = pg + pd - pboth == inner_bp(alg, f, either, 0);
  r.complement = inner_bp(alg, f, all, 0) - pg == inner_bp(alg, f, rest, 0);
  return r;
}

namespace detail {
inline std::vector<IndexPair> pair_list(std::size_t n) {
  std::vector<IndexPair> v;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) v.push_back({a, b});
  return v;
}
inline void check_cap(std::size_t n, std::size_t cap) {
  if (n * n > cap)
    throw CapExceeded("|Λ|² = " + std::to_string(n * n) + " exceeds enumeration cap " +
                      std::to_string(cap));
}
}  // namespace detail

struct InnerEnumeration {
  /// Distinct inner projections, each with the first Γ (in subset order)
  /// producing it.
  std::vector<std::pair<GammaSet, OperatorMatrix>> projections;
  std::size_t subsets = 0;
  /// Distinct nonzero P_{(α,β)} for single pairs.
  std::vector<std::pair<IndexPair, OperatorMatrix>> generators;
  std::size_t size() const { return projections.size(); }
};

/// All P_Γ over Γ ⊆ Λ×Λ with duplicates merged by exact matrix equality.
inline InnerEnumeration enumerate_inner(const Algebra& alg, const ProjectionFamily& f,
                                        std::size_t cap = kDefaultEnumerationCap) {
  detail::check_cap(f.size(), cap);
  const auto pairs = detail::pair_list(f.size());
  std::vector<OperatorMatrix> single;
  InnerEnumeration out;
  for (const auto& pr : pairs) {
    single.push_back(mult_op(alg, f[pr.first], f[pr.second]));
    const auto& m = single.back();
    if (m.is_zero()) continue;
    bool seen = false;
    for (const auto& g : out.generators) seen |= g.second == m;
    if (!seen) out.generators.push_back({pr, m});
  }
  out.subsets = std::size_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < out.subsets; ++mask) {
    OperatorMatrix m(alg.dim());
    GammaSet g;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) {
        m = m + single[i];
        g.insert(pairs[i]);
      }
    bool seen = false;
    for (const auto& p : out.projections)
      if (p.second == m) {
        seen = true;
        break;
      }
    if (!seen) out.projections.push_back({std::move(g), std::move(m)});
  }
  return out;
}

/// A Γ with P_Γ = M, or nullopt when M is not inner for this family.
inline std::optional<GammaSet> is_inner(const Algebra& alg, const ProjectionFamily& f,
                                        const OperatorMatrix& m,
                                        std::size_t cap = kDefaultEnumerationCap) {
  if (!is_band_projection_op(m)) throw std::invalid_argument("is_inner: not a band projection");
  detail::check_cap(f.size(), cap);
  const auto pairs = detail::pair_list(f.size());
  std::vector<OperatorMatrix> single;
  for (const auto& pr : pairs) single.push_back(mult_op(alg, f[pr.first], f[pr.second]));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    OperatorMatrix sum(alg.dim());
    GammaSet g;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) {
        sum = sum + single[i];
        g.insert(pairs[i]);
      }
    if (sum == m) return g;
  }
  return std::nullopt;
}

/// Maximal orthogonal families drawn from the nonzero BP_l ∩ BP_r members of
/// `pool`, largest first, ties broken by pool order. Pools of at most 16
/// usable members are searched exhaustively; larger pools greedily.
inline std::vector<ProjectionFamily> find_families(const Algebra& alg,
                                                   const std::vector<Element>& pool) {
  std::vector<Element> usable;
  for (const auto& x : pool) {
    if (x.is_zero()) continue;
    if (std::find(usable.begin(), usable.end(), x) != usable.end()) continue;
    if (is_left_bp(alg, x) && is_right_bp(alg, x) && alg.multiply(x, x) == x) usable.push_back(x);
  }
  std::vector<ProjectionFamily> out;
  const std::size_t n = usable.size();
  auto orthogonal = [&](std::size_t i, std::size_t j) {
    return alg.multiply(usable[i], usable[j]).is_zero() &&
           alg.multiply(usable[j], usable[i]).is_zero();
  };
  auto build = [&](const std::vector<std::size_t>& idx) {
    std::vector<Element> m;
    for (auto i : idx) m.push_back(usable[i]);
    auto check = validate_family(alg, std::move(m));
    return std::move(*check.family);
  };
  if (n == 0) {
    out.push_back(*validate_family(alg, {}).family);
    return out;
  }
  if (n > 16) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = true;
      for (auto j : chosen) ok &= orthogonal(i, j);
      if (ok) chosen.push_back(i);
    }
    out.push_back(build(chosen));
    return out;
  }
  std::vector<std::uint32_t> valid;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1)) ok = orthogonal(i, j);
    if (ok) valid.push_back(mask);
  }
  std::vector<std::uint32_t> maximal;
  for (auto m : valid) {
    bool is_max = true;
    for (auto o : valid)
      if (o != m && (o & m) == m) {
        is_max = false;
        break;
      }
    if (is_max) maximal.push_back(m);
  }
  auto indices = [&](std::uint32_t m) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) v.push_back(i);
    return v;
  };
  std::sort(maximal.begin(), maximal.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto ia = indices(a), ib = indices(b);
    if (ia.size() != ib.size()) return ia.size() > ib.size();
    return ia < ib;
  });
  for (auto m : maximal) out.push_back(build(indices(m)));
  return out;
}

}  // namespace latticealg
