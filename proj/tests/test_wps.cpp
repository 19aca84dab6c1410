#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wfci/wps.hpp"

using namespace wfci;

TEST(WeightVector, Validation) {
  EXPECT_THROW(WeightVector({1}), InvalidInput);
  EXPECT_THROW(WeightVector({0, 1}), InvalidInput);
  EXPECT_THROW(WeightVector({1, kMaxWeight + 1}), InvalidInput);
  WeightVector w({3, 1, 2});
  EXPECT_EQ(w.sorted(), WeightVector({1, 2, 3}));
  EXPECT_EQ(to_string(w), "(3,1,2)");
}

TEST(Normalize, KnownPoints) {
  EXPECT_EQ(normalize(WeightVector({1, 2, 2})).output, WeightVector({1, 1, 1}));
  EXPECT_EQ(normalize(WeightVector({2, 4, 6})).output, WeightVector({1, 2, 3}));
  EXPECT_EQ(normalize(WeightVector({2, 2, 3})).output, WeightVector({1, 1, 3}));
  EXPECT_EQ(normalize(WeightVector({1, 2, 3})).output, WeightVector({1, 2, 3}));
  EXPECT_TRUE(is_well_formed(WeightVector({1, 2, 3})));
  EXPECT_FALSE(is_well_formed(WeightVector({1, 2, 2})));
}

TEST(Normalize, AgreesWithIterativeReduction) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t len = 2 + rng() % 5;
    std::vector<Weight> a;
    for (std::size_t i = 0; i < len; ++i) a.push_back(1 + static_cast<Weight>(rng() % 60));
    const auto trace = normalize(WeightVector(a));
    EXPECT_EQ(trace.output.values(), oracle::iterative_normalize(a)) << to_string(WeightVector(a));
    EXPECT_TRUE(is_well_formed(trace.output));
    // Idempotent on its own output.
    EXPECT_EQ(normalize(trace.output).output, trace.output);
  }
}

TEST(SingularStrata, QuadricCone) {
  auto s = singular_strata(WeightVector({1, 1, 2, 2}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].indices, (IndexSet{2, 3}));
  EXPECT_EQ(s[0].stratum_gcd, 2);
  EXPECT_TRUE(singular_strata(WeightVector({1, 1, 1})).empty());
  EXPECT_THROW(singular_strata(WeightVector({2, 2, 3})), PreconditionViolation);
}

TEST(SingularStrata, AgreesWithSubsetScan) {
  std::mt19937_64 rng(19);
  int done = 0;
  while (done < 2000) {
    const std::size_t len = 2 + rng() % 5;
    std::vector<Weight> a;
    for (std::size_t i = 0; i < len; ++i) a.push_back(1 + static_cast<Weight>(rng() % 40));
    if (!is_well_formed(WeightVector(a))) continue;
    ++done;
    std::set<IndexSet> got;
    for (const auto& s : singular_strata(WeightVector(a))) {
      got.insert(s.indices);
      EXPECT_EQ(s.stratum_gcd, oracle::gcd_of(a, s.indices));
    }
    EXPECT_EQ(got, oracle::brute_singular_strata(a));
  }
}

TEST(CanonicalDegree, IsMinusWeightSum) { EXPECT_EQ(canonical_degree(WeightVector({1, 2, 3, 4})), -10); }

// Every invariant y_i = x_i h^{-a_i} has degree 0, and prod y_i^{b_i} = 1.
static void check_chart(const WeightVector& w, const ChartDescription& c) {
  auto coords = chart_coordinates(w, c);
  Integer deg_h = 0;
  for (std::size_t i = 0; i < w.size(); ++i) deg_h += coords.semi_invariant[i] * w[i];
  EXPECT_EQ(deg_h, 1);
  std::vector<Integer> product(w.size(), Integer(0));
  for (std::size_t k = 0; k < c.chart_subset.size(); ++k) {
    const auto i = c.chart_subset[k];
    Integer deg_y = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      deg_y += coords.invariants[i][j] * w[j];
      product[j] += c.bezout_coefficients[k] * coords.invariants[i][j];
    }
    EXPECT_EQ(deg_y, 0);
  }
  for (const auto& e : product) EXPECT_EQ(e, 0);
  const auto& m = c.exponent_matrix.matrix();
  EXPECT_EQ(m.row(0), c.bezout_coefficients);
  const Integer det = determinant(m);
  EXPECT_TRUE(det == 1 || det == -1);
  EXPECT_EQ(c.torus_rank + c.affine_rank, w.n());
}

TEST(TorusChart, ProductRelation) {
  std::mt19937_64 rng(23);
  int done = 0;
  while (done < 1000) {
    const std::size_t len = 2 + rng() % 5;
    std::vector<Weight> a;
    for (std::size_t i = 0; i < len; ++i) a.push_back(1 + static_cast<Weight>(rng() % 30));
    WeightVector w(a);
    IndexSet subset;
    for (std::size_t i = 0; i < len; ++i)
      if (rng() % 2) subset.push_back(i);
    if (subset.empty() || w.gcd_over(subset) != 1) continue;
    ++done;
    check_chart(w, torus_chart(w, subset));
  }
}

TEST(TorusChart, Errors) {
  WeightVector w({2, 4, 3});
  EXPECT_THROW(torus_chart(w, {}), InvalidInput);
  EXPECT_THROW(torus_chart(w, {0, 0}), InvalidInput);
  EXPECT_THROW(torus_chart(w, {5}), InvalidInput);
  EXPECT_THROW(torus_chart(w, {0, 1}), PreconditionViolation);
}

TEST(WpsCylinder, PolarDivisorIsAnticanonical) {
  for (auto a : std::vector<std::vector<Weight>>{{1, 1, 1}, {1, 2, 3}, {2, 3, 5, 7}, {6, 10, 15}, {2, 4, 6}}) {
    auto c = wps_cylinder(WeightVector(a));
    const auto& b = c.normalization.output;
    Rational total = 0;
    for (const auto& p : c.polar) {
      EXPECT_GT(p.multiplicity, 0);
      total += p.multiplicity * b[p.index];
    }
    EXPECT_EQ(total, Rational(b.sum()));
    EXPECT_GE(c.chart.affine_rank, 1u);
    check_chart(b, c.chart);
  }
}

TEST(WpsCylinder, WeightOneGivesAffineChart) {
  auto c = wps_cylinder(WeightVector({1, 7, 12, 18}));
  EXPECT_EQ(c.chart.chart_subset, (IndexSet{0}));
  EXPECT_EQ(c.chart.torus_rank, 0u);
  EXPECT_EQ(c.chart.affine_rank, 3u);
}
