#include <map>
#include <set>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wfci/cylinder.hpp"

using namespace wfci;

namespace {

const Dataset& data() {
  static const Dataset ds = Dataset::embedded();
  return ds;
}

GradedPolynomial poly(const WeightVector& w, Weight d, const std::vector<std::pair<std::vector<Exponent>, long long>>& terms) {
  GradedPolynomial p(w, d);
  for (const auto& [e, c] : terms) p.add_term(Monomial{e}, Coefficient(c));
  return p;
}

void expect_normal(const GradedPolynomial& input, const NormalFormResult& r) {
  const auto& w = input.ambient();
  const auto cross = Monomial::variable(w.size(), r.pivot) * Monomial::variable(w.size(), r.linear);
  EXPECT_EQ(r.result.coefficient(cross), Coefficient(1));
  EXPECT_FALSE(r.g.involves(r.pivot));
  EXPECT_FALSE(r.g.involves(r.linear));
  GradedPolynomial expected = r.g;
  expected.add_term(cross, Coefficient(1));
  EXPECT_EQ(r.result, expected);
  EXPECT_EQ(replay(input, r.change_sequence), r.result);
}

// Some pivot set admits distinct partners iff, for every weight value,
// the slots asking for it do not outnumber the free indices carrying it.
bool codimc_exists(const std::vector<Weight>& w, const std::vector<Weight>& d) {
  const std::size_t c = d.size();
  bool found = false;
  for (const auto& pivots : oracle::all_subsets(w.size())) {
    if (pivots.size() != c) continue;
    std::map<Weight, long> need, have;
    for (auto p : pivots)
      for (auto dj : d) ++need[dj - w[p]];
    for (std::size_t k = 0; k < w.size(); ++k)
      if (std::find(pivots.begin(), pivots.end(), k) == pivots.end()) ++have[w[k]];
    bool ok = true;
    for (const auto& [v, cnt] : need) ok = ok && have[v] >= cnt;
    found = found || ok;
  }
  return found;
}

bool codim2_exists(const std::vector<Weight>& w, Weight d1, Weight d2) {
  const std::size_t len = w.size();
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; j < len; ++j)
      for (std::size_t i1 = 0; i1 < len; ++i1)
        for (std::size_t j1 = 0; j1 < len; ++j1)
          for (std::size_t i2 = 0; i2 < len; ++i2)
            for (std::size_t j2 = 0; j2 < len; ++j2) {
              if (w[i] + w[i1] != d1 || w[j] + w[j1] != d1 || w[i] + w[i2] != d2 || w[j] + w[j2] != d2) continue;
              if (std::set<std::size_t>{i, j, i1, j1, i2, j2}.size() == 6) return true;
            }
  return false;
}

}  // namespace

TEST(SumOfTwoWeights, PairScan) {
  EXPECT_EQ(check_sum_of_two_weights(WciDescriptor({1, 1, 1, 1, 1}, {2})), (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_FALSE(check_sum_of_two_weights(WciDescriptor({1, 7, 12, 18}, {36})));
  EXPECT_EQ(check_sum_of_two_weights(WciDescriptor({1, 1, 2, 3}, {4})), (std::pair<std::size_t, std::size_t>{0, 3}));
  EXPECT_FALSE(check_sum_of_two_weights(WciDescriptor({1, 1, 1}, {2})));
  EXPECT_THROW(check_sum_of_two_weights(WciDescriptor({1, 1, 1, 1, 1}, {2, 2})), InvalidInput);
}

TEST(NormalForm, AlreadyNormal) {
  WeightVector w({1, 1, 1});
  auto f = poly(w, 2, {{{1, 1, 0}, 1}, {{0, 0, 2}, 1}});
  auto r = normal_form(f, 0, 1);
  EXPECT_TRUE(r.change_sequence.empty());
  EXPECT_EQ(r.result, f);
  EXPECT_FALSE(r.extension_used);
  expect_normal(f, r);
}

TEST(NormalForm, ConicNeedsSquareRootOfMinusOne) {
  WeightVector w({1, 1, 1});
  auto f = poly(w, 2, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}});
  auto r = normal_form(f, 0, 1);
  ASSERT_TRUE(r.extension_used);
  EXPECT_EQ(*r.extension_used, -1);
  EXPECT_EQ(r.g, poly(w, 2, {{{0, 0, 2}, 1}}));
  expect_normal(f, r);
}

TEST(NormalForm, UnequalWeightsEliminateBothSides) {
  WeightVector w({1, 1, 2, 2});
  auto f = poly(w, 4, {{{0, 0, 1, 1}, 1}, {{2, 0, 0, 1}, 1}, {{0, 4, 0, 0}, 1}});
  auto r = normal_form(f, 2, 3);
  EXPECT_EQ(r.g, poly(w, 4, {{{0, 4, 0, 0}, 1}}));
  expect_normal(f, r);
}

TEST(NormalForm, EnablingSubstitution) {
  // No x0*x1 term; a change of variables has to create one.
  WeightVector w({1, 1, 1, 1});
  auto f = poly(w, 2, {{{2, 0, 0, 0}, 1}, {{0, 1, 1, 0}, 1}, {{0, 0, 1, 1}, 1}});
  auto r = normal_form(f, 0, 1);
  EXPECT_FALSE(r.change_sequence.empty());
  expect_normal(f, r);
}

TEST(NormalForm, Errors) {
  WeightVector w({1, 1, 2});
  auto f = poly(w, 2, {{{0, 0, 1}, 1}});
  try {
    normal_form(f, 0, 1);
    FAIL();
  } catch (const PreconditionViolation& e) {
    EXPECT_EQ(e.tag(), "cross-term-absent");
    EXPECT_STREQ(e.what(), "cross term absent: proof hypothesis violated");
  }
  EXPECT_THROW(normal_form(poly(w, 2, {{{2, 0, 0}, 1}}), 0, 2), PreconditionViolation);
  EXPECT_THROW(normal_form(poly(w, 2, {{{2, 0, 0}, 1}}), 0, 0), InvalidInput);
}

TEST(NormalForm, SeededGenericMembers) {
  std::mt19937_64 rng(47);
  int done = 0;
  while (done < 60) {
    const std::size_t len = 3 + rng() % 4;
    std::vector<Weight> a;
    for (std::size_t i = 0; i < len; ++i) a.push_back(1 + static_cast<Weight>(rng() % 6));
    WeightVector w(a);
    const std::size_t i = rng() % len;
    std::size_t j = rng() % len;
    if (i == j) continue;
    auto f = generic_member(w, a[i] + a[j], rng());
    ++done;
    expect_normal(f, normal_form(f, i, j));
  }
}

TEST(CylinderChart, QuadricSurfaceAndThreefold) {
  WciDescriptor surface({1, 1, 1, 1}, {2});
  auto c = cylinder_chart(surface, 0, 1);
  EXPECT_EQ(c.projected_ambient, WeightVector({1, 1, 1}));
  EXPECT_EQ(c.chart.torus_rank, 0u);
  EXPECT_EQ(c.chart.affine_rank, 2u);
  WciDescriptor threefold({1, 1, 1, 1, 1}, {2});
  auto t = cylinder_chart(threefold, 0, 1);
  EXPECT_EQ(t.chart.affine_rank, 3u);
  Rational total = 0;
  for (const auto& p : t.polar) total += p.multiplicity * threefold.ambient()[p.index];
  EXPECT_EQ(total, Rational(t.anticanonical_degree));
  EXPECT_EQ(t.anticanonical_degree, 3);
}

TEST(CylinderChart, ProjectsAwayTheLinearVariable) {
  WciDescriptor x({1, 1, 2, 3}, {4});
  auto c = cylinder_chart(x, 0, 3);
  EXPECT_EQ(c.projected_away, 3u);
  EXPECT_EQ(c.projected_ambient, WeightVector({1, 1, 2}));
  EXPECT_EQ(c.original_index, (std::vector<std::size_t>{0, 1, 2}));
  for (auto k : c.chart_subset_original) EXPECT_NE(k, 3u);
}

TEST(Codim2Projection, Examples) {
  WciDescriptor x({1, 1, 2, 2, 3, 3, 1}, {4, 3});
  auto cert = check_codim2_projection(x);
  ASSERT_TRUE(cert);
  EXPECT_EQ((std::vector<std::size_t>{cert->i, cert->j, cert->i1, cert->j1, cert->i2, cert->j2}),
            (std::vector<std::size_t>{0, 1, 4, 5, 2, 3}));
  EXPECT_EQ(cert->cylinder_dimension, 1u);
  EXPECT_TRUE(recheck(x, *cert, data()));
  const WciDescriptor seven({1, 2, 3, 4, 5, 6, 7}, {6, 8});
  auto w7 = check_codim2_projection(seven);
  ASSERT_TRUE(w7);
  EXPECT_EQ((std::vector<std::size_t>{w7->i, w7->j, w7->i1, w7->j1, w7->i2, w7->j2}),
            (std::vector<std::size_t>{0, 1, 4, 3, 6, 5}));
  EXPECT_FALSE(check_codim2_projection(WciDescriptor({1, 1, 2, 2, 3, 3}, {4, 3})));
}

TEST(Codim2Projection, AgreesWithBruteForce) {
  std::mt19937_64 rng(53);
  int found = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t len = 7 + rng() % 2;
    std::vector<Weight> a;
    for (std::size_t i = 0; i < len; ++i) a.push_back(1 + static_cast<Weight>(rng() % 4));
    const Weight d1 = 2 + static_cast<Weight>(rng() % 6);
    const Weight d2 = 2 + static_cast<Weight>(rng() % 6);
    WciDescriptor x(a, {d1, d2});
    auto cert = check_codim2_projection(x);
    ASSERT_EQ(cert.has_value(), codim2_exists(a, d1, d2)) << to_string(x);
    if (cert) {
      ++found;
      EXPECT_TRUE(recheck(x, *cert, data()));
    }
  }
  EXPECT_GT(found, 10);
}

TEST(CodimCGeneralized, Golden) {
  WciDescriptor x({1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5}, {5, 6, 7});
  const bool want = codimc_exists(x.ambient().values(), x.degrees());
  auto a = check_codimc_generalized(x);
  ASSERT_EQ(a.has_value(), want);
  ASSERT_TRUE(want);
  EXPECT_TRUE(recheck(x, CodimCGeneralizedCert{*a, 1}, data()));
  EXPECT_FALSE(check_codimc_generalized(WciDescriptor({1, 1, 1, 1, 1}, {2, 2})));
}

TEST(CodimCGeneralized, AgreesWithCountingOracle) {
  std::mt19937_64 rng(59);
  int found = 0;
  for (int t = 0; t < 600; ++t) {
    const std::size_t c = 1 + rng() % 3;
    const std::size_t len = c * (c + 1) + 1 + rng() % 2;
    std::vector<Weight> a, d;
    for (std::size_t i = 0; i < len; ++i) a.push_back(1 + static_cast<Weight>(rng() % 3));
    for (std::size_t j = 0; j < c; ++j) d.push_back(2 + static_cast<Weight>(rng() % 4));
    WciDescriptor x(a, d);
    auto got = check_codimc_generalized(x);
    const bool gated = c == 1 && x.n() < 3;
    ASSERT_EQ(got.has_value(), !gated && codimc_exists(a, d)) << to_string(x);
    if (got) {
      ++found;
      EXPECT_TRUE(recheck(x, CodimCGeneralizedCert{*got, x.n() + 1 - c * (c + 1)}, data()));
    }
  }
  EXPECT_GT(found, 30);
}

TEST(Recheck, RejectsTamperedCertificates) {
  WciDescriptor x({1, 1, 1, 1, 1}, {2});
  auto v = verdict(x, data());
  ASSERT_TRUE(v.certificate);
  EXPECT_TRUE(recheck(x, *v.certificate, data()));
  auto bad = std::get<SumOfTwoWeightsCert>(*v.certificate);
  bad.j = bad.i;
  EXPECT_FALSE(recheck(x, bad, data()));
  EXPECT_FALSE(recheck(WciDescriptor({1, 1, 1, 1, 2}, {2}), TableNonCylCert{{TableId::T1, 4, 2}}, data()));
}

TEST(Nonexistence, TableCertificates) {
  auto c = check_nonexistence(WciDescriptor({1, 7, 12, 18}, {36}), data());
  ASSERT_TRUE(c);
  ASSERT_TRUE(std::holds_alternative<TableNonCylCert>(*c));
  EXPECT_EQ(std::get<TableNonCylCert>(*c).match.n, 2);
  auto alpha = check_nonexistence(WciDescriptor({1, 2, 2, 3, 3}, {4, 6}), data());
  ASSERT_TRUE(alpha);
  EXPECT_EQ(certificate_kind(*alpha), "AlphaAtLeastOne");
  EXPECT_FALSE(check_nonexistence(WciDescriptor({1, 1, 2, 2, 3}, {4, 4}), data()));
  EXPECT_FALSE(check_nonexistence(WciDescriptor({1, 2, 3, 4, 5}, {6, 8}), data()));
  EXPECT_FALSE(check_nonexistence(WciDescriptor({1, 1, 1, 1}, {3}), data()));
}

TEST(Verdict, KnownPoints) {
  auto quadric = verdict(WciDescriptor({1, 1, 1, 1, 1}, {2}), data());
  EXPECT_EQ(quadric.status, CylinderStatus::Cylindrical);
  EXPECT_EQ(certificate_kind(*quadric.certificate), "SumOfTwoWeights");

  auto family4 = verdict(data().instantiate(TableId::T1, 4, 3), data());
  EXPECT_EQ(family4.status, CylinderStatus::NotCylindrical);
  EXPECT_EQ(certificate_kind(*family4.certificate), "TableNonCyl");

  auto t3 = verdict(WciDescriptor({1, 1, 2, 2, 3}, {4, 4}), data());
  EXPECT_EQ(t3.status, CylinderStatus::Unknown);
  EXPECT_FALSE(t3.notes.empty());

  auto cubic = verdict(WciDescriptor({1, 1, 1, 1}, {3}), data());
  EXPECT_EQ(cubic.status, CylinderStatus::Unknown);
  EXPECT_EQ(cubic.conjectural_prediction, false);

  auto cone = verdict(WciDescriptor({1, 1, 2, 3}, {3}), data());
  EXPECT_EQ(cone.status, CylinderStatus::Cylindrical);
  EXPECT_EQ(certificate_kind(*cone.certificate), "LinearCone");

  auto wps = verdict(WeightVector({2, 4, 6}));
  EXPECT_EQ(wps.status, CylinderStatus::Cylindrical);
  EXPECT_EQ(certificate_kind(*wps.certificate), "WpsChart");
}

TEST(Verdict, CertificatesRecheck) {
  for (const auto& r : data().rows()) {
    const Weight top = r.sporadic() ? 1 : 6;
    for (Weight n = 1; n <= top; ++n) {
      const auto x = r.at(n);
      auto v = verdict(x, data());
      if (v.certificate) EXPECT_TRUE(recheck(x, *v.certificate, data())) << to_string(x);
      EXPECT_NE(v.status, CylinderStatus::Cylindrical) << to_string(x);
    }
  }
}
