#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wfci/exact_arith.hpp"

using namespace wfci;

TEST(Gcd, SmallValues) {
  EXPECT_EQ(gcd<long long>(12, 18), 6);
  EXPECT_EQ(gcd<long long>(-12, 18), 6);
  EXPECT_EQ(gcd<long long>(0, 7), 7);
  EXPECT_EQ(lcm<long long>(4, 6), 12);
  EXPECT_EQ(lcm<long long>(0, 6), 0);
  EXPECT_EQ(gcd_many(std::vector<long long>{6, 10, 15}), 1);
  EXPECT_EQ(lcm_many(std::vector<long long>{6, 10, 15}), 30);
  EXPECT_THROW(gcd_many(std::vector<long long>{}), InvalidInput);
}

TEST(Gcd, ExtendedAgreesWithStd) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    const long long a = static_cast<long long>(rng() % 2001) - 1000;
    const long long b = static_cast<long long>(rng() % 2001) - 1000;
    auto e = extended_gcd<long long>(a, b);
    EXPECT_EQ(e.g, std::gcd(a, b));
    EXPECT_EQ(e.s * a + e.t * b, e.g);
  }
}

TEST(Gcd, BezoutCombination) {
  std::vector<Integer> v{6, 10, 15};
  auto b = bezout(v);
  EXPECT_EQ(b.g, 1);
  Integer s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * b.coeffs[i];
  EXPECT_EQ(s, 1);
  auto neg = bezout(std::vector<Integer>{-4, 6});
  EXPECT_EQ(neg.g, 2);
  EXPECT_EQ(neg.coeffs[0] * -4 + neg.coeffs[1] * 6, 2);
}

TEST(Determinant, MatchesCofactorExpansion) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 5;
    IntMatrix m(n, n);
    std::vector<std::vector<oracle::Int>> o(n, std::vector<oracle::Int>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        // Sparse entries exercise the pivot swap.
        const long long v = (rng() % 3 == 0) ? 0 : static_cast<long long>(rng() % 19) - 9;
        m(r, c) = v;
        o[r][c] = v;
      }
    EXPECT_EQ(determinant(m), oracle::cofactor_det(o));
  }
}

TEST(Unimodular, CompletionHasFirstRowAndUnitDeterminant) {
  std::mt19937_64 rng(11);
  int done = 0;
  while (done < 500) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<Integer> v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(static_cast<long long>(rng() % 41) - 20);
    if (gcd_many(v) != 1) continue;
    ++done;
    auto u = unimodular_complete(v);
    EXPECT_EQ(u.matrix().row(0), v);
    const Integer det = u.determinant();
    EXPECT_TRUE(det == 1 || det == -1);
    EXPECT_EQ(u.matrix() * u.inverse(), IntMatrix::identity(n));
  }
}

TEST(Unimodular, RejectsNonPrimitive) {
  try {
    unimodular_complete({Integer(4), Integer(6)});
    FAIL();
  } catch (const PreconditionViolation& e) {
    EXPECT_EQ(e.tag(), "not-primitive");
  }
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(Rational(-2, 4)), "-1/2");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), InvalidInput);
  EXPECT_THROW(parse_rational("x"), InvalidInput);
}

TEST(SquareFree, Decomposition) {
  for (long long m : {1LL, 2LL, 12LL, -12LL, 72LL, 49LL, -1LL, 30LL}) {
    auto [s, r] = square_free_decomposition(Integer(m));
    EXPECT_EQ(s * s * r, m);
    for (long long p = 2; p * p <= 100; ++p) EXPECT_NE(r % (p * p), 0) << m;
  }
}
