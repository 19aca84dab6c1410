#pragma once

// Weighted projective spaces P(a_0, ..., a_n): normalization to a
// well-formed presentation, singular strata, canonical degree, and the
// torus charts D_+(x_{i_0} ... x_{i_m}) ~ (A^1 \ 0)^m x A^{n-m}.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "wfci/error.hpp"
#include "wfci/exact_arith.hpp"

namespace wfci {

using Weight = std::int64_t;

// Upper bound on any single weight or degree. Keeps every weighted degree
// sum(e_i * a_i) that the search code forms inside 64 bits.
inline constexpr Weight kMaxWeight = Weight{1} << 31;

using IndexSet = std::vector<std::size_t>;

class WeightVector {
 public:
  explicit WeightVector(std::vector<Weight> weights) : w_(std::move(weights)) {
    if (w_.size() < 2) throw InvalidInput("weight vector needs at least two weights");
    for (Weight a : w_)
      if (a < 1 || a > kMaxWeight) throw InvalidInput("weights must lie in [1, 2^31]");
  }

  const std::vector<Weight>& values() const noexcept { return w_; }
  std::size_t size() const noexcept { return w_.size(); }
  // n, so that the space is P(a_0, ..., a_n).
  std::size_t n() const noexcept { return w_.size() - 1; }
  Weight operator[](std::size_t i) const { return w_.at(i); }
  Weight sum() const { return std::accumulate(w_.begin(), w_.end(), Weight{0}); }

  // Canonical identity: weights sorted ascending.
  WeightVector sorted() const {
    auto s = w_;
    std::sort(s.begin(), s.end());
    return WeightVector(std::move(s));
  }

  // perm[k] is the caller-order index of the k-th smallest weight.
  IndexSet sorting_permutation() const {
    IndexSet perm(w_.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return w_[a] < w_[b]; });
    return perm;
  }

  Weight gcd_over(const IndexSet& indices) const {
    Weight g = 0;
    for (auto i : indices) g = gcd(g, w_.at(i));
    return g;
  }

  friend auto operator<=>(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<Weight> w_;
};

inline std::string to_string(const WeightVector& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

struct NormalizationTrace {
  WeightVector input;
  Weight common_factor_removed;
  std::vector<Weight> divisors;     // d_i = gcd of all weights but a_i
  std::vector<Weight> multipliers;  // e_i = lcm of all d_j but d_i
  std::vector<Weight> reduced;      // b_i = a_i / e_i
  WeightVector output;
};

inline bool is_well_formed(const WeightVector& w) {
  const auto& a = w.values();
  for (std::size_t skip = 0; skip < a.size(); ++skip) {
    Weight g = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != skip) g = gcd(g, a[i]);
    if (g != 1) return false;
  }
  return true;
}

// Two-step reduction: divide by the common gcd, then replace each a_i by
// a_i / lcm_{j != i} d_j. Indices are preserved.
inline NormalizationTrace normalize(const WeightVector& w) {
  const auto& a = w.values();
  const std::size_t len = a.size();
  const Weight q = gcd_many(a);
  std::vector<Weight> scaled(len);
  for (std::size_t i = 0; i < len; ++i) scaled[i] = a[i] / q;

  std::vector<Weight> d(len), e(len), b(len);
  for (std::size_t i = 0; i < len; ++i) {
    Weight g = 0;
    for (std::size_t j = 0; j < len; ++j)
      if (j != i) g = gcd(g, scaled[j]);
    d[i] = g;
  }
  for (std::size_t i = 0; i < len; ++i) {
    Weight l = 1;
    for (std::size_t j = 0; j < len; ++j)
      if (j != i) l = lcm(l, d[j]);
    e[i] = l;
    b[i] = scaled[i] / l;
  }
  NormalizationTrace trace{w, q, d, e, b, WeightVector(b)};
  if (!is_well_formed(trace.output))
    throw PreconditionViolation("normalize", "reduction did not reach a well-formed presentation");
  return trace;
}

struct SingularStratum {
  IndexSet indices;
  Weight stratum_gcd;

  friend bool operator==(const SingularStratum&, const SingularStratum&) = default;
};

namespace detail {

inline std::vector<Weight> prime_factors(Weight x) {
  std::vector<Weight> out;
  for (Weight p = 2; p * p <= x; ++p) {
    if (x % p) continue;
    out.push_back(p);
    while (x % p == 0) x /= p;
  }
  if (x > 1) out.push_back(x);
  return out;
}

}  // namespace detail

// Maximal index sets I with gcd{a_i : i in I} > 1. Each such set is
// {i : p | a_i} for some prime p, so scanning primes finds all of them.
inline std::vector<SingularStratum> singular_strata(const WeightVector& w) {
  if (!is_well_formed(w)) throw PreconditionViolation("not-well-formed", "normalize first");
  std::vector<Weight> primes;
  for (Weight a : w.values())
    for (Weight p : detail::prime_factors(a)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  std::vector<IndexSet> candidates;
  for (Weight p : primes) {
    IndexSet s;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] % p == 0) s.push_back(i);
    candidates.push_back(std::move(s));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<SingularStratum> out;
  for (const auto& s : candidates) {
    bool dominated = false;
    for (const auto& t : candidates)
      if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) dominated = true;
    if (!dominated) out.push_back({s, w.gcd_over(s)});
  }
  return out;
}

inline Weight canonical_degree(const WeightVector& w) {
  return -w.sum();
}

// Data of the chart D_+(prod_{i in I} x_i). With sum b_i a_i = 1 over I,
// h = prod x_i^{b_i} has degree 1 and y_i = x_i h^{-a_i} are invariant
// coordinates; the exponent matrix (first row b) turns prod y_i^{b_i} = 1
// into Y_0 = 1.
struct ChartDescription {
  IndexSet chart_subset;
  std::vector<Integer> bezout_coefficients;  // aligned with chart_subset
  UnimodularMatrix exponent_matrix;
  std::size_t torus_rank;   // m = |I| - 1
  std::size_t affine_rank;  // n - m
};

inline ChartDescription torus_chart(const WeightVector& w, IndexSet subset) {
  if (subset.empty()) throw InvalidInput("torus_chart: empty index subset");
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
    throw InvalidInput("torus_chart: repeated index");
  if (subset.back() >= w.size()) throw InvalidInput("torus_chart: index out of range");
  if (w.gcd_over(subset) != 1) throw PreconditionViolation("not-coprime", "subset weights not coprime");

  std::vector<Integer> chosen;
  for (auto i : subset) chosen.emplace_back(w[i]);
  auto bz = bezout(chosen);
  auto matrix = unimodular_complete(bz.coeffs);
  const std::size_t m = subset.size() - 1;
  return ChartDescription{subset, bz.coeffs, std::move(matrix), m, w.n() - m};
}

// Exponent vectors (over x_0..x_n, possibly negative) of h and of the
// invariant coordinates y_i = x_i h^{-a_i}.
struct ChartCoordinates {
  std::vector<Integer> semi_invariant;
  std::vector<std::vector<Integer>> invariants;
};

inline ChartCoordinates chart_coordinates(const WeightVector& w, const ChartDescription& chart) {
  ChartCoordinates out;
  out.semi_invariant.assign(w.size(), Integer(0));
  for (std::size_t k = 0; k < chart.chart_subset.size(); ++k)
    out.semi_invariant[chart.chart_subset[k]] = chart.bezout_coefficients[k];
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::vector<Integer> y(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) y[j] = -Integer(w[i]) * out.semi_invariant[j];
    y[i] += 1;
    out.invariants.push_back(std::move(y));
  }
  return out;
}

struct PolarComponent {
  std::size_t index;  // hyperplane {x_index = 0}
  Rational multiplicity;
};

struct WpsCylinder {
  NormalizationTrace normalization;
  ChartDescription chart;               // in the coordinates of normalization.output
  std::vector<PolarComponent> polar;    // sum multiplicity * b_index == sum b
};

namespace detail {

// Smallest-size, then lexicographically first, index subset with gcd 1 and
// size at most max_size. Subsets must contain `required` when given.
inline IndexSet first_coprime_subset(const WeightVector& w, std::size_t max_size,
                                     std::optional<std::size_t> required = std::nullopt) {
  const std::size_t len = w.size();
  for (std::size_t k = 1; k <= max_size; ++k) {
    IndexSet pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      bool ok = !required || std::find(pick.begin(), pick.end(), *required) != pick.end();
      if (ok && w.gcd_over(pick) == 1) return pick;
      std::size_t pos = k;
      while (pos > 0 && pick[pos - 1] == len - k + pos - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t t = pos; t < k; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  return {};
}

// Positive multiplicities on the given hyperplanes, each carrying an equal
// share of the target degree.
inline std::vector<PolarComponent> equal_share_polar(const WeightVector& w, const IndexSet& support,
                                                     const Integer& target_degree) {
  std::vector<PolarComponent> out;
  for (auto i : support)
    out.push_back({i, Rational(target_degree, Integer(support.size()) * Integer(w[i]))});
  return out;
}

}  // namespace detail

// An anti-canonically polar cylinder inside a principal chart: the chart
// complement is a union of coordinate hyperplanes, and -K = O(sum b).
inline WpsCylinder wps_cylinder(const WeightVector& w) {
  auto trace = normalize(w);
  const auto& b = trace.output;
  auto subset = detail::first_coprime_subset(b, b.n());
  auto chart = torus_chart(b, subset);
  auto polar = detail::equal_share_polar(b, subset, Integer(b.sum()));
  return WpsCylinder{std::move(trace), std::move(chart), std::move(polar)};
}

}  // namespace wfci
