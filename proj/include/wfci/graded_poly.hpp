#pragma once

// Sparse quasi-homogeneous polynomials over Q(sqrt m), monomial
// representability over index subsets, and graded coordinate changes.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wfci/error.hpp"
#include "wfci/exact_arith.hpp"
#include "wfci/wps.hpp"

namespace wfci {

// p + q*sqrt(m) with m square-free; m == 1 means no radical.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(long long v) : base_(v) {}  // NOLINT(google-explicit-constructor)
  Coefficient(Rational base) : base_(std::move(base)) {}  // NOLINT(google-explicit-constructor)
  Coefficient(Rational base, Rational radical, Integer radicand)
      : base_(std::move(base)), radical_(std::move(radical)), radicand_(std::move(radicand)) {
    if (radicand_ == 0) throw InvalidInput("radicand must be nonzero");
    auto [s, r] = square_free_decomposition(radicand_);
    if (s != 1) throw InvalidInput("radicand must be square-free");
    tidy();
  }

  // A square root of q, adjoining sqrt of the square-free part of q.
  static Coefficient sqrt_of(const Rational& q) {
    if (q == 0) return Coefficient();
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    auto [s, r] = square_free_decomposition(num * den);
    if (r == 1) return Coefficient(Rational(s, den));
    return Coefficient(Rational(0), Rational(s, den), r);
  }

  const Rational& base() const noexcept { return base_; }
  const Rational& radical() const noexcept { return radical_; }
  const Integer& radicand() const noexcept { return radicand_; }
  bool has_radical() const noexcept { return radicand_ != 1; }
  bool is_zero() const { return base_ == 0 && radical_ == 0; }

  Coefficient operator-() const { return Coefficient(-base_, -radical_, radicand_); }

  friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    const Integer m = common_radicand(a, b);
    return Coefficient(a.base_ + b.base_, a.radical_ + b.radical_, m);
  }
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b) { return a + (-b); }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    const Integer m = common_radicand(a, b);
    return Coefficient(a.base_ * b.base_ + a.radical_ * b.radical_ * Rational(m),
                       a.base_ * b.radical_ + a.radical_ * b.base_, m);
  }
  Coefficient inverse() const {
    if (is_zero()) throw PreconditionViolation("division-by-zero", "inverse of zero coefficient");
    const Rational norm = base_ * base_ - radical_ * radical_ * Rational(radicand_);
    return Coefficient(base_ / norm, -radical_ / norm, radicand_);
  }
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b) { return a * b.inverse(); }

  Coefficient& operator+=(const Coefficient& o) { return *this = *this + o; }
  Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.base_ == b.base_ && a.radical_ == b.radical_ && a.radicand_ == b.radicand_;
  }

 private:
  static Integer common_radicand(const Coefficient& a, const Coefficient& b) {
    if (!a.has_radical()) return b.radicand_;
    if (!b.has_radical() || a.radicand_ == b.radicand_) return a.radicand_;
    throw PreconditionViolation("two-radicals", "at most one square root may be adjoined per polynomial");
  }

  void tidy() {
    if (radical_ == 0) radicand_ = 1;
    if (radicand_ == 1) {
      base_ += radical_;
      radical_ = 0;
    }
  }

  Rational base_{0};
  Rational radical_{0};
  Integer radicand_{1};
};

inline std::string to_string(const Coefficient& c) {
  if (!c.has_radical()) return to_string(c.base());
  std::string s;
  if (c.base() != 0) s = to_string(c.base()) + "+";
  return s + "(" + to_string(c.radical()) + ")*sqrt(" + to_string(c.radicand()) + ")";
}

using Exponent = std::uint32_t;

struct Monomial {
  std::vector<Exponent> exponents;

  static Monomial one(std::size_t len) { return Monomial{std::vector<Exponent>(len, 0)}; }
  static Monomial variable(std::size_t len, std::size_t i, Exponent power = 1) {
    auto m = one(len);
    m.exponents.at(i) = power;
    return m;
  }

  std::size_t size() const noexcept { return exponents.size(); }
  Exponent operator[](std::size_t i) const { return exponents.at(i); }
  bool involves(std::size_t i) const { return exponents.at(i) != 0; }
  std::uint64_t total_exponent() const {
    std::uint64_t s = 0;
    for (auto e : exponents) s += e;
    return s;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) throw InvalidInput("monomial length mismatch");
    Monomial out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out.exponents[i] += b.exponents[i];
    return out;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline Weight weighted_degree(const Monomial& m, const WeightVector& w) {
  if (m.size() != w.size()) throw InvalidInput("monomial length does not match ambient");
  Integer total = 0;
  for (std::size_t i = 0; i < m.size(); ++i) total += Integer(m[i]) * w[i];
  if (total > std::numeric_limits<Weight>::max()) throw InvalidInput("weighted degree overflows");
  return static_cast<Weight>(total);
}

class GradedPolynomial {
 public:
  using Terms = std::map<Monomial, Coefficient>;

  GradedPolynomial(WeightVector ambient, Weight degree) : w_(std::move(ambient)), degree_(degree) {
    if (degree_ < 0) throw InvalidInput("polynomial degree must be nonnegative");
  }

  GradedPolynomial(WeightVector ambient, Weight degree, const Terms& terms)
      : GradedPolynomial(std::move(ambient), degree) {
    for (const auto& [m, c] : terms) add_term(m, c);
  }

  static GradedPolynomial variable(const WeightVector& w, std::size_t i) {
    GradedPolynomial p(w, w[i]);
    p.add_term(Monomial::variable(w.size(), i), Coefficient(1));
    return p;
  }

  static GradedPolynomial constant(const WeightVector& w, const Coefficient& c) {
    GradedPolynomial p(w, 0);
    p.add_term(Monomial::one(w.size()), c);
    return p;
  }

  const WeightVector& ambient() const noexcept { return w_; }
  Weight degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Coefficient coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coefficient() : it->second;
  }

  bool involves(std::size_t i) const {
    for (const auto& [m, c] : terms_)
      if (m.involves(i)) return true;
    return false;
  }

  std::optional<Integer> radicand() const {
    for (const auto& [m, c] : terms_)
      if (c.has_radical()) return c.radicand();
    return std::nullopt;
  }

  void add_term(const Monomial& m, const Coefficient& c) {
    if (weighted_degree(m, w_) != degree_) throw InvalidInput("monomial degree differs from polynomial degree");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) {
    a.check_compatible(b);
    for (const auto& [m, c] : b.terms_) a.add_term(m, c);
    return a;
  }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) {
    a.check_compatible(b);
    for (const auto& [m, c] : b.terms_) a.add_term(m, -c);
    return a;
  }
  friend GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b) {
    if (a.w_ != b.w_) throw InvalidInput("polynomials live in different ambients");
    GradedPolynomial out(a.w_, a.degree_ + b.degree_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }
  friend GradedPolynomial operator*(const Coefficient& s, GradedPolynomial p) {
    if (s.is_zero()) return GradedPolynomial(p.w_, p.degree_);
    for (auto& [m, c] : p.terms_) c = s * c;
    return p;
  }

  GradedPolynomial pow(Exponent e) const {
    GradedPolynomial out = constant(w_, Coefficient(1));
    GradedPolynomial base = *this;
    while (e) {
      if (e & 1U) out = out * base;
      e >>= 1U;
      if (e) base = base * base;
    }
    return out;
  }

  // Terms divisible by x_i, divided by x_i once.
  GradedPolynomial quotient_by_variable(std::size_t i) const {
    GradedPolynomial out(w_, degree_ - w_[i]);
    for (const auto& [m, c] : terms_) {
      if (!m.involves(i)) continue;
      Monomial q = m;
      --q.exponents[i];
      out.add_term(q, c);
    }
    return out;
  }

  // Terms with no x_i.
  GradedPolynomial without_variable(std::size_t i) const {
    GradedPolynomial out(w_, degree_);
    for (const auto& [m, c] : terms_)
      if (!m.involves(i)) out.add_term(m, c);
    return out;
  }

  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
    return a.w_ == b.w_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const GradedPolynomial& o) const {
    if (w_ != o.w_) throw InvalidInput("polynomials live in different ambients");
    if (degree_ != o.degree_) throw InvalidInput("polynomials have different degrees");
  }

  WeightVector w_;
  Weight degree_;
  Terms terms_;
};

inline std::string to_string(const GradedPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += to_string(c);
    } else if (c == Coefficient(1)) {
      out += mono;
    } else {
      out += "(" + to_string(c) + ")*" + mono;
    }
  }
  return out;
}

// Lexicographically smallest exponent vector supported on `subset` with
// weighted degree d. The zero monomial answers d == 0.
inline std::optional<Monomial> representable(const WeightVector& w, const IndexSet& subset, Weight d) {
  if (d < 0) return std::nullopt;
  IndexSet idx = subset;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (auto i : idx)
    if (i >= w.size()) throw InvalidInput("representable: index out of range");

  // reach[k][t]: t is a nonnegative combination of the weights idx[k..].
  const std::size_t k = idx.size();
  const auto width = static_cast<std::size_t>(d) + 1;
  std::vector<std::vector<char>> reach(k + 1, std::vector<char>(width, 0));
  reach[k][0] = 1;
  for (std::size_t s = k; s-- > 0;) {
    const auto a = static_cast<std::size_t>(w[idx[s]]);
    for (std::size_t t = 0; t < width; ++t)
      reach[s][t] = reach[s + 1][t] || (t >= a && reach[s][t - a]);
  }
  if (!reach[0][width - 1]) return std::nullopt;

  Monomial m = Monomial::one(w.size());
  auto rest = static_cast<std::size_t>(d);
  for (std::size_t s = 0; s < k; ++s) {
    const auto a = static_cast<std::size_t>(w[idx[s]]);
    Exponent e = 0;
    while (!reach[s + 1][rest]) {
      rest -= a;
      ++e;
    }
    m.exponents[idx[s]] = e;
  }
  return m;
}

// Indices e outside `subset` such that some monomial on `subset` times x_e
// has degree d.
inline IndexSet eligible_partners(const WeightVector& w, const IndexSet& subset, Weight d) {
  IndexSet out;
  for (std::size_t e = 0; e < w.size(); ++e) {
    if (std::find(subset.begin(), subset.end(), e) != subset.end()) continue;
    if (representable(w, subset, d - w[e])) out.push_back(e);
  }
  return out;
}

using SubsetMask = std::uint32_t;

inline IndexSet mask_to_indices(SubsetMask mask) {
  IndexSet out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1U)
    if (mask & 1U) out.push_back(i);
  return out;
}

inline SubsetMask indices_to_mask(const IndexSet& indices) {
  SubsetMask m = 0;
  for (auto i : indices) m |= SubsetMask{1} << i;
  return m;
}

// Representable degrees 0..max_degree for every index subset at once, as
// bitsets. Used by the quasi-smoothness criteria and the enumeration.
class RepresentabilityTable {
 public:
  static constexpr std::size_t kMaxVariables = 20;

  RepresentabilityTable(const WeightVector& w, Weight max_degree)
      : w_(w), max_degree_(max_degree), words_(static_cast<std::size_t>(max_degree) / 64 + 1) {
    if (w.size() > kMaxVariables) throw InvalidInput("too many variables for subset enumeration");
    if (max_degree < 0) throw InvalidInput("max_degree must be nonnegative");
    const std::size_t subsets = std::size_t{1} << w.size();
    bits_.assign(subsets * words_, 0);
    bits_[0] = 1;  // empty subset reaches only 0
    for (SubsetMask mask = 1; mask < subsets; ++mask) {
      const auto low = static_cast<std::size_t>(std::countr_zero(mask));
      const SubsetMask rest = mask & (mask - 1);
      std::copy_n(row(rest), words_, row(mask));
      close_under(row(mask), w[low]);
    }
  }

  const WeightVector& weights() const noexcept { return w_; }
  Weight max_degree() const noexcept { return max_degree_; }

  bool representable(SubsetMask mask, Weight d) const {
    if (d < 0) return false;
    if (d > max_degree_) throw InvalidInput("degree exceeds table range");
    const auto t = static_cast<std::size_t>(d);
    return (row(mask)[t / 64] >> (t % 64)) & 1U;
  }

  SubsetMask partners(SubsetMask mask, Weight d) const {
    SubsetMask out = 0;
    for (std::size_t e = 0; e < w_.size(); ++e) {
      const SubsetMask bit = SubsetMask{1} << e;
      if (!(mask & bit) && representable(mask, d - w_[e])) out |= bit;
    }
    return out;
  }

 private:
  std::uint64_t* row(SubsetMask mask) { return bits_.data() + static_cast<std::size_t>(mask) * words_; }
  const std::uint64_t* row(SubsetMask mask) const {
    return bits_.data() + static_cast<std::size_t>(mask) * words_;
  }

  // Closure under adding a: shifts by a, 2a, 4a, ... until stable.
  void close_under(std::uint64_t* r, Weight a) const {
    for (auto step = static_cast<std::size_t>(a); step <= static_cast<std::size_t>(max_degree_); step *= 2)
      or_shifted(r, step);
  }

  void or_shifted(std::uint64_t* r, std::size_t shift) const {
    const std::size_t ws = shift / 64;
    const std::size_t bs = shift % 64;
    for (std::size_t i = words_; i-- > ws;) {
      std::uint64_t v = r[i - ws] << bs;
      if (bs && i > ws) v |= r[i - ws - 1] >> (64 - bs);
      r[i] |= v;
    }
    const std::size_t tail = static_cast<std::size_t>(max_degree_) % 64 + 1;
    if (tail < 64) r[words_ - 1] &= (std::uint64_t{1} << tail) - 1;
  }

  WeightVector w_;
  Weight max_degree_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// Every monomial of weighted degree d, in lexicographic exponent order.
inline std::vector<Monomial> monomials_of_degree(const WeightVector& w, Weight d, std::size_t cap) {
  std::vector<Monomial> out;
  Monomial cur = Monomial::one(w.size());
  // reach[k][t]: t reachable from weights k..n (prunes dead branches).
  const auto width = static_cast<std::size_t>(std::max<Weight>(d, 0)) + 1;
  std::vector<std::vector<char>> reach(w.size() + 1, std::vector<char>(width, 0));
  reach[w.size()][0] = 1;
  for (std::size_t s = w.size(); s-- > 0;) {
    const auto a = static_cast<std::size_t>(w[s]);
    for (std::size_t t = 0; t < width; ++t) reach[s][t] = reach[s + 1][t] || (t >= a && reach[s][t - a]);
  }
  if (d < 0) return out;
  auto rec = [&](auto&& self, std::size_t k, std::size_t rest) -> void {
    if (k == w.size()) {
      if (out.size() >= cap) throw InvalidInput("monomial count exceeds cap of " + std::to_string(cap));
      out.push_back(cur);
      return;
    }
    const auto a = static_cast<std::size_t>(w[k]);
    for (Exponent e = 0;; ++e) {
      const std::size_t used = std::size_t{e} * a;
      if (used > rest) break;
      if (!reach[k + 1][rest - used]) continue;
      cur.exponents[k] = e;
      self(self, k + 1, rest - used);
    }
    cur.exponents[k] = 0;
  };
  rec(rec, 0, width - 1);
  return out;
}

inline constexpr std::size_t kDefaultMonomialCap = 200000;

// All monomials of degree d with deterministic nonzero rational
// coefficients drawn from the seed.
inline GradedPolynomial generic_member(const WeightVector& w, Weight d, std::uint64_t seed,
                                       std::size_t cap = kDefaultMonomialCap) {
  if (d < 1) throw InvalidInput("generic_member: degree must be positive");
  std::mt19937_64 rng(seed);
  GradedPolynomial p(w, d);
  for (const auto& m : monomials_of_degree(w, d, cap)) {
    long long num = static_cast<long long>(rng() % 19) - 9;
    if (num == 0) num = 10;
    const long long den = static_cast<long long>(rng() % 5) + 1;
    p.add_term(m, Coefficient(Rational(num, den)));
  }
  return p;
}

// One simultaneous graded change of variables x_k <- replacement_k.
struct Substitution {
  std::vector<std::pair<std::size_t, GradedPolynomial>> assignments;
};

inline GradedPolynomial substitute(const GradedPolynomial& p, const Substitution& s) {
  const auto& w = p.ambient();
  std::vector<std::optional<GradedPolynomial>> image(w.size());
  for (const auto& [i, r] : s.assignments) {
    if (i >= w.size()) throw InvalidInput("substitution index out of range");
    if (r.ambient() != w) throw InvalidInput("substitution lives in a different ambient");
    if (r.degree() != w[i]) throw InvalidInput("ungraded substitution");
    if (image[i]) throw InvalidInput("variable substituted twice in one step");
    image[i] = r;
  }

  // Powers of each replacement, built on demand.
  std::vector<std::vector<GradedPolynomial>> powers(w.size());
  auto power_of = [&](std::size_t i, Exponent e) -> const GradedPolynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(GradedPolynomial::constant(w, Coefficient(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * *image[i]);
    return cache[e];
  };

  GradedPolynomial out(w, p.degree());
  for (const auto& [m, c] : p.terms()) {
    Monomial kept = m;
    GradedPolynomial term = GradedPolynomial::constant(w, c);
    bool touched = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!image[i] || !m.involves(i)) continue;
      term = term * power_of(i, m[i]);
      kept.exponents[i] = 0;
      touched = true;
    }
    if (!touched) {
      out.add_term(m, c);
      continue;
    }
    for (const auto& [tm, tc] : term.terms()) out.add_term(tm * kept, tc);
  }
  return out;
}

// x_i <- replacement, where the replacement is either free of x_i or equal
// to u*x_i + h with u a nonzero constant and h free of x_i.
inline GradedPolynomial substitute(const GradedPolynomial& p, std::size_t i, const GradedPolynomial& replacement) {
  const auto& w = p.ambient();
  if (i >= w.size()) throw InvalidInput("substitution index out of range");
  if (replacement.degree() != w[i]) throw InvalidInput("ungraded substitution");
  const auto xi = Monomial::variable(w.size(), i);
  for (const auto& [m, c] : replacement.terms())
    if (m.involves(i) && m != xi) throw InvalidInput("replacement is not triangular in the substituted variable");
  return substitute(p, Substitution{{{i, replacement}}});
}

}  // namespace wfci
