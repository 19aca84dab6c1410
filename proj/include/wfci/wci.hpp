#pragma once

// Weighted complete intersections X_{d_1,...,d_c} in P(a_0, ..., a_n):
// well-formedness, quasi-smoothness of general members (c = 1, 2),
// linear cones, adjunction and intersection numbers.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wfci/error.hpp"
#include "wfci/exact_arith.hpp"
#include "wfci/graded_poly.hpp"
#include "wfci/wps.hpp"

namespace wfci {

class WciDescriptor {
 public:
  WciDescriptor(WeightVector ambient, std::vector<Weight> degrees)
      : w_(std::move(ambient)), d_(std::move(degrees)) {
    if (d_.empty()) throw InvalidInput("multidegree must be nonempty");
    if (d_.size() + 2 > w_.size()) throw InvalidInput("codimension must be at most n - 1");
    for (Weight d : d_)
      if (d < 1 || d > kMaxWeight) throw InvalidInput("degrees must lie in [1, 2^31]");
  }
  WciDescriptor(std::vector<Weight> weights, std::vector<Weight> degrees)
      : WciDescriptor(WeightVector(std::move(weights)), std::move(degrees)) {}

  const WeightVector& ambient() const noexcept { return w_; }
  const std::vector<Weight>& degrees() const noexcept { return d_; }
  std::size_t n() const noexcept { return w_.n(); }
  std::size_t codim() const noexcept { return d_.size(); }
  std::size_t dim() const noexcept { return w_.n() - d_.size(); }
  Weight degree_sum() const {
    Weight s = 0;
    for (Weight d : d_) s += d;
    return s;
  }

  // Canonical identity: weights and degrees sorted ascending.
  WciDescriptor canonical() const {
    auto d = d_;
    std::sort(d.begin(), d.end());
    return WciDescriptor(w_.sorted(), std::move(d));
  }

  friend auto operator<=>(const WciDescriptor&, const WciDescriptor&) = default;

 private:
  WeightVector w_;
  std::vector<Weight> d_;
};

inline std::string to_string(const WciDescriptor& x) {
  std::string s = to_string(x.ambient()) + "/(";
  for (std::size_t j = 0; j < x.codim(); ++j) {
    if (j) s += ",";
    s += std::to_string(x.degrees()[j]);
  }
  return s + ")";
}

namespace detail {

inline void check_subset_size(const WeightVector& w) {
  if (w.size() > RepresentabilityTable::kMaxVariables)
    throw InvalidInput("too many variables for subset enumeration (max " +
                       std::to_string(RepresentabilityTable::kMaxVariables) + ")");
}

// All index subsets of {0..len-1} of the given size, lexicographically.
template <class F>
void for_each_subset_of_size(std::size_t len, std::size_t size, F&& f) {
  if (size > len) return;
  if (size == 0) {
    f(SubsetMask{0});
    return;
  }
  std::vector<std::size_t> pick(size);
  for (std::size_t t = 0; t < size; ++t) pick[t] = t;
  while (true) {
    SubsetMask m = 0;
    for (auto i : pick) m |= SubsetMask{1} << i;
    if (!f(m)) return;
    std::size_t pos = size;
    while (pos > 0 && pick[pos - 1] == len - size + pos - 1) --pos;
    if (pos == 0) return;
    ++pick[pos - 1];
    for (std::size_t t = pos; t < size; ++t) pick[t] = pick[t - 1] + 1;
  }
}

inline Weight gcd_over_mask(const WeightVector& w, SubsetMask mask) {
  Weight g = 0;
  for (std::size_t i = 0; mask; ++i, mask >>= 1U)
    if (mask & 1U) g = gcd(g, w[i]);
  return g;
}

}  // namespace detail

// Well-formed in codimension c: the ambient is well-formed and, for each
// mu = 1..c, the gcd of any n-1-c+mu weights divides at least mu degrees.
inline bool well_formed_ci(const WciDescriptor& x) {
  const auto& w = x.ambient();
  if (!is_well_formed(w)) return false;
  detail::check_subset_size(w);
  const auto n = static_cast<long long>(x.n());
  const auto c = static_cast<long long>(x.codim());
  for (long long mu = 1; mu <= c; ++mu) {
    const long long size = n - 1 - c + mu;
    if (size < 1) continue;
    bool ok = true;
    detail::for_each_subset_of_size(w.size(), static_cast<std::size_t>(size), [&](SubsetMask m) {
      const Weight g = detail::gcd_over_mask(w, m);
      if (g == 1) return true;
      long long hits = 0;
      for (Weight d : x.degrees())
        if (d % g == 0) ++hits;
      ok = hits >= mu;
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

inline bool well_formed_hypersurface(const WciDescriptor& x) {
  if (x.codim() != 1) throw InvalidInput("well_formed_hypersurface needs codimension 1");
  if (!is_well_formed(x.ambient())) return false;
  const auto& w = x.ambient();
  const Weight d = x.degrees()[0];
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      Weight g = 0;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != i && k != j) g = gcd(g, w[k]);
      if (g != 0 && d % g != 0) return false;
    }
  return true;
}

struct LinearConeFlag {
  std::size_t degree_index;
  std::size_t weight_index;
  friend bool operator==(const LinearConeFlag&, const LinearConeFlag&) = default;
};

inline std::vector<LinearConeFlag> linear_cone_flags(const WciDescriptor& x) {
  std::vector<LinearConeFlag> out;
  for (std::size_t j = 0; j < x.codim(); ++j)
    for (std::size_t i = 0; i < x.ambient().size(); ++i)
      if (x.degrees()[j] == x.ambient()[i]) out.push_back({j, i});
  return out;
}

// Evidence that one subset I satisfies the criterion. `monomials[j]` is a
// monomial of degree d_j on I when that is used; `partners[j]` lists the
// indices e outside I with a monomial of degree d_j on I times x_e.
struct SubsetWitness {
  IndexSet subset;
  std::string condition;
  std::vector<std::optional<Monomial>> monomials;
  std::vector<IndexSet> partners;
};

struct QsVerdict {
  bool holds = true;
  std::vector<SubsetWitness> witnesses;
  std::optional<IndexSet> failing_subset;
};

struct QsOptions {
  bool record_witnesses = true;
};

namespace detail {

inline constexpr std::size_t kMaxTableBytes = std::size_t{256} << 20;

inline RepresentabilityTable make_table(const WciDescriptor& x) {
  check_subset_size(x.ambient());
  const Weight dmax = *std::max_element(x.degrees().begin(), x.degrees().end());
  const std::size_t bytes = (std::size_t{1} << x.ambient().size()) * (static_cast<std::size_t>(dmax) / 64 + 1) * 8;
  if (bytes > kMaxTableBytes) throw InvalidInput("descriptor too large for the representability table");
  return RepresentabilityTable(x.ambient(), dmax);
}

inline void require_no_linear_cone(const WciDescriptor& x) {
  if (!linear_cone_flags(x).empty())
    throw PreconditionViolation("linear-cone", "criterion inapplicable to linear cones");
}

// Nonempty subsets ordered by size, then lexicographically.
template <class F>
void for_each_nonempty_subset(std::size_t len, std::size_t min_size, F&& f) {
  for (std::size_t k = std::max<std::size_t>(min_size, 1); k <= len; ++k) {
    bool go = true;
    for_each_subset_of_size(len, k, [&](SubsetMask m) { return go = f(m); });
    if (!go) return;
  }
}

inline SubsetWitness make_witness(const WciDescriptor& x, SubsetMask mask, std::string condition,
                                  std::vector<bool> want_monomial, std::vector<SubsetMask> partner_masks) {
  SubsetWitness w{mask_to_indices(mask), std::move(condition), {}, {}};
  for (std::size_t j = 0; j < want_monomial.size(); ++j)
    w.monomials.push_back(want_monomial[j] ? representable(x.ambient(), w.subset, x.degrees()[j])
                                           : std::nullopt);
  for (auto pm : partner_masks) w.partners.push_back(mask_to_indices(pm));
  return w;
}

}  // namespace detail

// General member of degree d: every nonempty I either carries a monomial
// of degree d, or has at least |I| distinct partners e outside I.
inline QsVerdict general_qs_hypersurface(const WciDescriptor& x, const RepresentabilityTable& table,
                                         QsOptions opts = {}) {
  if (x.codim() != 1) throw InvalidInput("general_qs_hypersurface needs codimension 1");
  detail::require_no_linear_cone(x);
  const Weight d = x.degrees()[0];
  QsVerdict v;
  detail::for_each_nonempty_subset(x.ambient().size(), 1, [&](SubsetMask m) {
    if (table.representable(m, d)) {
      if (opts.record_witnesses) v.witnesses.push_back(detail::make_witness(x, m, "monomial", {true}, {}));
      return true;
    }
    const SubsetMask e = table.partners(m, d);
    if (std::popcount(e) >= std::popcount(m)) {
      if (opts.record_witnesses) v.witnesses.push_back(detail::make_witness(x, m, "partners", {false}, {e}));
      return true;
    }
    v.holds = false;
    v.failing_subset = mask_to_indices(m);
    return false;
  });
  return v;
}

inline QsVerdict general_qs_hypersurface(const WciDescriptor& x, QsOptions opts = {}) {
  if (x.codim() != 1) throw InvalidInput("general_qs_hypersurface needs codimension 1");
  detail::require_no_linear_cone(x);
  return general_qs_hypersurface(x, detail::make_table(x), opts);
}

// Codimension two: the single-variable condition for every index and the
// subset condition for every I with |I| >= 2, in counting form.
inline QsVerdict general_qs_ci2(const WciDescriptor& x, const RepresentabilityTable& table, QsOptions opts = {}) {
  if (x.codim() != 2) throw InvalidInput("general_qs_ci2 needs codimension 2");
  detail::require_no_linear_cone(x);
  const Weight d1 = x.degrees()[0];
  const Weight d2 = x.degrees()[1];
  QsVerdict v;
  auto pass = [&](SubsetMask m, const char* cond, bool m1, bool m2, std::vector<SubsetMask> parts) {
    if (opts.record_witnesses) v.witnesses.push_back(detail::make_witness(x, m, cond, {m1, m2}, std::move(parts)));
    return true;
  };
  detail::for_each_nonempty_subset(x.ambient().size(), 1, [&](SubsetMask m) {
    const int k = std::popcount(m);
    const bool r1 = table.representable(m, d1);
    const bool r2 = table.representable(m, d2);
    const SubsetMask e1 = table.partners(m, d1);
    const SubsetMask e2 = table.partners(m, d2);
    const int n1 = std::popcount(e1);
    const int n2 = std::popcount(e2);
    const int nu = std::popcount(e1 | e2);
    if (k == 1) {
      if (r1) return pass(m, "pure-power-f1", true, false, {});
      if (r2) return pass(m, "pure-power-f2", false, true, {});
      if (n1 >= 1 && n2 >= 1 && nu >= 2) return pass(m, "distinct-partners", false, false, {e1, e2});
    } else {
      if (r1 && r2) return pass(m, "both-monomials", true, true, {});
      if (r1 && n2 >= k - 1) return pass(m, "f1-monomial-f2-partners", true, false, {0, e2});
      if (r2 && n1 >= k - 1) return pass(m, "f2-monomial-f1-partners", false, true, {e1, 0});
      if (n1 >= k && n2 >= k && nu >= k + 1) return pass(m, "partner-union", false, false, {e1, e2});
    }
    v.holds = false;
    v.failing_subset = mask_to_indices(m);
    return false;
  });
  return v;
}

inline QsVerdict general_qs_ci2(const WciDescriptor& x, QsOptions opts = {}) {
  if (x.codim() != 2) throw InvalidInput("general_qs_ci2 needs codimension 2");
  detail::require_no_linear_cone(x);
  return general_qs_ci2(x, detail::make_table(x), opts);
}

// Dispatch on codimension; nullopt when no criterion is available (c >= 3)
// or the descriptor is a linear cone.
inline std::optional<QsVerdict> general_qs(const WciDescriptor& x, QsOptions opts = {}) {
  if (!linear_cone_flags(x).empty()) return std::nullopt;
  if (x.codim() == 1) return general_qs_hypersurface(x, opts);
  if (x.codim() == 2) return general_qs_ci2(x, opts);
  return std::nullopt;
}

enum class Amplitude { Fano, CalabiYau, GeneralType };

inline std::string to_string(Amplitude a) {
  switch (a) {
    case Amplitude::Fano: return "Fano";
    case Amplitude::CalabiYau: return "CalabiYau";
    case Amplitude::GeneralType: return "GeneralType";
  }
  return "?";
}

struct AdjunctionData {
  Weight canonical_coefficient;  // k = sum d - sum a
  Amplitude amplitude;
  std::optional<Weight> fano_index;
  // Well-formed, not a linear cone, and the general member passes the
  // quasi-smoothness criterion (only decidable for c <= 2).
  bool hypotheses_verified;
};

inline AdjunctionData adjunction(const WciDescriptor& x) {
  const Weight k = x.degree_sum() - x.ambient().sum();
  AdjunctionData a{k, Amplitude::GeneralType, std::nullopt, false};
  if (k < 0) {
    a.amplitude = Amplitude::Fano;
    a.fano_index = -k;
  } else if (k == 0) {
    a.amplitude = Amplitude::CalabiYau;
  }
  try {
    auto qs = general_qs(x, {.record_witnesses = false});
    a.hypotheses_verified = qs && qs->holds && well_formed_ci(x);
  } catch (const InvalidInput&) {
    a.hypotheses_verified = false;
  }
  return a;
}

// (prod of divisor degrees) * (prod d_j) / (prod a_i).
inline Rational intersection_number(const WciDescriptor& x, const std::vector<Weight>& divisor_degrees) {
  if (divisor_degrees.size() != x.dim())
    throw InvalidInput("intersection_number needs exactly dim = " + std::to_string(x.dim()) + " divisor degrees");
  Integer num = 1;
  for (Weight h : divisor_degrees) num *= h;
  for (Weight d : x.degrees()) num *= d;
  Integer den = 1;
  for (Weight a : x.ambient().values()) den *= a;
  return Rational(num, den);
}

}  // namespace wfci
