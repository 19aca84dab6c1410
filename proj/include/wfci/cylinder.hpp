#pragma once

// Cylindricity verdicts: constructive certificates (principal charts,
// linear cones, d = a_i + a_j, projections of complete intersections) and
// table-backed non-existence certificates.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wfci/error.hpp"
#include "wfci/exact_arith.hpp"
#include "wfci/graded_poly.hpp"
#include "wfci/tables.hpp"
#include "wfci/wci.hpp"
#include "wfci/wps.hpp"

namespace wfci {

// ---------------------------------------------------------------------------
// Normal form F = x_u x_v + G for d = a_i + a_j.

struct NamedSubstitution {
  std::string description;
  Substitution substitution;
};

struct NormalFormResult {
  std::size_t i;
  std::size_t j;
  std::size_t pivot;   // x_u, the chart variable
  std::size_t linear;  // x_v, eliminated by the projection
  std::vector<NamedSubstitution> change_sequence;
  GradedPolynomial result;  // x_u x_v + G
  GradedPolynomial g;       // free of x_u and x_v
  std::optional<Integer> extension_used;
};

inline GradedPolynomial replay(const GradedPolynomial& input, const std::vector<NamedSubstitution>& changes) {
  GradedPolynomial p = input;
  for (const auto& s : changes) p = substitute(p, s.substitution);
  return p;
}

namespace detail {

inline Monomial product_monomial(std::size_t len, std::size_t a, std::size_t b) {
  auto m = Monomial::one(len);
  ++m.exponents.at(a);
  ++m.exponents.at(b);
  return m;
}

inline GradedPolynomial linear_combination(const WeightVector& w, std::size_t a, const Coefficient& ca, std::size_t b,
                                           const Coefficient& cb) {
  GradedPolynomial p(w, w[a]);
  p.add_term(Monomial::variable(w.size(), a), ca);
  p.add_term(Monomial::variable(w.size(), b), cb);
  return p;
}

// The binary part of F in x_i, x_j admits a factorization with two
// distinct factors (or already contains x_i x_j when weights differ).
inline bool cross_term_ready(const GradedPolynomial& f, std::size_t i, std::size_t j) {
  const auto& w = f.ambient();
  const std::size_t len = w.size();
  const Coefficient c = f.coefficient(product_monomial(len, i, j));
  if (w[i] != w[j]) return !c.is_zero();
  const Coefficient lambda = f.coefficient(Monomial::variable(len, i, 2));
  const Coefficient mu = f.coefficient(Monomial::variable(len, j, 2));
  return !(c * c - Coefficient(4) * lambda * mu).is_zero();
}

}  // namespace detail

// Brings F of degree a_i + a_j to x_u x_v + G by graded changes of
// variables. When a_i != a_j the heavier variable is the linear one x_v.
inline NormalFormResult normal_form(const GradedPolynomial& input, std::size_t i, std::size_t j) {
  const auto& w = input.ambient();
  const std::size_t len = w.size();
  if (i >= len || j >= len || i == j) throw InvalidInput("normal_form: need two distinct indices in range");
  if (input.degree() != w[i] + w[j])
    throw PreconditionViolation("degree-mismatch", "polynomial degree is not a_i + a_j");

  NormalFormResult out{i, j, i, j, {}, input, GradedPolynomial(w, input.degree()), std::nullopt};
  if (w[i] > w[j]) std::swap(out.pivot, out.linear);
  const std::size_t u = out.pivot;
  const std::size_t v = out.linear;
  GradedPolynomial f = input;

  auto apply = [&](std::string description, Substitution s) {
    f = substitute(f, s);
    out.change_sequence.push_back({std::move(description), std::move(s)});
  };
  auto var = [&](std::size_t k) { return "x" + std::to_string(k); };

  // Enabling step: x_k <- x_k + t x_t moves a term x_k x_other onto x_i x_j.
  if (!detail::cross_term_ready(f, i, j)) {
    bool enabled = false;
    for (std::size_t k = 0; k < len && !enabled; ++k) {
      if (k == i || k == j) continue;
      for (auto [target, other] : {std::pair{j, i}, std::pair{i, j}}) {
        if (enabled || w[k] != w[target]) continue;
        if (f.coefficient(detail::product_monomial(len, k, other)).is_zero()) continue;
        for (long long t = 1; t <= 4 && !enabled; ++t) {
          Substitution s{{{k, detail::linear_combination(w, k, Coefficient(1), target, Coefficient(t))}}};
          auto trial = substitute(f, s);
          if (!detail::cross_term_ready(trial, i, j)) continue;
          apply(var(k) + " <- " + var(k) + " + " + std::to_string(t) + "*" + var(target), std::move(s));
          enabled = true;
        }
      }
    }
    if (!enabled)
      throw PreconditionViolation("cross-term-absent", "cross term absent: proof hypothesis violated");
  }

  // Make the binary part exactly x_u x_v.
  const Coefficient c = f.coefficient(detail::product_monomial(len, i, j));
  if (w[i] == w[j]) {
    const Coefficient lambda = f.coefficient(Monomial::variable(len, i, 2));
    const Coefficient mu = f.coefficient(Monomial::variable(len, j, 2));
    if (lambda.is_zero() && mu.is_zero()) {
      if (!(c == Coefficient(1)))
        apply(var(i) + " <- " + var(i) + "/c", Substitution{{{i, Coefficient(1) / c * GradedPolynomial::variable(w, i)}}});
    } else if (lambda.is_zero()) {
      // x_j (c x_i + mu x_j): x_i <- (x_i - mu x_j)/c
      apply(var(i) + " <- (" + var(i) + " - mu*" + var(j) + ")/c",
            Substitution{{{i, detail::linear_combination(w, i, c.inverse(), j, -(mu / c))}}});
    } else if (mu.is_zero()) {
      apply(var(j) + " <- (" + var(j) + " - lambda*" + var(i) + ")/c",
            Substitution{{{j, detail::linear_combination(w, j, c.inverse(), i, -(lambda / c))}}});
    } else {
      // lambda (x_i - r+ x_j)(x_i - r- x_j) with r = (-c +- sqrt D)/(2 lambda).
      const Coefficient disc = c * c - Coefficient(4) * lambda * mu;
      if (disc.has_radical())
        throw PreconditionViolation("two-radicals", "discriminant already involves a square root");
      const Coefficient root = Coefficient::sqrt_of(disc.base());
      if (root.has_radical()) out.extension_used = root.radicand();
      const Coefficient two_lambda = Coefficient(2) * lambda;
      const Coefficient r_plus = (-c + root) / two_lambda;
      const Coefficient r_minus = (-c - root) / two_lambda;
      // new_i = x_i - r+ x_j, new_j = lambda (x_i - r- x_j)
      const Coefficient inv_gap = (r_minus - r_plus).inverse();
      auto old_j = detail::linear_combination(w, i, inv_gap, j, -(inv_gap / lambda));
      auto old_i = GradedPolynomial::variable(w, i) + r_plus * old_j;
      apply("(" + var(i) + ", " + var(j) + ") <- factors of the binary quadratic",
            Substitution{{{i, std::move(old_i)}, {j, std::move(old_j)}}});
    }
  } else if (!(c == Coefficient(1))) {
    apply(var(u) + " <- " + var(u) + "/c", Substitution{{{u, Coefficient(1) / c * GradedPolynomial::variable(w, u)}}});
  }

  // F = x_v (x_u + F1) + F2: x_u <- x_u - F1.
  {
    auto f1 = f.quotient_by_variable(v) - GradedPolynomial::variable(w, u);
    if (!f1.is_zero()) {
      if (f1.involves(u) || f1.involves(v))
        throw PreconditionViolation("cross-term-absent", "cross term absent: proof hypothesis violated");
      apply(var(u) + " <- " + var(u) + " - F1", Substitution{{{u, GradedPolynomial::variable(w, u) - f1}}});
    }
  }

  // F = x_u x_v + x_u F3 + F4: x_v <- x_v - F3.
  {
    auto cross = GradedPolynomial(w, f.degree());
    cross.add_term(detail::product_monomial(len, u, v), Coefficient(1));
    auto f3 = (f - cross).quotient_by_variable(u);
    if (!f3.is_zero()) {
      if (f3.involves(v))
        throw PreconditionViolation("cross-term-absent", "cross term absent: proof hypothesis violated");
      apply(var(v) + " <- " + var(v) + " - F3", Substitution{{{v, GradedPolynomial::variable(w, v) - f3}}});
    }
  }

  auto cross = GradedPolynomial(w, f.degree());
  cross.add_term(detail::product_monomial(len, u, v), Coefficient(1));
  out.g = f - cross;
  if (out.g.involves(u) || out.g.involves(v) || !(f.coefficient(detail::product_monomial(len, u, v)) == Coefficient(1)))
    throw PreconditionViolation("normal-form", "normal form did not reach x_u x_v + G");
  out.result = std::move(f);
  return out;
}

// ---------------------------------------------------------------------------
// Charts behind the d = a_i + a_j cylinder.

struct CylinderChart {
  std::size_t pivot;
  std::size_t projected_away;
  WeightVector projected_ambient;       // weights with a_{projected_away} removed
  std::vector<std::size_t> original_index;  // projected position -> original index
  ChartDescription chart;               // in projected positions
  IndexSet chart_subset_original;
  std::vector<PolarComponent> polar;    // original indices; sum mult * a == anticanonical_degree
  Weight anticanonical_degree;
};

// X meets D_+(x_u) in a copy of D_+(y_u) inside the projection
// P(a_0, ..., ^a_v, ..., a_n); the chart is the smallest coprime I containing u.
inline CylinderChart cylinder_chart(const WciDescriptor& desc, std::size_t u, std::size_t v) {
  if (desc.codim() != 1) throw InvalidInput("cylinder_chart needs a hypersurface");
  const auto& w = desc.ambient();
  if (u >= w.size() || v >= w.size() || u == v) throw InvalidInput("cylinder_chart: bad index pair");
  if (desc.degrees()[0] != w[u] + w[v]) throw PreconditionViolation("not-sum", "degree is not a_u + a_v");
  std::vector<Weight> rest;
  std::vector<std::size_t> orig;
  std::size_t u_pos = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k == v) continue;
    if (k == u) u_pos = rest.size();
    rest.push_back(w[k]);
    orig.push_back(k);
  }
  WeightVector projected(rest);
  auto subset = detail::first_coprime_subset(projected, projected.size(), u_pos);
  auto chart = torus_chart(projected, subset);
  IndexSet subset_orig;
  for (auto p : subset) subset_orig.push_back(orig[p]);
  const Weight iota = w.sum() - desc.degrees()[0];
  if (iota <= 0) throw PreconditionViolation("not-fano", "anti-canonical class is not ample");
  auto polar = detail::equal_share_polar(w, subset_orig, Integer(iota));
  return CylinderChart{u, v, std::move(projected), std::move(orig), std::move(chart), std::move(subset_orig),
                       std::move(polar), iota};
}

inline CylinderChart cylinder_chart(const WciDescriptor& desc, const NormalFormResult& nf) {
  return cylinder_chart(desc, nf.pivot, nf.linear);
}

inline std::pair<std::size_t, std::size_t> pivot_and_linear(const WeightVector& w, std::size_t i, std::size_t j) {
  return w[i] > w[j] ? std::pair{j, i} : std::pair{i, j};
}

// ---------------------------------------------------------------------------
// Certificates.

struct WpsChartCert {
  WpsCylinder cylinder;
};

struct LinearConeCert {
  std::size_t degree_index;
  std::size_t weight_index;
  WeightVector reduction_target;
  WpsCylinder cylinder;
};

struct SumOfTwoWeightsCert {
  std::size_t i;
  std::size_t j;
  CylinderChart chart;
};

struct Codim2ProjectionCert {
  std::size_t i, j, i1, j1, i2, j2;
  std::size_t cylinder_dimension;  // n - 5
};

struct CodimCAssignment {
  std::vector<std::size_t> pivots;                 // i^(l), l = 1..c
  std::vector<std::vector<std::size_t>> partners;  // partners[l][j] = i_j^(l)
};

struct CodimCGeneralizedCert {
  CodimCAssignment assignment;
  std::size_t cylinder_dimension;  // n + 1 - c(c+1)
};

struct TableNonCylCert {
  TableMatch match;
};

struct AlphaAtLeastOneCert {
  TableMatch match;
  std::string citation;
};

using Certificate = std::variant<WpsChartCert, LinearConeCert, SumOfTwoWeightsCert, Codim2ProjectionCert,
                                 CodimCGeneralizedCert, TableNonCylCert, AlphaAtLeastOneCert>;

inline std::string certificate_kind(const Certificate& c) {
  static const char* names[] = {"WpsChart",         "LinearCone",  "SumOfTwoWeights", "Codim2Projection",
                                "CodimCGeneralized", "TableNonCyl", "AlphaAtLeastOne"};
  return names[c.index()];
}

enum class CylinderStatus { Cylindrical, NotCylindrical, Unknown };

inline std::string to_string(CylinderStatus s) {
  switch (s) {
    case CylinderStatus::Cylindrical: return "Cylindrical";
    case CylinderStatus::NotCylindrical: return "NotCylindrical";
    case CylinderStatus::Unknown: return "Unknown";
  }
  return "?";
}

struct CylinderVerdict {
  CylinderStatus status = CylinderStatus::Unknown;
  std::optional<Certificate> certificate;
  std::vector<std::string> citations;
  std::vector<std::string> notes;
  std::vector<std::string> assumptions;
  std::optional<bool> conjectural_prediction;
  bool well_formed = false;
  std::optional<bool> quasi_smooth;  // absent when no criterion applies
};

namespace cite {
inline constexpr const char* kWpsChart = "wps-principal-chart-cylinder";
inline constexpr const char* kLinearCone = "linear-cone-is-wps";
inline constexpr const char* kSumOfTwoWeights = "sum-of-two-weights-cylinder";
inline constexpr const char* kCodim2 = "codim2-projection-cylinder";
inline constexpr const char* kCodimC = "codimc-projection-cylinder";
inline constexpr const char* kSeriesNoCylinder = "del-pezzo-series-no-cylinder-n-gt-2";
inline constexpr const char* kFamily4 = "family-4-no-cylinder";
inline constexpr const char* kAlpha = "alpha-at-least-one-no-cylinder";
inline constexpr const char* kConjecture = "del-pezzo-sum-of-two-weights-conjecture";
}  // namespace cite

// ---------------------------------------------------------------------------
// Searches. All scan indices in ascending order and return the first witness.

inline std::optional<std::pair<std::size_t, std::size_t>> check_sum_of_two_weights(const WciDescriptor& desc) {
  if (desc.codim() != 1) throw InvalidInput("check_sum_of_two_weights needs codimension 1");
  if (desc.n() < 3) return std::nullopt;
  const auto& w = desc.ambient();
  const Weight d = desc.degrees()[0];
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] + w[j] == d) return std::pair{i, j};
  return std::nullopt;
}

inline std::optional<Codim2ProjectionCert> check_codim2_projection(const WciDescriptor& desc) {
  if (desc.codim() != 2) throw InvalidInput("check_codim2_projection needs codimension 2");
  if (desc.n() < 6) return std::nullopt;
  const auto& w = desc.ambient();
  const std::size_t len = w.size();
  const Weight d1 = desc.degrees()[0];
  const Weight d2 = desc.degrees()[1];
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = i + 1; j < len; ++j)
      for (std::size_t i1 = 0; i1 < len; ++i1) {
        if (i1 == i || i1 == j || w[i] + w[i1] != d1) continue;
        for (std::size_t j1 = 0; j1 < len; ++j1) {
          if (j1 == i || j1 == j || j1 == i1 || w[j] + w[j1] != d1) continue;
          for (std::size_t i2 = 0; i2 < len; ++i2) {
            if (i2 == i || i2 == j || i2 == i1 || i2 == j1 || w[i] + w[i2] != d2) continue;
            for (std::size_t j2 = 0; j2 < len; ++j2) {
              if (j2 == i || j2 == j || j2 == i1 || j2 == j1 || j2 == i2 || w[j] + w[j2] != d2) continue;
              return Codim2ProjectionCert{i, j, i1, j1, i2, j2, desc.n() - 5};
            }
          }
        }
      }
  return std::nullopt;
}

// Pivots in ascending combination order; partners filled degree by degree
// (j outer, l inner), each taking the smallest free index.
inline std::optional<CodimCAssignment> check_codimc_generalized(const WciDescriptor& desc) {
  const std::size_t c = desc.codim();
  const std::size_t n = desc.n();
  if (n < c * (c + 1)) return std::nullopt;
  if (c == 1 && n < 3) return std::nullopt;
  const auto& w = desc.ambient();
  const std::size_t len = w.size();
  std::vector<char> used(len, 0);
  CodimCAssignment a{std::vector<std::size_t>(c), std::vector<std::vector<std::size_t>>(c, std::vector<std::size_t>(c))};

  auto fill = [&](auto&& self, std::size_t slot) -> bool {
    if (slot == c * c) return true;
    const std::size_t jdeg = slot / c;
    const std::size_t l = slot % c;
    const Weight need = desc.degrees()[jdeg] - w[a.pivots[l]];
    for (std::size_t k = 0; k < len; ++k) {
      if (used[k] || w[k] != need) continue;
      used[k] = 1;
      a.partners[l][jdeg] = k;
      if (self(self, slot + 1)) return true;
      used[k] = 0;
    }
    return false;
  };
  auto pick = [&](auto&& self, std::size_t l, std::size_t from) -> bool {
    if (l == c) return fill(fill, 0);
    for (std::size_t k = from; k < len; ++k) {
      used[k] = 1;
      a.pivots[l] = k;
      if (self(self, l + 1, k + 1)) return true;
      used[k] = 0;
    }
    return false;
  };
  if (pick(pick, 0, 0)) return a;
  return std::nullopt;
}

// Table-backed certificate that no anti-canonically polar cylinder exists.
inline std::optional<Certificate> check_nonexistence(const WciDescriptor& desc, const Dataset& ds) {
  auto m = ds.match(desc);
  if (!m) return std::nullopt;
  switch (m->table) {
    case TableId::T1:
      if (m->row == 4 || (m->n && *m->n > 2)) return Certificate{TableNonCylCert{*m}};
      return std::nullopt;
    case TableId::T2:
      if (m->row == 2) return std::nullopt;
      return Certificate{AlphaAtLeastOneCert{*m, cite::kAlpha}};
    case TableId::T3:
      if (m->row == 1) return std::nullopt;
      return Certificate{AlphaAtLeastOneCert{*m, cite::kAlpha}};
  }
  return std::nullopt;
}

// Re-checks the arithmetic content of a certificate against the descriptor.
inline bool recheck(const WciDescriptor& desc, const Certificate& cert, const Dataset& ds) {
  const auto& w = desc.ambient();
  const auto& d = desc.degrees();
  auto distinct = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, WpsChartCert>) {
          return c.cylinder.chart.affine_rank >= 1;
        } else if constexpr (std::is_same_v<T, LinearConeCert>) {
          return c.degree_index < d.size() && c.weight_index < w.size() && d[c.degree_index] == w[c.weight_index];
        } else if constexpr (std::is_same_v<T, SumOfTwoWeightsCert>) {
          return desc.codim() == 1 && c.i != c.j && c.i < w.size() && c.j < w.size() && d[0] == w[c.i] + w[c.j];
        } else if constexpr (std::is_same_v<T, Codim2ProjectionCert>) {
          if (desc.codim() != 2 || !distinct({c.i, c.j, c.i1, c.j1, c.i2, c.j2})) return false;
          for (auto k : {c.i, c.j, c.i1, c.j1, c.i2, c.j2})
            if (k >= w.size()) return false;
          return d[0] == w[c.i] + w[c.i1] && d[0] == w[c.j] + w[c.j1] && d[1] == w[c.i] + w[c.i2] &&
                 d[1] == w[c.j] + w[c.j2];
        } else if constexpr (std::is_same_v<T, CodimCGeneralizedCert>) {
          const auto& a = c.assignment;
          const std::size_t cc = desc.codim();
          if (a.pivots.size() != cc || a.partners.size() != cc) return false;
          std::vector<std::size_t> all = a.pivots;
          for (std::size_t l = 0; l < cc; ++l) {
            if (a.partners[l].size() != cc) return false;
            for (std::size_t j = 0; j < cc; ++j) {
              if (a.pivots[l] >= w.size() || a.partners[l][j] >= w.size()) return false;
              if (d[j] != w[a.pivots[l]] + w[a.partners[l][j]]) return false;
              all.push_back(a.partners[l][j]);
            }
          }
          return distinct(all);
        } else {
          const auto& m = c.match;
          return ds.instantiate(m.table, m.row, m.n.value_or(1)).canonical() == desc.canonical();
        }
      },
      cert);
}

// ---------------------------------------------------------------------------
// Verdicts.

inline CylinderVerdict verdict(const WeightVector& w) {
  CylinderVerdict v;
  v.status = CylinderStatus::Cylindrical;
  v.certificate = WpsChartCert{wps_cylinder(w)};
  v.citations = {cite::kWpsChart};
  v.well_formed = is_well_formed(w);
  v.quasi_smooth = true;
  return v;
}

inline CylinderVerdict verdict(const WciDescriptor& desc, const Dataset& ds) {
  CylinderVerdict v;
  const auto& w = desc.ambient();
  const auto cones = linear_cone_flags(desc);
  v.well_formed = well_formed_ci(desc);
  if (cones.empty() && desc.codim() <= 2) {
    try {
      v.quasi_smooth = general_qs(desc, {.record_witnesses = false})->holds;
    } catch (const InvalidInput& e) {
      v.notes.push_back(std::string("quasi-smoothness not decided: ") + e.what());
    }
  }
  const bool hypotheses = v.well_formed && v.quasi_smooth.value_or(true);
  if (!is_well_formed(w))
    v.notes.push_back("ambient not well-formed: normalize first (normalized weights " + to_string(normalize(w).output) + ")");
  if (!v.well_formed) v.notes.push_back("not well-formed: constructive criteria skipped");
  if (v.quasi_smooth == false) v.notes.push_back("general member not quasi-smooth: constructive criteria skipped");

  std::optional<Certificate> constructive;
  std::vector<std::string> constructive_cites;
  if (!cones.empty()) {
    const auto& f = cones.front();
    if (desc.codim() == 1) {
      std::vector<Weight> rest;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != f.weight_index) rest.push_back(w[k]);
      WeightVector target(rest);
      constructive = LinearConeCert{f.degree_index, f.weight_index, target, wps_cylinder(target)};
      constructive_cites = {cite::kLinearCone, cite::kWpsChart};
    } else {
      std::vector<Weight> rest_w, rest_d;
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != f.weight_index) rest_w.push_back(w[k]);
      for (std::size_t k = 0; k < desc.codim(); ++k)
        if (k != f.degree_index) rest_d.push_back(desc.degrees()[k]);
      v.notes.push_back("intersection with a linear cone; reduces to " +
                        to_string(WciDescriptor(std::move(rest_w), std::move(rest_d))));
    }
  } else if (hypotheses) {
    if (desc.codim() == 1) {
      if (auto p = check_sum_of_two_weights(desc)) {
        auto [u, lin] = pivot_and_linear(w, p->first, p->second);
        constructive = SumOfTwoWeightsCert{p->first, p->second, cylinder_chart(desc, u, lin)};
        constructive_cites = {cite::kSumOfTwoWeights, cite::kWpsChart};
        v.assumptions.push_back("base field quadratically closed (normal form may adjoin a square root)");
      }
    } else if (desc.codim() == 2) {
      if (auto p = check_codim2_projection(desc)) {
        constructive = *p;
        constructive_cites = {cite::kCodim2};
      }
    } else if (auto a = check_codimc_generalized(desc)) {
      const std::size_t c = desc.codim();
      constructive = CodimCGeneralizedCert{*a, desc.n() + 1 - c * (c + 1)};
      constructive_cites = {cite::kCodimC};
    }
    if (constructive && !v.quasi_smooth) v.assumptions.push_back("quasi-smoothness assumed (no criterion for c >= 3)");
    if (desc.codim() >= 3 && desc.n() < desc.codim() * (desc.codim() + 1))
      v.notes.push_back("codim-c projection needs n >= c(c+1)");
  }

  auto table = check_nonexistence(desc, ds);
  if (constructive && table)
    throw ClassificationInconsistency("classification inconsistency: " + certificate_kind(*constructive) + " vs " +
                                      certificate_kind(*table) + " for " + to_string(desc));

  if (auto m = ds.match(desc)) {
    v.notes.push_back("table match: " + to_string(*m));
    if (m->table == TableId::T3 && m->row == 1)
      v.notes.push_back("alpha-invariant below 1 for this series; no certificate either way");
    if (m->table == TableId::T2 && m->row == 2)
      v.notes.push_back("alpha >= 1 depends on coefficients (whether the degree-6 equation contains x1*x3)");
    if (m->table == TableId::T1 && !table) {
      v.notes.push_back("small parameter: no non-existence proof issued for n <= 2");
      if (m->row >= 23) v.notes.push_back("alpha-invariant equal to 1 is reported for this series; certificate not issued");
    }
  }

  if (constructive) {
    v.status = CylinderStatus::Cylindrical;
    v.certificate = std::move(constructive);
    v.citations = std::move(constructive_cites);
  } else if (table) {
    v.status = CylinderStatus::NotCylindrical;
    v.certificate = std::move(table);
    if (const auto* t = std::get_if<TableNonCylCert>(&*v.certificate)) {
      v.citations = {t->match.row == 4 ? cite::kFamily4 : cite::kSeriesNoCylinder};
      if (t->match.row == 4 && t->match.n && *t->match.n > 2) v.citations.push_back(cite::kSeriesNoCylinder);
    } else {
      v.citations = {cite::kAlpha};
    }
  }

  // Prediction for quasi-smooth well-formed del Pezzo hypersurfaces.
  if (desc.codim() == 1 && desc.dim() == 2 && cones.empty() && hypotheses &&
      adjunction(desc).amplitude == Amplitude::Fano) {
    bool any = false;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) any = any || w[i] + w[j] == desc.degrees()[0];
    v.conjectural_prediction = any;
    v.citations.push_back(cite::kConjecture);
  }
  return v;
}

}  // namespace wfci
