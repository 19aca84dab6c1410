#pragma once

// JSON encodings of every public result type, plus the polynomial input
// format read by the normal-form command.

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wfci/cylinder.hpp"
#include "wfci/enumerate.hpp"
#include "wfci/graded_poly.hpp"
#include "wfci/tables.hpp"
#include "wfci/wci.hpp"
#include "wfci/wps.hpp"

namespace wfci {

using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are numbers; larger ones are decimal strings.
inline Json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(z));
  return Json(z.str());
}

inline Json integers_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(integer_json(z));
  return a;
}

inline Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(integers_json(m.row(r)));
  return rows;
}

inline Json to_json(const WeightVector& w) { return Json(w.values()); }

inline Json to_json(const NormalizationTrace& t) {
  return Json{{"input", to_json(t.input)},
              {"common_factor_removed", t.common_factor_removed},
              {"divisors", t.divisors},
              {"multipliers", t.multipliers},
              {"reduced", t.reduced},
              {"output", to_json(t.output)}};
}

inline Json to_json(const SingularStratum& s) { return Json{{"indices", s.indices}, {"gcd", s.stratum_gcd}}; }

inline Json to_json(const ChartDescription& c) {
  return Json{{"chart_subset", c.chart_subset},
              {"bezout_coefficients", integers_json(c.bezout_coefficients)},
              {"exponent_matrix", matrix_json(c.exponent_matrix.matrix())},
              {"torus_rank", c.torus_rank},
              {"affine_rank", c.affine_rank}};
}

inline Json to_json(const PolarComponent& p) {
  return Json{{"hyperplane", p.index}, {"multiplicity", to_string(p.multiplicity)}};
}

inline Json polar_json(const std::vector<PolarComponent>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

inline Json to_json(const WpsCylinder& c) {
  return Json{{"normalized_weights", to_json(c.normalization.output)},
              {"chart", to_json(c.chart)},
              {"polar_divisor", polar_json(c.polar)}};
}

inline Json to_json(const Monomial& m) { return Json(m.exponents); }

inline Json to_json(const GradedPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json t{{"coeff", to_string(c.base())}};
    if (c.has_radical()) {
      t["radical"] = to_string(c.radical());
      t["radicand"] = integer_json(c.radicand());
    }
    t["exps"] = to_json(m);
    terms.push_back(std::move(t));
  }
  return Json{{"weights", to_json(p.ambient())}, {"degree", p.degree()}, {"terms", std::move(terms)}};
}

namespace detail {

inline Rational rational_field(const Json& t, const char* key) {
  const auto& v = t.at(key);
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InvalidInput(std::string("field '") + key + "' must be a string \"p/q\" or an integer");
}

}  // namespace detail

inline GradedPolynomial polynomial_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InvalidInput("polynomial must be a JSON object");
    WeightVector w(j.at("weights").get<std::vector<Weight>>());
    const auto degree = j.at("degree").get<Weight>();
    GradedPolynomial p(w, degree);
    for (const auto& t : j.at("terms")) {
      auto exps = t.at("exps").get<std::vector<long long>>();
      if (exps.size() != w.size()) throw InvalidInput("term exponent vector has the wrong length");
      Monomial m = Monomial::one(w.size());
      for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0) throw InvalidInput("negative exponent");
        m.exponents[i] = static_cast<Exponent>(exps[i]);
      }
      Rational base = detail::rational_field(t, "coeff");
      Rational radical = t.contains("radical") ? detail::rational_field(t, "radical") : Rational(0);
      Integer radicand = 1;
      if (t.contains("radicand")) {
        const auto& r = t.at("radicand");
        radicand = r.is_string() ? Integer(r.get<std::string>()) : Integer(r.get<long long>());
      }
      p.add_term(m, Coefficient(base, radical, radicand));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed polynomial JSON: ") + e.what());
  }
}

inline Json to_json(const SubsetWitness& w) {
  Json j{{"subset", w.subset}, {"condition", w.condition}};
  Json mons = Json::array();
  for (const auto& m : w.monomials) mons.push_back(m ? to_json(*m) : Json());
  j["monomials"] = std::move(mons);
  j["partners"] = w.partners;
  return j;
}

inline Json to_json(const QsVerdict& v) {
  Json ws = Json::array();
  for (const auto& w : v.witnesses) ws.push_back(to_json(w));
  return Json{{"holds", v.holds},
              {"failing_subset", v.failing_subset ? Json(*v.failing_subset) : Json()},
              {"witnesses", std::move(ws)}};
}

inline Json to_json(const AdjunctionData& a) {
  return Json{{"canonical_coefficient", a.canonical_coefficient},
              {"amplitude", to_string(a.amplitude)},
              {"fano_index", a.fano_index ? Json(*a.fano_index) : Json()},
              {"hypotheses_verified", a.hypotheses_verified}};
}

inline Json to_json(const WciDescriptor& x) {
  return Json{{"weights", to_json(x.ambient())}, {"degrees", x.degrees()}};
}

inline Json to_json(const TableMatch& m) {
  return Json{{"table", to_string(m.table)}, {"row", m.row}, {"n", m.n ? Json(*m.n) : Json()}};
}

inline Json to_json(const CylinderChart& c) {
  return Json{{"pivot", c.pivot},
              {"projected_away", c.projected_away},
              {"projected_weights", to_json(c.projected_ambient)},
              {"chart", to_json(c.chart)},
              {"chart_subset_original", c.chart_subset_original},
              {"polar_divisor", polar_json(c.polar)},
              {"anticanonical_degree", c.anticanonical_degree}};
}

inline Json to_json(const Certificate& cert) {
  Json j{{"kind", certificate_kind(cert)}};
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, WpsChartCert>) {
          j["cylinder"] = to_json(c.cylinder);
        } else if constexpr (std::is_same_v<T, LinearConeCert>) {
          j["degree_index"] = c.degree_index;
          j["weight_index"] = c.weight_index;
          j["reduction_target"] = to_json(c.reduction_target);
          j["cylinder"] = to_json(c.cylinder);
        } else if constexpr (std::is_same_v<T, SumOfTwoWeightsCert>) {
          j["i"] = c.i;
          j["j"] = c.j;
          j["chart"] = to_json(c.chart);
        } else if constexpr (std::is_same_v<T, Codim2ProjectionCert>) {
          j["i"] = c.i;
          j["j"] = c.j;
          j["i1"] = c.i1;
          j["j1"] = c.j1;
          j["i2"] = c.i2;
          j["j2"] = c.j2;
          j["cylinder_dimension"] = c.cylinder_dimension;
        } else if constexpr (std::is_same_v<T, CodimCGeneralizedCert>) {
          j["pivots"] = c.assignment.pivots;
          j["partners"] = c.assignment.partners;
          j["cylinder_dimension"] = c.cylinder_dimension;
        } else if constexpr (std::is_same_v<T, TableNonCylCert>) {
          j["match"] = to_json(c.match);
        } else {
          j["match"] = to_json(c.match);
          j["citation"] = c.citation;
        }
      },
      cert);
  return j;
}

inline Json to_json(const CylinderVerdict& v) {
  return Json{{"status", to_string(v.status)},
              {"certificate", v.certificate ? to_json(*v.certificate) : Json()},
              {"citations", v.citations},
              {"conjectural", v.conjectural_prediction ? Json(*v.conjectural_prediction) : Json()},
              {"notes", v.notes},
              {"assumptions", v.assumptions},
              {"well_formed", v.well_formed},
              {"quasi_smooth", v.quasi_smooth ? Json(*v.quasi_smooth) : Json()}};
}

inline Json to_json(const NormalFormResult& r) {
  Json changes = Json::array();
  for (const auto& s : r.change_sequence) {
    Json assigns = Json::array();
    for (const auto& [i, p] : s.substitution.assignments)
      assigns.push_back(Json{{"variable", i}, {"replacement", to_json(p)}});
    changes.push_back(Json{{"description", s.description}, {"assignments", std::move(assigns)}});
  }
  return Json{{"pair", {r.i, r.j}},
              {"pivot", r.pivot},
              {"linear", r.linear},
              {"change_sequence", std::move(changes)},
              {"result", to_json(r.result)},
              {"G", to_json(r.g)},
              {"extension_used", r.extension_used ? integer_json(*r.extension_used) : Json()}};
}

inline Json to_json(const CandidateRecord& r) {
  return Json{{"weights", to_json(r.descriptor.ambient())},
              {"degrees", r.descriptor.degrees()},
              {"adjunction", to_json(r.adjunction)},
              {"quasi_smooth", r.quasi_smooth ? Json(*r.quasi_smooth) : Json()},
              {"verdict", to_json(r.verdict)},
              {"table_match", r.table_match ? to_json(*r.table_match) : Json()}};
}

inline Json to_json(const VerificationReport& rep) {
  Json vs = Json::array();
  for (const auto& v : rep.violations)
    vs.push_back(Json{{"table", to_string(v.table)},
                      {"row", v.row},
                      {"n", v.n ? Json(*v.n) : Json()},
                      {"message", v.message}});
  return Json{{"ok", rep.ok()},
              {"rows_checked", rep.rows_checked},
              {"instantiations", rep.instantiations},
              {"violations", std::move(vs)}};
}

inline std::string csv_header() {
  return "weights,degrees,canonical_coefficient,amplitude,fano_index,quasi_smooth,status,certificate,table_match";
}

inline std::string to_csv(const CandidateRecord& r) {
  auto join = [](const std::vector<Weight>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
    return s;
  };
  std::string out = join(r.descriptor.ambient().values()) + "," + join(r.descriptor.degrees()) + ",";
  out += std::to_string(r.adjunction.canonical_coefficient) + "," + to_string(r.adjunction.amplitude) + ",";
  out += (r.adjunction.fano_index ? std::to_string(*r.adjunction.fano_index) : "") + ",";
  out += (r.quasi_smooth ? (*r.quasi_smooth ? "true" : "false") : "") + std::string(",");
  out += to_string(r.verdict.status) + ",";
  out += (r.verdict.certificate ? certificate_kind(*r.verdict.certificate) : "") + ",";
  out += r.table_match ? to_string(*r.table_match) : "";
  return out;
}

}  // namespace wfci
