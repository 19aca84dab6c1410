// Command-line front end: analyze, verify-tables, enumerate, normal-form.
//
// Exit codes: 0 ok, 1 verification found violations, 2 usage, 3 data
// integrity, 4 I/O, 5 mathematical precondition.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wfci/wfci.hpp"

namespace {

enum ExitCode : int { kOk = 0, kViolations = 1, kUsage = 2, kDataIntegrity = 3, kIo = 4, kPrecondition = 5 };

constexpr const char* kRecordHelp =
    "JSONL record fields: weights, degrees, adjunction{canonical_coefficient, amplitude, fano_index,\n"
    "hypotheses_verified}, quasi_smooth, verdict{status, certificate{kind,...}, citations, conjectural,\n"
    "notes, assumptions, well_formed, quasi_smooth}, table_match{table, row, n}.\n"
    "Schemas for every payload ship in schemas/.";

std::vector<wfci::Weight> parse_list(const std::string& text, const char* flag) {
  std::vector<wfci::Weight> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw wfci::InvalidInput(std::string(flag) + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw wfci::InvalidInput(std::string(flag) + ": empty list");
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw wfci::IoError("cannot open '" + path + "' for writing");
      path_ = path;
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  void finish() {
    stream().flush();
    if (!stream()) throw wfci::IoError("write failed" + (path_.empty() ? std::string() : " on '" + path_ + "'"));
  }

 private:
  std::ofstream file_;
  std::string path_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

wfci::Json analyze_wps(const wfci::WeightVector& w) {
  auto trace = wfci::normalize(w);
  wfci::Json strata = wfci::Json::array();
  for (const auto& s : wfci::singular_strata(trace.output)) strata.push_back(wfci::to_json(s));
  wfci::Json j{{"weights", wfci::to_json(w)},
               {"normalization", wfci::to_json(trace)},
               {"ambient_well_formed", wfci::is_well_formed(w)},
               {"singular_strata", std::move(strata)}};
  j["cylinder"] = wfci::to_json(wfci::verdict(w));
  return j;
}

wfci::Json analyze_wci(const wfci::WciDescriptor& x, const wfci::Dataset& ds) {
  const auto& w = x.ambient();
  auto trace = wfci::normalize(w);
  wfci::Json strata = wfci::Json::array();
  for (const auto& s : wfci::singular_strata(trace.output)) strata.push_back(wfci::to_json(s));
  wfci::Json cones = wfci::Json::array();
  for (const auto& f : wfci::linear_cone_flags(x))
    cones.push_back(wfci::Json{{"degree_index", f.degree_index}, {"weight_index", f.weight_index}});
  wfci::Json qs;
  try {
    auto v = wfci::general_qs(x);
    if (v) qs = wfci::to_json(*v);
  } catch (const wfci::InvalidInput& e) {
    qs = wfci::Json{{"inapplicable", e.what()}};
  }
  auto m = ds.match(x);
  wfci::Json j{{"weights", wfci::to_json(w)},
               {"degrees", x.degrees()},
               {"normalization", wfci::to_json(trace)},
               {"ambient_well_formed", wfci::is_well_formed(w)},
               {"singular_strata_of_normalized", std::move(strata)},
               {"well_formed", wfci::well_formed_ci(x)},
               {"linear_cone_flags", std::move(cones)},
               {"quasi_smooth", std::move(qs)},
               {"adjunction", wfci::to_json(wfci::adjunction(x))},
               {"table_match", m ? wfci::to_json(*m) : wfci::Json()}};
  j["cylinder"] = wfci::to_json(wfci::verdict(x, ds));
  return j;
}

void print_verdict_text(std::ostream& os, const wfci::Json& v) {
  os << "cylinder status: " << v["status"].get<std::string>() << "\n";
  if (!v["certificate"].is_null()) os << "certificate: " << v["certificate"].dump() << "\n";
  for (const auto& c : v["citations"]) os << "citation: " << c.get<std::string>() << "\n";
  if (!v["conjectural"].is_null()) os << "conjectural prediction: " << yes_no(v["conjectural"].get<bool>()) << "\n";
  for (const auto& n : v["notes"]) os << "note: " << n.get<std::string>() << "\n";
  for (const auto& a : v["assumptions"]) os << "assumption: " << a.get<std::string>() << "\n";
}

void print_analysis_text(std::ostream& os, const wfci::Json& j) {
  os << "weights: " << j["weights"].dump() << "\n";
  if (j.contains("degrees")) os << "degrees: " << j["degrees"].dump() << "\n";
  os << "normalized: " << j["normalization"]["output"].dump() << "\n";
  os << "ambient well-formed: " << yes_no(j["ambient_well_formed"].get<bool>()) << "\n";
  const bool own = j.contains("singular_strata");
  const auto& strata = own ? j["singular_strata"] : j["singular_strata_of_normalized"];
  const char* label = own ? "singular stratum: " : "singular stratum (normalized weights): ";
  for (const auto& s : strata) os << label << s["indices"].dump() << " gcd " << s["gcd"] << "\n";
  if (j.contains("well_formed")) {
    os << "well-formed: " << yes_no(j["well_formed"].get<bool>()) << "\n";
    os << "linear cone: " << yes_no(!j["linear_cone_flags"].empty()) << "\n";
    const auto& qs = j["quasi_smooth"];
    if (qs.is_null())
      os << "quasi-smooth: no criterion for this codimension\n";
    else if (qs.contains("inapplicable"))
      os << "quasi-smooth: " << qs["inapplicable"].get<std::string>() << "\n";
    else
      os << "quasi-smooth: " << yes_no(qs["holds"].get<bool>()) << "\n";
    const auto& a = j["adjunction"];
    os << "canonical coefficient: " << a["canonical_coefficient"] << " (" << a["amplitude"].get<std::string>() << ")\n";
    if (!a["fano_index"].is_null()) os << "fano index: " << a["fano_index"] << "\n";
    if (!j["table_match"].is_null()) os << "table match: " << j["table_match"].dump() << "\n";
  }
  print_verdict_text(os, j["cylinder"]);
}

int run_analyze(const std::string& weights, const std::string& degrees, const std::string& format) {
  wfci::WeightVector w(parse_list(weights, "--weights"));
  wfci::Json j;
  if (degrees.empty()) {
    j = analyze_wps(w);
  } else {
    wfci::WciDescriptor x(w, parse_list(degrees, "--degrees"));
    j = analyze_wci(x, wfci::Dataset::load());
  }
  if (format == "text")
    print_analysis_text(std::cout, j);
  else
    std::cout << j.dump(format == "jsonl" ? -1 : 2) << "\n";
  return kOk;
}

int run_verify(wfci::Weight n_max, const std::string& format) {
  auto rep = wfci::verify_all(wfci::Dataset::load(), n_max);
  if (format == "text") {
    std::cout << "rows checked: " << rep.rows_checked << "\ninstantiations: " << rep.instantiations
              << "\nviolations: " << rep.violations.size() << "\n";
    for (const auto& v : rep.violations)
      std::cout << wfci::to_string(v.table) << " #" << v.row << (v.n ? " n=" + std::to_string(*v.n) : "") << ": "
                << v.message << "\n";
  } else {
    std::cout << wfci::to_json(rep).dump(format == "jsonl" ? -1 : 2) << "\n";
  }
  return rep.ok() ? kOk : kViolations;
}

int run_enumerate(const wfci::SearchConfig& cfg, const std::string& out_path, const std::string& format) {
  cfg.validate();
  const auto ds = wfci::Dataset::load();
  Output out(out_path);
  auto& os = out.stream();
  if (format == "csv") os << wfci::csv_header() << "\n";
  std::size_t matched = 0, cylindrical = 0, not_cylindrical = 0;
  const auto count = wfci::enumerate(cfg, ds, [&](const wfci::CandidateRecord& r) {
    if (r.table_match) ++matched;
    if (r.verdict.status == wfci::CylinderStatus::Cylindrical) ++cylindrical;
    if (r.verdict.status == wfci::CylinderStatus::NotCylindrical) ++not_cylindrical;
    if (format == "csv")
      os << wfci::to_csv(r) << "\n";
    else if (format == "text")
      os << wfci::to_string(r.descriptor) << "  " << wfci::to_string(r.verdict.status)
         << (r.table_match ? "  " + wfci::to_string(*r.table_match) : "") << "\n";
    else
      os << wfci::to_json(r).dump() << "\n";
  });
  out.finish();
  std::cerr << "records: " << count << ", table matches: " << matched << ", cylindrical: " << cylindrical
            << ", not cylindrical: " << not_cylindrical << ", unknown: " << count - cylindrical - not_cylindrical
            << "\n";
  return kOk;
}

wfci::Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wfci::IoError("cannot open '" + path + "'");
  try {
    return wfci::Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw wfci::InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

int run_normal_form(const std::string& input, const std::string& weights, const std::string& pair,
                    std::uint64_t seed, const std::string& out_path, const std::string& format) {
  auto ij = parse_list(pair, "--pair");
  if (ij.size() != 2 || ij[0] < 0 || ij[1] < 0) throw wfci::InvalidInput("--pair needs two indices i,j");
  const auto i = static_cast<std::size_t>(ij[0]);
  const auto j = static_cast<std::size_t>(ij[1]);
  std::optional<wfci::GradedPolynomial> f;
  if (!input.empty()) {
    f = wfci::polynomial_from_json(read_json_file(input));
  } else {
    if (weights.empty()) throw wfci::InvalidInput("normal-form needs --input or --weights");
    wfci::WeightVector w(parse_list(weights, "--weights"));
    if (i >= w.size() || j >= w.size()) throw wfci::InvalidInput("--pair index out of range");
    f = wfci::generic_member(w, w[i] + w[j], seed);
  }
  auto nf = wfci::normal_form(*f, i, j);
  Output out(out_path);
  if (format == "text") {
    out.stream() << "input: " << wfci::to_string(*f) << "\n";
    for (const auto& s : nf.change_sequence) out.stream() << "change: " << s.description << "\n";
    out.stream() << "result: " << wfci::to_string(nf.result) << "\nG: " << wfci::to_string(nf.g) << "\n";
    if (nf.extension_used) out.stream() << "extension: sqrt(" << wfci::to_string(*nf.extension_used) << ")\n";
  } else {
    out.stream() << wfci::to_json(nf).dump(format == "jsonl" ? -1 : 2) << "\n";
  }
  out.finish();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted complete intersections: well-formedness, quasi-smoothness and cylinders"};
  app.footer(kRecordHelp);
  app.require_subcommand(1);

  std::string weights, degrees, out_path, pair, input;
  std::string format = "json";
  wfci::Weight n_max = 20;
  wfci::SearchConfig cfg;
  wfci::Weight index = 0;
  std::uint64_t seed = 1;
  const std::vector<std::string> formats{"json", "jsonl", "csv", "text"};

  auto* analyze = app.add_subcommand("analyze", "Analyze P(w) or a complete intersection X_d in P(w)");
  analyze->add_option("--weights", weights, "comma-separated weights")->required();
  analyze->add_option("--degrees", degrees, "comma-separated degrees; omit for the ambient space alone");
  analyze->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "jsonl", "text"}));

  auto* verify = app.add_subcommand("verify-tables", "Check every table row for n = 1..n-max");
  verify->add_option("--n-max", n_max, "largest n to instantiate")->check(CLI::PositiveNumber);
  verify->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "jsonl", "text"}));

  auto* enumerate = app.add_subcommand("enumerate", "List quasi-smooth well-formed candidates");
  enumerate->add_option("--dim", cfg.dim, "dimension")->required();
  enumerate->add_option("--codim", cfg.codim, "codimension (1 or 2)")->required();
  enumerate->add_option("--index", index, "keep only Fano index I (sum of degrees = sum of weights - I)");
  enumerate->add_option("--max-weight", cfg.max_weight, "largest weight")->required();
  enumerate->add_option("--out", out_path, "output file (default stdout)");
  enumerate->add_option("--format", format, "output format")->check(CLI::IsMember({"jsonl", "csv", "text"}));
  enumerate->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  enumerate->add_flag("!--include-linear-cones", cfg.exclude_linear_cones, "keep linear cones");

  auto* nform = app.add_subcommand("normal-form", "Bring F with deg F = a_i + a_j to x_u x_v + G");
  nform->add_option("--input", input, "polynomial JSON file");
  nform->add_option("--weights", weights, "generate a seeded general member instead of reading --input");
  nform->add_option("--seed", seed, "seed for the general member");
  nform->add_option("--pair", pair, "indices i,j")->required();
  nform->add_option("--out", out_path, "output file (default stdout)");
  nform->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "jsonl", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return run_analyze(weights, degrees, format);
    if (*verify) return run_verify(n_max, format);
    if (*enumerate) {
      if (format == "json") format = "jsonl";
      if (enumerate->count("--index")) cfg.index_filter = index;
      return run_enumerate(cfg, out_path, format);
    }
    if (*nform) return run_normal_form(input, weights, pair, seed, out_path, format);
  } catch (const wfci::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const wfci::DataIntegrityError& e) {
    std::cerr << "data integrity error: " << e.what() << "\n";
    return kDataIntegrity;
  } catch (const wfci::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const wfci::PreconditionViolation& e) {
    std::cerr << "precondition violated [" << e.tag() << "]: " << e.what() << "\n";
    return kPrecondition;
  } catch (const wfci::ClassificationInconsistency& e) {
    std::cerr << "classification inconsistency: " << e.what() << "\n";
    return kDataIntegrity;
  }
  return kUsage;
}
