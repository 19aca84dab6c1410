#pragma once

// Classification tables: del Pezzo hypersurface series (T1), sporadic
// codimension-two del Pezzo surfaces of index one (T2) and the matching
// infinite series (T3). Rows are linear in a parameter n >= 1.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wfci/error.hpp"
#include "wfci/tables_data.hpp"
#include "wfci/wci.hpp"
#include "wfci/wps.hpp"

namespace wfci {

enum class TableId { T1, T2, T3 };

inline std::string to_string(TableId t) {
  switch (t) {
    case TableId::T1: return "T1";
    case TableId::T2: return "T2";
    case TableId::T3: return "T3";
  }
  return "?";
}

inline TableId parse_table_id(std::string_view s) {
  if (s == "T1") return TableId::T1;
  if (s == "T2") return TableId::T2;
  if (s == "T3") return TableId::T3;
  throw InvalidInput("unknown table id '" + std::string(s) + "'");
}

inline constexpr std::size_t expected_row_count(TableId t) {
  switch (t) {
    case TableId::T1: return 35;
    case TableId::T2: return 37;
    case TableId::T3: return 3;
  }
  return 0;
}

// FNV-1a (64 bit) of the dataset bytes.
inline constexpr std::uint64_t kDatasetChecksum = 0x2acea78f84a3636fULL;

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct LinearForm {
  Weight slope;
  Weight intercept;
  Weight at(Weight n) const { return slope * n + intercept; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

struct FamilyRow {
  TableId table;
  int row;
  std::vector<LinearForm> weight_formulas;
  std::vector<LinearForm> degree_formulas;
  std::string k_metadata;

  bool sporadic() const {
    for (const auto& f : weight_formulas)
      if (f.slope) return false;
    for (const auto& f : degree_formulas)
      if (f.slope) return false;
    return true;
  }

  WciDescriptor at(Weight n) const {
    if (!sporadic() && n < 1) throw InvalidInput("parameter n must be >= 1");
    std::vector<Weight> w, d;
    for (const auto& f : weight_formulas) w.push_back(f.at(n));
    for (const auto& f : degree_formulas) d.push_back(f.at(n));
    return WciDescriptor(std::move(w), std::move(d));
  }
};

struct TableMatch {
  TableId table;
  int row;
  std::optional<Weight> n;  // absent for sporadic rows
  friend bool operator==(const TableMatch&, const TableMatch&) = default;
};

inline std::string to_string(const TableMatch& m) {
  std::string s = to_string(m.table) + " row " + std::to_string(m.row);
  if (m.n) s += " n=" + std::to_string(*m.n);
  return s;
}

namespace detail {

// RFC 4180 subset: quoted fields with doubled quotes, no embedded newlines.
inline std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  if (quoted) throw DataIntegrityError("line " + std::to_string(line_no) + ": unterminated quote");
  return cells;
}

inline std::vector<Weight> parse_int_list(const std::string& s, std::size_t line_no) {
  std::vector<Weight> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw DataIntegrityError("line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

inline std::vector<LinearForm> zip_forms(const std::vector<Weight>& slopes, const std::vector<Weight>& intercepts,
                                         std::size_t line_no) {
  if (slopes.size() != intercepts.size() || slopes.empty())
    throw DataIntegrityError("line " + std::to_string(line_no) + ": slope/intercept length mismatch");
  std::vector<LinearForm> out;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (slopes[i] < 0) throw DataIntegrityError("line " + std::to_string(line_no) + ": negative slope");
    out.push_back({slopes[i], intercepts[i]});
  }
  return out;
}

}  // namespace detail

class Dataset {
 public:
  // Parses and validates CSV text. With verify_checksum, the bytes must
  // hash to kDatasetChecksum.
  static Dataset from_csv(std::string_view text, bool verify_checksum = true) {
    if (verify_checksum && fnv1a64(text) != kDatasetChecksum)
      throw DataIntegrityError("dataset checksum mismatch");
    Dataset ds;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.empty()) continue;
      auto cells = detail::split_csv_line(line, line_no);
      if (cells.size() != 7) throw DataIntegrityError("line " + std::to_string(line_no) + ": expected 7 columns");
      if (header) {
        if (cells[0] != "table" || cells[6] != "k_metadata")
          throw DataIntegrityError("dataset header not recognized");
        header = false;
        continue;
      }
      FamilyRow r;
      try {
        r.table = parse_table_id(cells[0]);
      } catch (const InvalidInput& e) {
        throw DataIntegrityError("line " + std::to_string(line_no) + ": " + e.what());
      }
      auto ids = detail::parse_int_list(cells[1], line_no);
      if (ids.size() != 1) throw DataIntegrityError("line " + std::to_string(line_no) + ": bad row id");
      r.row = static_cast<int>(ids[0]);
      r.weight_formulas = detail::zip_forms(detail::parse_int_list(cells[2], line_no),
                                            detail::parse_int_list(cells[3], line_no), line_no);
      r.degree_formulas = detail::zip_forms(detail::parse_int_list(cells[4], line_no),
                                            detail::parse_int_list(cells[5], line_no), line_no);
      r.k_metadata = cells[6];
      if (r.table == TableId::T2 && !r.sporadic())
        throw DataIntegrityError("line " + std::to_string(line_no) + ": sporadic row with nonzero slope");
      for (const auto& f : r.weight_formulas)
        if (f.at(1) < 1) throw DataIntegrityError("line " + std::to_string(line_no) + ": nonpositive weight at n=1");
      for (const auto& f : r.degree_formulas)
        if (f.at(1) < 1) throw DataIntegrityError("line " + std::to_string(line_no) + ": nonpositive degree at n=1");
      ds.rows_.push_back(std::move(r));
    }
    ds.check_complete();
    return ds;
  }

  static Dataset embedded() { return from_csv(kEmbeddedTables); }

  static Dataset from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read dataset '" + path + "'");
    return from_csv(buf.str());
  }

  // WFCI_DATA, when set, names a replacement file; the checksum still applies.
  static Dataset load() {
    if (const char* path = std::getenv("WFCI_DATA"); path && *path) return from_file(path);
    return embedded();
  }

  const std::vector<FamilyRow>& rows() const noexcept { return rows_; }

  const FamilyRow& row(TableId t, int id) const {
    for (const auto& r : rows_)
      if (r.table == t && r.row == id) return r;
    throw InvalidInput("unknown row " + to_string(t) + " #" + std::to_string(id));
  }

  WciDescriptor instantiate(TableId t, int id, Weight n = 1) const { return row(t, id).at(n); }

  // First row (tables in order T1, T2, T3) instantiating to the same
  // sorted weights and degrees.
  std::optional<TableMatch> match(const WciDescriptor& desc) const {
    auto all = match_all(desc);
    if (all.empty()) return std::nullopt;
    return all.front();
  }

  std::vector<TableMatch> match_all(const WciDescriptor& desc) const {
    const auto target = desc.canonical();
    std::vector<TableMatch> out;
    for (const auto& r : rows_) {
      if (r.weight_formulas.size() != target.ambient().size() || r.degree_formulas.size() != target.codim()) continue;
      if (r.sporadic()) {
        if (r.at(1).canonical() == target) out.push_back({r.table, r.row, std::nullopt});
        continue;
      }
      Weight slope = 0, intercept = 0;
      for (const auto& f : r.weight_formulas) {
        slope += f.slope;
        intercept += f.intercept;
      }
      const Weight diff = target.ambient().sum() - intercept;
      if (diff % slope != 0) continue;
      const Weight n = diff / slope;
      if (n < 1) continue;
      if (r.at(n).canonical() == target) out.push_back({r.table, r.row, n});
    }
    return out;
  }

 private:
  void check_complete() const {
    for (TableId t : {TableId::T1, TableId::T2, TableId::T3}) {
      std::vector<int> ids;
      for (const auto& r : rows_)
        if (r.table == t) ids.push_back(r.row);
      std::sort(ids.begin(), ids.end());
      bool ok = ids.size() == expected_row_count(t);
      for (std::size_t i = 0; ok && i < ids.size(); ++i) ok = ids[i] == static_cast<int>(i + 1);
      if (!ok) throw DataIntegrityError("table " + to_string(t) + " does not have rows 1.." +
                                        std::to_string(expected_row_count(t)));
    }
  }

  std::vector<FamilyRow> rows_;
};

struct Violation {
  TableId table;
  int row;
  std::optional<Weight> n;
  std::string message;
};

struct VerificationReport {
  std::size_t rows_checked = 0;
  std::size_t instantiations = 0;
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Checks each instantiation with n <= n_max: well-formed ambient and
// subvariety, no linear cone, general member quasi-smooth; T1 rows Fano
// (row 4 of index n), T2/T3 rows of index one.
inline VerificationReport verify_all(const Dataset& ds, Weight n_max) {
  if (n_max < 1) throw InvalidInput("n_max must be >= 1");
  VerificationReport rep;
  for (const auto& r : ds.rows()) {
    ++rep.rows_checked;
    const Weight top = r.sporadic() ? 1 : n_max;
    for (Weight n = 1; n <= top; ++n) {
      ++rep.instantiations;
      const auto nn = r.sporadic() ? std::nullopt : std::optional<Weight>(n);
      auto fail = [&](const std::string& msg) { rep.violations.push_back({r.table, r.row, nn, msg}); };
      const auto x = r.at(n);
      if (!is_well_formed(x.ambient())) fail("ambient not well-formed");
      if (!well_formed_ci(x)) fail("not well-formed");
      if (!linear_cone_flags(x).empty()) {
        fail("linear cone");
      } else {
        auto qs = general_qs(x, {.record_witnesses = false});
        if (!qs || !qs->holds) fail("general member not quasi-smooth");
      }
      const auto adj = adjunction(x);
      if (r.table == TableId::T1) {
        if (adj.amplitude != Amplitude::Fano) fail("not Fano");
        if (r.row == 4 && adj.fano_index != n) fail("Fano index differs from n");
      } else if (adj.fano_index != Weight{1}) {
        fail("Fano index is not 1");
      }
    }
  }
  return rep;
}

}  // namespace wfci
