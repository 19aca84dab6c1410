#pragma once

// Bounded exhaustive search for well-formed weighted complete
// intersections whose general member is quasi-smooth.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "wfci/cylinder.hpp"
#include "wfci/error.hpp"
#include "wfci/graded_poly.hpp"
#include "wfci/tables.hpp"
#include "wfci/wci.hpp"
#include "wfci/wps.hpp"

namespace wfci {

struct SearchConfig {
  std::size_t dim = 2;
  std::size_t codim = 2;
  Weight max_weight = 5;
  std::optional<Weight> index_filter;
  std::optional<Amplitude> amplitude_filter;
  bool exclude_linear_cones = true;
  std::size_t jobs = 1;

  void validate() const {
    if (dim < 1) throw InvalidInput("dim must be >= 1");
    if (codim < 1 || codim > 2)
      throw InvalidInput("codim " + std::to_string(codim) + " unsupported: no general QS criterion");
    if (max_weight < 1) throw InvalidInput("max_weight must be >= 1");
    if (dim + codim + 1 > RepresentabilityTable::kMaxVariables) throw InvalidInput("too many weights");
    if (index_filter && *index_filter < 1) throw InvalidInput("index filter must be positive");
    if (jobs < 1) throw InvalidInput("jobs must be >= 1");
  }
};

struct CandidateRecord {
  WciDescriptor descriptor;
  AdjunctionData adjunction;
  std::optional<bool> quasi_smooth;  // absent for linear cones
  CylinderVerdict verdict;
  std::optional<TableMatch> table_match;
};

// Pairs (a_0, a_1) with a_0 <= a_1 <= max_weight, in lexicographic order.
using Prefix = std::pair<Weight, Weight>;

struct Shard {
  std::vector<Prefix> prefixes;
};

// Contiguous runs of the prefix list, balanced by an estimate of the
// number of completions below each prefix.
inline std::vector<Shard> partition(const SearchConfig& config, std::size_t shard_count) {
  config.validate();
  if (shard_count < 1) throw InvalidInput("shard_count must be >= 1");
  std::vector<Prefix> all;
  std::vector<double> cost;
  const std::size_t tail = config.dim + config.codim - 1;  // weights after the prefix
  for (Weight a0 = 1; a0 <= config.max_weight; ++a0)
    for (Weight a1 = a0; a1 <= config.max_weight; ++a1) {
      all.emplace_back(a0, a1);
      cost.push_back(std::pow(static_cast<double>(config.max_weight - a1 + 1), static_cast<double>(tail)));
    }
  double total = 0;
  for (double c : cost) total += c;
  std::vector<Shard> shards(shard_count);
  double acc = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    auto s = static_cast<std::size_t>(acc / total * static_cast<double>(shard_count));
    shards[std::min(s, shard_count - 1)].prefixes.push_back(all[k]);
    acc += cost[k];
  }
  return shards;
}

namespace detail {

inline void search_prefix(const SearchConfig& cfg, const Dataset& ds, Prefix prefix,
                          std::vector<CandidateRecord>& out) {
  const std::size_t len = cfg.dim + cfg.codim + 1;
  const std::size_t n = len - 1;
  std::vector<Weight> w{prefix.first, prefix.second};
  w.reserve(len);

  auto emit_degrees = [&](const WeightVector& wv) {
    const Weight total = wv.sum();
    Weight dmax = total;
    if (cfg.amplitude_filter == Amplitude::Fano) dmax = total - 1;
    if (cfg.index_filter) dmax = std::min(dmax, total - *cfg.index_filter);
    if (dmax < 2) return;
    const RepresentabilityTable table(wv, dmax);
    std::vector<Weight> d(cfg.codim);

    auto consider = [&]() {
      WciDescriptor x(wv, d);
      const Weight k = x.degree_sum() - total;
      if (cfg.index_filter && k != -*cfg.index_filter) return;
      if (cfg.amplitude_filter) {
        const Amplitude a = k < 0 ? Amplitude::Fano : k == 0 ? Amplitude::CalabiYau : Amplitude::GeneralType;
        if (a != *cfg.amplitude_filter) return;
      }
      const bool cone = !linear_cone_flags(x).empty();
      if (cone && cfg.exclude_linear_cones) return;
      if (!well_formed_ci(x)) return;
      std::optional<bool> qs;
      if (!cone) {
        const QsOptions opts{.record_witnesses = false};
        qs = (cfg.codim == 1 ? general_qs_hypersurface(x, table, opts) : general_qs_ci2(x, table, opts)).holds;
        if (!*qs) return;
      }
      auto adj = adjunction(x);
      auto v = verdict(x, ds);
      out.push_back(CandidateRecord{x, adj, qs, std::move(v), ds.match(x)});
    };

    // Non-decreasing degree tuples; the last one is pinned by the index.
    auto rec = [&](auto&& self, std::size_t j, Weight lo, Weight used) -> void {
      if (j + 1 == cfg.codim && cfg.index_filter) {
        const Weight last = total - *cfg.index_filter - used;
        if (last >= lo && last <= dmax) {
          d[j] = last;
          consider();
        }
        return;
      }
      if (j == cfg.codim) {
        consider();
        return;
      }
      for (Weight dj = lo; dj <= dmax; ++dj) {
        if (cfg.amplitude_filter == Amplitude::Fano && used + dj >= total) break;
        d[j] = dj;
        self(self, j + 1, dj, used + dj);
      }
    };
    rec(rec, 0, 2, 0);
  };

  auto grow = [&](auto&& self) -> void {
    if (w.size() == n) {
      Weight g = 0;
      for (Weight a : w) g = gcd(g, a);
      if (g != 1) return;  // dropping the last weight would leave gcd > 1
    }
    if (w.size() == len) {
      WeightVector wv(w);
      if (is_well_formed(wv)) emit_degrees(wv);
      return;
    }
    for (Weight a = w.back(); a <= cfg.max_weight; ++a) {
      w.push_back(a);
      self(self);
      w.pop_back();
    }
  };
  if (len == 2) return;
  grow(grow);
}

}  // namespace detail

// Runs the search on the given shards and returns the sorted records.
inline std::vector<CandidateRecord> collect(const SearchConfig& config, const Dataset& ds,
                                            const std::vector<Shard>& shards) {
  config.validate();
  std::vector<std::vector<CandidateRecord>> parts(shards.size());
  auto run = [&](std::size_t s) {
    for (const auto& p : shards[s].prefixes) detail::search_prefix(config, ds, p, parts[s]);
  };
  const std::size_t workers = std::min(config.jobs, shards.size());
  if (workers <= 1) {
    for (std::size_t s = 0; s < shards.size(); ++s) run(s);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t s = t; s < shards.size(); s += workers) run(s);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<CandidateRecord> all;
  for (auto& p : parts)
    for (auto& r : p) all.push_back(std::move(r));
  std::sort(all.begin(), all.end(),
            [](const CandidateRecord& a, const CandidateRecord& b) { return a.descriptor < b.descriptor; });
  return all;
}

// Emits every record in lexicographic order of (weights, degrees).
inline std::size_t enumerate(const SearchConfig& config, const Dataset& ds,
                             const std::function<void(const CandidateRecord&)>& sink) {
  auto records = collect(config, ds, partition(config, std::max<std::size_t>(config.jobs, 1) * 4));
  for (const auto& r : records) sink(r);
  return records.size();
}

}  // namespace wfci
