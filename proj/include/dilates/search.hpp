#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "compression.hpp"
#include "constructions.hpp"
#include "oracles.hpp"
#include "parallel.hpp"
#include "point_set.hpp"

namespace dilates {

// Outcome of one search run for D(n) = min |A+PhiA| over |A| = n.
// wall_time_ms and timestamp are in-memory only: serialized ledgers contain
// deterministic fields exclusively, so identical argv+seed runs are
// byte-identical.
struct SearchRecord {
  std::size_t n = 0;
  int d = 0;  // dimension of the witness (canonical)
  std::int64_t best_value = 0;
  PointSet witness = PointSet::origin();
  std::string method;  // "exhaustive" | "local"
  std::uint64_t seed = 0;
  bool proven_optimal = false;
  int d_max = 0;            // exhaustive: ambient dimension searched
  bool dim_certified = false;  // exhaustive: d_max >= 2K for the found K
  std::uint64_t budget = 0;    // local: proposals examined
  double wall_time_ms = 0.0;
  std::string timestamp;
};

inline nlohmann::json record_to_json(const SearchRecord& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["best_value"] = r.best_value;
  nlohmann::json w = nlohmann::json::array();
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    auto p = r.witness.point(i);
    w.push_back(std::vector<Coord>(p.begin(), p.end()));
  }
  j["witness"] = std::move(w);
  j["method"] = r.method;
  j["seed"] = r.seed;
  j["proven_optimal"] = r.proven_optimal;
  if (r.method == "exhaustive") {
    j["d_max"] = r.d_max;
    j["dim_certified"] = r.dim_certified;
  }
  if (r.method == "local") j["budget"] = r.budget;
  return j;
}

inline SearchRecord record_from_json(const nlohmann::json& j) {
  SearchRecord r;
  r.n = j.at("n").get<std::size_t>();
  r.d = j.at("d").get<int>();
  r.best_value = j.at("best_value").get<std::int64_t>();
  std::vector<std::vector<Coord>> rows;
  for (const auto& p : j.at("witness")) rows.push_back(p.get<std::vector<Coord>>());
  r.witness = PointSet::from_rows(rows);
  r.method = j.at("method").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.proven_optimal = j.at("proven_optimal").get<bool>();
  if (j.contains("d_max")) r.d_max = j.at("d_max").get<int>();
  if (j.contains("dim_certified")) r.dim_certified = j.at("dim_certified").get<bool>();
  if (j.contains("budget")) r.budget = j.at("budget").get<std::uint64_t>();
  return r;
}

inline void append_to_ledger(const std::string& path, const SearchRecord& r) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw parse_error("cannot open ledger '" + path + "'");
  out << record_to_json(r).dump() << '\n';
}

inline std::vector<SearchRecord> read_ledger(const std::string& path) {
  std::vector<SearchRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

namespace detail {

using IdealRows = std::set<std::vector<Coord>>;

inline std::vector<Coord> flatten(const IdealRows& rows, int d) {
  std::vector<Coord> out;
  out.reserve(rows.size() * static_cast<std::size_t>(d));
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

inline IdealRows unflatten(const std::vector<Coord>& flat, int d) {
  IdealRows rows;
  const std::size_t sd = static_cast<std::size_t>(d);
  for (std::size_t i = 0; i < flat.size(); i += sd)
    rows.insert(std::vector<Coord>(flat.begin() + static_cast<std::ptrdiff_t>(i),
                                   flat.begin() + static_cast<std::ptrdiff_t>(i + sd)));
  return rows;
}

// Maximal points of an ideal: those with no successor inside.
inline std::vector<std::vector<Coord>> maximal_points(const IdealRows& rows, int d) {
  std::vector<std::vector<Coord>> out;
  for (const auto& p : rows) {
    bool maximal = true;
    for (int i = 0; i < d && maximal; ++i) {
      std::vector<Coord> q = p;
      ++q[static_cast<std::size_t>(i)];
      maximal = rows.count(q) == 0;
    }
    if (maximal) out.push_back(p);
  }
  return out;
}

}  // namespace detail

// Yields every downward-closed n-point subset of the d-dimensional lattice
// orthant exactly once (growth by minimal outside points with canonical-form
// dedup), in a deterministic order.
inline void enumerate_ideals(std::size_t n, int d, const std::function<void(const PointSet&)>& visit,
                             std::size_t max_n = 10, int max_d = 4) {
  if (n < 1 || d < 1) throw precondition_error("ideal enumeration requires n >= 1 and d >= 1");
  if (n > max_n || d > max_d)
    throw cap_exceeded("ideal enumeration capped at n <= " + std::to_string(max_n) +
                       ", d <= " + std::to_string(max_d));
  std::set<std::vector<Coord>> level;
  level.insert(std::vector<Coord>(static_cast<std::size_t>(d), 0));
  for (std::size_t s = 1; s < n; ++s) {
    std::set<std::vector<Coord>> next;
    for (const auto& flat : level) {
      detail::IdealRows rows = detail::unflatten(flat, d);
      for (const auto& q : detail::minimal_outside(rows, d)) {
        detail::IdealRows grown = rows;
        grown.insert(q);
        next.insert(detail::flatten(grown, d));
      }
    }
    level = std::move(next);
  }
  for (const auto& flat : level) {
    detail::IdealRows rows = detail::unflatten(flat, d);
    visit(PointSet::from_rows({rows.begin(), rows.end()}));
  }
}

// Exhaustive minimum of |A+PhiA| over all n-point ideals in dimension up to
// d_max. Ties break toward the lexicographically least canonical
// serialization, for reproducible tables.
inline SearchRecord exact_min(std::size_t n, int d_max, std::size_t max_n = 10, int max_d = 4,
                              std::size_t element_cap = default_element_cap, int workers = 1) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<PointSet> ideals;
  enumerate_ideals(n, d_max, [&](const PointSet& a) { ideals.push_back(a); }, max_n, max_d);

  std::vector<std::int64_t> values(ideals.size());
  parallel_for_index(ideals.size(), workers, [&](std::size_t i) {
    values[i] = static_cast<std::int64_t>(dilate_sum(ideals[i], element_cap).size());
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < ideals.size(); ++i) {
    if (values[i] < values[best] ||
        (values[i] == values[best] && serialize_pts(ideals[i]) < serialize_pts(ideals[best])))
      best = i;
  }

  SearchRecord rec;
  rec.n = n;
  rec.d = ideals[best].dim();
  rec.best_value = values[best];
  rec.witness = ideals[best];
  rec.method = "exhaustive";
  rec.seed = 0;
  rec.proven_optimal = true;
  rec.d_max = d_max;
  // d <= 2K certifies that dimension d_max suffices for the found ratio K.
  rec.dim_certified = 2 * static_cast<std::size_t>(rec.best_value) <=
                      static_cast<std::size_t>(d_max) * n;
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return rec;
}

struct AnnealParams {
  double t0 = 2.0;        // initial temperature
  double cooling = 0.999; // geometric factor per proposal
};

// Simulated annealing on the lattice of n-point ideals in dimension d. Moves
// remove a maximal point and add a distinct minimal outside point, so size
// and downward closure are preserved. Deterministic per seed with a single
// worker. The walk starts from a grid-like ideal (largest cube that fits,
// filled greedily), and the returned best includes the start.
inline SearchRecord local_search(std::size_t n, int d, std::uint64_t budget, std::uint64_t seed,
                                 AnnealParams params = {},
                                 std::size_t element_cap = default_element_cap) {
  if (n < 1 || d < 1) throw precondition_error("local search requires n >= 1 and d >= 1");
  const auto start_time = std::chrono::steady_clock::now();

  detail::IdealRows rows;
  {
    Coord side = 1;
    while (checked_pow(side + 1, d) <= static_cast<Coord>(n)) ++side;
    PointSet cube = kl_grid(side, d, element_cap);
    for (std::size_t i = 0; i < cube.size(); ++i) {
      auto p = cube.point(i);
      std::vector<Coord> row(p.begin(), p.end());
      row.resize(static_cast<std::size_t>(d), 0);
      rows.insert(std::move(row));
    }
    while (rows.size() < n) rows.insert(detail::minimal_outside(rows, d).front());
  }

  auto objective = [&](const detail::IdealRows& state) {
    return static_cast<std::int64_t>(
        dilate_sum(PointSet::from_rows({state.begin(), state.end()}), element_cap).size());
  };

  std::mt19937_64 rng(seed);
  std::int64_t cur_val = objective(rows);
  detail::IdealRows best_rows = rows;
  std::int64_t best_val = cur_val;

  double temp = params.t0;
  for (std::uint64_t step = 0; step < budget; ++step, temp *= params.cooling) {
    auto maximal = detail::maximal_points(rows, d);
    if (maximal.empty()) break;  // n = 1
    const auto& removed = maximal[rng() % maximal.size()];
    detail::IdealRows trial = rows;
    trial.erase(removed);
    auto cand = detail::minimal_outside(trial, d);
    std::erase(cand, removed);
    if (cand.empty()) continue;
    trial.insert(cand[rng() % cand.size()]);

    const std::int64_t trial_val = objective(trial);
    const std::int64_t delta = trial_val - cur_val;
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    if (delta <= 0 || std::exp(-static_cast<double>(delta) / temp) > u) {
      rows = std::move(trial);
      cur_val = trial_val;
      if (cur_val < best_val ||
          (cur_val == best_val &&
           serialize_pts(PointSet::from_rows({rows.begin(), rows.end()})) <
               serialize_pts(PointSet::from_rows({best_rows.begin(), best_rows.end()})))) {
        best_rows = rows;
        best_val = cur_val;
      }
    }
  }

  SearchRecord rec;
  rec.n = n;
  rec.witness = PointSet::from_rows({best_rows.begin(), best_rows.end()});
  rec.d = rec.witness.dim();
  rec.best_value = best_val;
  rec.method = "local";
  rec.seed = seed;
  rec.proven_optimal = false;
  rec.budget = budget;
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start_time)
                         .count();
  return rec;
}

// One row of the bounds table: best-known value against the trivial floor
// and the two float envelopes (informational).
struct BoundsRow {
  std::size_t n = 0;
  bool has_best = false;
  std::int64_t best = 0;
  int witness_d = 0;
  bool proven = false;
  std::string method;  // "ledger" | "exhaustive" | "none"
  std::int64_t floor = 0;
  double lower_env = 0.0;
  double upper_env = 0.0;
};

inline std::vector<BoundsRow> bounds_table(const std::vector<std::size_t>& ns, double c,
                                           double cprime, const std::vector<SearchRecord>& known,
                                           std::size_t enum_n_cap = 10, int enum_d_cap = 4,
                                           std::size_t element_cap = default_element_cap,
                                           int workers = 1) {
  std::vector<BoundsRow> rows;
  for (std::size_t n : ns) {
    BoundsRow row;
    row.n = n;
    row.floor = static_cast<std::int64_t>(2 * n) - 1;
    row.lower_env = lower_bound_value(n, c);
    row.upper_env = lower_bound_value(n, cprime);
    const SearchRecord* found = nullptr;
    for (const auto& r : known)
      if (r.n == n && (!found || r.best_value < found->best_value)) found = &r;
    if (found) {
      row.has_best = true;
      row.best = found->best_value;
      row.witness_d = found->d;
      row.proven = found->proven_optimal;
      row.method = "ledger";
    } else if (n <= enum_n_cap) {
      SearchRecord rec = exact_min(n, enum_d_cap, enum_n_cap, enum_d_cap, element_cap, workers);
      row.has_best = true;
      row.best = rec.best_value;
      row.witness_d = rec.d;
      row.proven = true;
      row.method = "exhaustive";
    } else {
      row.method = "none";
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::string bounds_csv(const std::vector<BoundsRow>& rows) {
  std::string out =
      "n,best_known,witness_d,proven_optimal,method,trivial_floor,"
      "lower_envelope_float_informational,upper_envelope_float_informational\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',';
    out += r.has_best ? std::to_string(r.best) : std::string();
    out += ',';
    out += r.has_best ? std::to_string(r.witness_d) : std::string();
    out += ',';
    out += r.has_best ? (r.proven ? "true" : "false") : "";
    out += ',' + r.method + ',' + std::to_string(r.floor) + ',';
    out += std::to_string(r.lower_env) + ',' + std::to_string(r.upper_env) + '\n';
  }
  return out;
}

}  // namespace dilates
