#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "compression.hpp"
#include "oracles.hpp"
#include "point_set.hpp"
#include "report.hpp"

namespace dilates {

// The grid {0, ..., n-1}^m, the upper-bound construction family. Already
// compressed; |result| = n^m.
inline PointSet kl_grid(std::int64_t n, int m, std::size_t size_cap = default_element_cap) {
  if (n < 1 || m < 1) throw precondition_error("grid requires n >= 1 and m >= 1");
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
  if (big > static_cast<unsigned long>(size_cap))
    throw cap_exceeded("grid of " + big.get_str() + " points exceeds cap " +
                       std::to_string(size_cap));
  const Coord total = static_cast<Coord>(big.get_ui());
  const std::size_t d = static_cast<std::size_t>(m);
  std::vector<Coord> flat;
  flat.reserve(static_cast<std::size_t>(total) * d);
  std::vector<Coord> tuple(d, 0);
  for (;;) {
    flat.insert(flat.end(), tuple.begin(), tuple.end());
    std::size_t c = d;
    while (c > 0) {
      if (++tuple[c - 1] < n) break;
      tuple[c - 1] = 0;
      --c;
    }
    if (c == 0) break;
  }
  return PointSet::from_flat(m, std::move(flat));
}

// |G + Phi(G)| for G = {0..n-1}^m in closed form: the image coordinates
// (x_1, x_2+y_1, ..., x_m+y_{m-1}, y_m) range over independent intervals, so
// the size is n^2 (2n-1)^(m-1). Oracle-validated against direct enumeration
// for all n <= 6, m <= 4 in the test suite.
inline mpz_class grid_dilate_size(std::int64_t n, int m) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(2 * n - 1),
                static_cast<unsigned long>(m - 1));
  return r * n * n;
}

// For n = 2^m: reports |A| = 2^(m^2) and |A+PhiA|, and checks the envelope
// |A+PhiA| <= 2^((m+1)^2) exactly. Within caps the dilate sum is enumerated;
// beyond them the closed form above is used and the route is recorded.
inline Report kl_upper_envelope(int m, std::size_t element_cap = default_element_cap) {
  if (m < 1) throw precondition_error("envelope requires m >= 1");
  if (m > 30) throw cap_exceeded("envelope cap is m <= 30");
  const std::int64_t n = std::int64_t{1} << m;
  mpz_class card;  // |A| = n^m = 2^(m^2)
  mpz_ui_pow_ui(card.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));

  mpz_class value;
  std::string route;
  bool enumerable = card.fits_ulong_p() &&
                    card.get_ui() <= element_cap &&
                    mpz_class(card * card) <= static_cast<unsigned long>(element_cap);
  if (enumerable) {
    value = static_cast<unsigned long>(
        dilate_sum(kl_grid(n, m, element_cap), element_cap).size());
    route = "enumerated";
  } else {
    value = grid_dilate_size(n, m);
    route = "closed-form";
  }

  mpz_class bound = mpz_class(1) << static_cast<unsigned>((m + 1) * (m + 1));
  Report r = detail::make_exact_report(
      "klenvelope",
      "m=" + std::to_string(m) + " n=" + std::to_string(n) + " |A|=" + card.get_str() + " route=" + route,
      mpq_class(value), mpq_class(bound), true);
  return r;
}

// Arithmetic progression {0, ..., n-1} in one dimension; its dilate sum has
// size exactly n^2, the baseline the grids improve on.
inline PointSet ap(std::int64_t n) {
  if (n < 1) throw precondition_error("progression requires n >= 1");
  std::vector<Coord> flat(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) flat[static_cast<std::size_t>(i)] = i;
  return PointSet::from_flat(1, std::move(flat));
}

namespace detail {

// Minimal points outside the ideal: q not in the ideal whose coordinatewise
// predecessors are all present. Candidates are drawn from successors of ideal
// points (plus the origin for the empty case), in lex order.
inline std::vector<std::vector<Coord>> minimal_outside(const std::set<std::vector<Coord>>& ideal,
                                                       int d) {
  std::set<std::vector<Coord>> cand;
  for (const auto& p : ideal) {
    for (int i = 0; i < d; ++i) {
      std::vector<Coord> q = p;
      ++q[static_cast<std::size_t>(i)];
      if (ideal.count(q)) continue;
      bool minimal = true;
      for (int j = 0; j < d && minimal; ++j) {
        if (q[static_cast<std::size_t>(j)] == 0) continue;
        std::vector<Coord> pred = q;
        --pred[static_cast<std::size_t>(j)];
        minimal = ideal.count(pred) > 0;
      }
      if (minimal) cand.insert(std::move(q));
    }
  }
  return {cand.begin(), cand.end()};
}

}  // namespace detail

// A random downward-closed set of exactly n points in dimension d, grown by
// repeatedly adding a seeded-random minimal outside point. Deterministic per
// (n, d, seed); coverage for property testing, uniformity not claimed.
inline PointSet random_ideal(std::size_t n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw precondition_error("ideal requires n >= 1 and d >= 1");
  std::mt19937_64 rng(seed);
  std::set<std::vector<Coord>> ideal;
  ideal.insert(std::vector<Coord>(static_cast<std::size_t>(d), 0));
  while (ideal.size() < n) {
    auto cand = detail::minimal_outside(ideal, d);
    ideal.insert(cand[static_cast<std::size_t>(rng() % cand.size())]);
  }
  std::vector<std::vector<Coord>> rows(ideal.begin(), ideal.end());
  return PointSet::from_rows(rows);
}

}  // namespace dilates
