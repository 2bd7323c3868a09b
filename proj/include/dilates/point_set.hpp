#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "checked.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace dilates {

// Default guard on pairwise sumset enumeration (number of candidate elements
// generated before dedup). Exceeding it raises cap_exceeded.
inline constexpr std::size_t default_element_cap = 10'000'000;

// A finite nonempty set of lattice points sharing one dimension d >= 1.
// Coordinate k (1-based) is the coefficient of the k-1st basis power, so the
// shift map that models multiplication by the transcendental prepends a zero.
//
// Canonical form, maintained as a class invariant:
//   - points sorted lexicographically, no duplicates;
//   - trailing coordinates that are zero across all points are trimmed,
//     so dim is minimal (never below 1). Leading zeros are preserved.
class PointSet {
public:
  // Builds the canonical set from raw rows. Rows shorter than the longest are
  // right-padded with zeros. Throws precondition_error on an empty collection.
  static PointSet from_rows(const std::vector<std::vector<Coord>>& rows) {
    if (rows.empty()) throw precondition_error("empty point set");
    std::size_t d = 1;
    for (const auto& r : rows) d = std::max(d, r.size());
    std::vector<Coord> flat;
    flat.reserve(rows.size() * d);
    for (const auto& r : rows) {
      flat.insert(flat.end(), r.begin(), r.end());
      flat.resize(flat.size() + (d - r.size()), 0);
    }
    return from_flat(static_cast<int>(d), std::move(flat));
  }

  // Canonicalizes a flat row-major buffer of size multiple of dim.
  static PointSet from_flat(int dim, std::vector<Coord> flat) {
    if (dim < 1 || flat.empty() || flat.size() % static_cast<std::size_t>(dim) != 0)
      throw precondition_error("empty point set or malformed buffer");
    const std::size_t d = static_cast<std::size_t>(dim);
    const std::size_t n = flat.size() / d;

    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(flat.begin() + a * d, flat.begin() + (a + 1) * d,
                                          flat.begin() + b * d, flat.begin() + (b + 1) * d);
    });

    std::vector<Coord> out;
    out.reserve(flat.size());
    for (std::size_t i = 0; i < n; ++i) {
      const Coord* row = flat.data() + idx[i] * d;
      if (!out.empty() && std::equal(row, row + d, out.end() - d)) continue;
      out.insert(out.end(), row, row + d);
    }

    // Trim trailing all-zero coordinates; dim never drops below 1.
    std::size_t keep = 1;
    const std::size_t m = out.size() / d;
    for (std::size_t c = d; c > 1; --c) {
      bool nonzero = false;
      for (std::size_t i = 0; i < m && !nonzero; ++i) nonzero = out[i * d + (c - 1)] != 0;
      if (nonzero) {
        keep = c;
        break;
      }
    }
    if (keep < d) {
      std::vector<Coord> trimmed;
      trimmed.reserve(m * keep);
      for (std::size_t i = 0; i < m; ++i)
        trimmed.insert(trimmed.end(), out.begin() + i * d, out.begin() + i * d + keep);
      out = std::move(trimmed);
    }
    return PointSet(static_cast<int>(keep), std::move(out));
  }

  static PointSet origin() { return PointSet(1, {0}); }

  int dim() const { return dim_; }
  std::size_t size() const { return flat_.size() / static_cast<std::size_t>(dim_); }

  std::span<const Coord> point(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }

  const std::vector<Coord>& flat() const { return flat_; }

  // Membership of a row of length dim(), by binary search.
  bool contains(std::span<const Coord> p) const {
    const std::size_t d = static_cast<std::size_t>(dim_);
    if (p.size() != d) throw precondition_error("membership query of mismatched dimension");
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      const Coord* row = flat_.data() + mid * d;
      if (std::lexicographical_compare(row, row + d, p.begin(), p.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == size()) return false;
    const Coord* row = flat_.data() + lo * d;
    return std::equal(row, row + d, p.begin(), p.end());
  }

  // Rows padded with zeros to an ambient dimension >= dim().
  std::vector<Coord> flat_padded(int ambient_dim) const {
    if (ambient_dim < dim_) throw precondition_error("ambient dimension below set dimension");
    const std::size_t d = static_cast<std::size_t>(dim_);
    const std::size_t ad = static_cast<std::size_t>(ambient_dim);
    std::vector<Coord> out;
    out.reserve(size() * ad);
    for (std::size_t i = 0; i < size(); ++i) {
      out.insert(out.end(), flat_.begin() + i * d, flat_.begin() + (i + 1) * d);
      out.resize(out.size() + (ad - d), 0);
    }
    return out;
  }

  bool operator==(const PointSet&) const = default;

private:
  PointSet(int dim, std::vector<Coord> flat) : dim_(dim), flat_(std::move(flat)) {}

  int dim_;
  std::vector<Coord> flat_;
};

// ---------------------------------------------------------------------------
// Set file format (.pts): one point per line, whitespace-separated entries,
// each an integer or a rational "p/q"; '#' starts a comment; blank lines are
// ignored; short lines are right-padded with zeros. Rational entries are
// cleared by scaling every point by the least common denominator (the dilate
// sum size is invariant under integer scaling), so parsing always yields an
// integer canonical set.
// ---------------------------------------------------------------------------

namespace detail {

struct ParsedFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

inline std::int64_t parse_int64(std::string_view tok) {
  if (tok.empty()) throw parse_error("empty numeric token");
  bool neg = false;
  std::size_t i = 0;
  if (tok[0] == '-' || tok[0] == '+') {
    neg = tok[0] == '-';
    i = 1;
  }
  if (i == tok.size()) throw parse_error("malformed token '" + std::string(tok) + "'");
  std::int64_t v = 0;
  for (; i < tok.size(); ++i) {
    char c = tok[i];
    if (c < '0' || c > '9') throw parse_error("malformed token '" + std::string(tok) + "'");
    v = checked_mul(v, 10);
    v = checked_add(v, c - '0');
  }
  return neg ? checked_sub(0, v) : v;
}

inline ParsedFraction parse_fraction(std::string_view tok) {
  auto slash = tok.find('/');
  if (slash == std::string_view::npos) return {parse_int64(tok), 1};
  if (tok.find('/', slash + 1) != std::string_view::npos)
    throw parse_error("malformed token '" + std::string(tok) + "'");
  std::int64_t p = parse_int64(tok.substr(0, slash));
  std::int64_t q = parse_int64(tok.substr(slash + 1));
  if (q == 0) throw parse_error("zero denominator in '" + std::string(tok) + "'");
  if (q < 0) {
    p = checked_sub(0, p);
    q = checked_sub(0, q);
  }
  std::int64_t g = std::gcd(p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  return {p, q};
}

}  // namespace detail

inline PointSet parse_set(std::string_view text) {
  std::vector<std::vector<detail::ParsedFraction>> raw;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<detail::ParsedFraction> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) row.push_back(detail::parse_fraction(line.substr(i, j - i)));
      i = j;
    }
    if (!row.empty()) raw.push_back(std::move(row));
  }
  if (raw.empty()) throw parse_error("empty set");

  Coord lcd = 1;
  for (const auto& row : raw)
    for (const auto& f : row)
      if (f.den > 1) lcd = checked_lcm(lcd, f.den);

  std::vector<std::vector<Coord>> rows;
  rows.reserve(raw.size());
  for (const auto& row : raw) {
    std::vector<Coord> r;
    r.reserve(row.size());
    for (const auto& f : row) r.push_back(checked_mul(f.num, lcd / f.den));
    rows.push_back(std::move(r));
  }
  return PointSet::from_rows(rows);
}

// Canonical serialization: integers only, one point per line, lex order.
inline std::string serialize_pts(const PointSet& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto p = a.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(p[j]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fundamental operations
// ---------------------------------------------------------------------------

// The shift map: prepends t zero coordinates to every point. Models
// multiplication by the transcendental basis element, applied t times.
inline PointSet phi(const PointSet& a, int t = 1) {
  if (t < 1) throw precondition_error("phi requires a positive shift count");
  const std::size_t d = static_cast<std::size_t>(a.dim());
  const std::size_t nd = d + static_cast<std::size_t>(t);
  std::vector<Coord> flat;
  flat.reserve(a.size() * nd);
  for (std::size_t i = 0; i < a.size(); ++i) {
    flat.resize(flat.size() + static_cast<std::size_t>(t), 0);
    auto p = a.point(i);
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return PointSet::from_flat(static_cast<int>(nd), std::move(flat));
}

// Minkowski sum {x + y}. Dimensions are aligned by zero-padding the shorter
// set. The pairwise enumeration is capped at element_cap candidates.
inline PointSet minkowski(const PointSet& a, const PointSet& b,
                          std::size_t element_cap = default_element_cap) {
  const int d = std::max(a.dim(), b.dim());
  const std::size_t dd = static_cast<std::size_t>(d);
  const std::size_t pairs = a.size() * b.size();
  if (pairs > element_cap)
    throw cap_exceeded("sumset enumeration of " + std::to_string(pairs) +
                       " candidates exceeds cap " + std::to_string(element_cap));
  std::vector<Coord> fa = a.flat_padded(d);
  std::vector<Coord> fb = b.flat_padded(d);
  std::vector<Coord> flat(pairs * dd);
  std::size_t w = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Coord* x = fa.data() + i * dd;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Coord* y = fb.data() + j * dd;
      for (std::size_t k = 0; k < dd; ++k) flat[w++] = checked_add(x[k], y[k]);
    }
  }
  return PointSet::from_flat(d, std::move(flat));
}

// The sum of dilates in the lattice model: A + Phi(A).
inline PointSet dilate_sum(const PointSet& a, std::size_t element_cap = default_element_cap) {
  return minkowski(a, phi(a), element_cap);
}

// Dimension of the affine span, as an exact rank over the rationals computed
// by fraction-free (Bareiss) elimination on the differences to a base point.
inline int affine_dim(const PointSet& a) {
  const std::size_t n = a.size();
  const std::size_t d = static_cast<std::size_t>(a.dim());
  if (n == 1) return 0;
  std::vector<Coord> m((n - 1) * d);
  auto base = a.point(0);
  for (std::size_t i = 1; i < n; ++i) {
    auto p = a.point(i);
    for (std::size_t j = 0; j < d; ++j) m[(i - 1) * d + j] = checked_sub(p[j], base[j]);
  }
  const std::size_t rows = n - 1;
  auto at = [&](std::size_t r, std::size_t c) -> Coord& { return m[r * d + c]; };
  std::size_t rank = 0;
  Coord prev = 1;
  for (std::size_t col = 0; col < d && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && at(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t c = 0; c < d; ++c) std::swap(at(piv, c), at(rank, c));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < d; ++c)
        at(r, c) = checked_sub(checked_mul(at(rank, col), at(r, c)),
                               checked_mul(at(r, col), at(rank, c))) /
                   prev;
      at(r, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  return static_cast<int>(rank);
}

// The doubling ratio |A + Phi(A)| / |A|, exact.
inline Rational doubling_k(const PointSet& a, std::size_t element_cap = default_element_cap) {
  return Rational::of(static_cast<std::int64_t>(dilate_sum(a, element_cap).size()),
                      static_cast<std::int64_t>(a.size()));
}

}  // namespace dilates
