#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "index_set.hpp"
#include "point_set.hpp"

namespace dilates {

// Projection onto the coordinates indexed by I: all other coordinates are set
// to zero. The result is canonical, so distinct points may merge and trailing
// zeros are trimmed; p_{}(A) = {0}.
inline PointSet project(const PointSet& a, IndexSet i) {
  if (i.max_member() > a.dim()) throw precondition_error("projection index beyond set dimension");
  const std::size_t d = static_cast<std::size_t>(a.dim());
  std::vector<Coord> flat(a.flat());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < d; ++c)
      if (!i.contains(static_cast<int>(c) + 1)) flat[r * d + c] = 0;
  return PointSet::from_flat(a.dim(), std::move(flat));
}

// Removes the k-th coordinate from every point (the fibering map for
// compressions). Fibers over equal remainders merge.
inline PointSet delete_coord(const PointSet& a, int k) {
  if (k < 1 || k > a.dim()) throw precondition_error("coordinate index out of range");
  if (a.dim() == 1) throw precondition_error("cannot delete the last coordinate");
  const std::size_t d = static_cast<std::size_t>(a.dim());
  const std::size_t kc = static_cast<std::size_t>(k - 1);
  std::vector<Coord> flat;
  flat.reserve(a.size() * (d - 1));
  for (std::size_t r = 0; r < a.size(); ++r) {
    auto p = a.point(r);
    for (std::size_t c = 0; c < d; ++c)
      if (c != kc) flat.push_back(p[c]);
  }
  return PointSet::from_flat(a.dim() - 1, std::move(flat));
}

// Compression along the k-th coordinate: within each fiber over the remaining
// coordinates, the k-th coordinates are replaced by 0, 1, ..., s-1 where s is
// the fiber size. Cardinality is preserved; the operator is idempotent and
// never increases sumset sizes.
inline PointSet compress_k(const PointSet& a, int k) {
  if (k < 1 || k > a.dim()) throw precondition_error("coordinate index out of range");
  const std::size_t d = static_cast<std::size_t>(a.dim());
  const std::size_t kc = static_cast<std::size_t>(k - 1);
  const std::size_t n = a.size();
  const auto& flat = a.flat();

  auto key_less = [&](std::uint32_t x, std::uint32_t y) {
    const Coord* px = flat.data() + x * d;
    const Coord* py = flat.data() + y * d;
    for (std::size_t c = 0; c < d; ++c) {
      if (c == kc) continue;
      if (px[c] != py[c]) return px[c] < py[c];
    }
    return false;
  };
  auto key_equal = [&](std::uint32_t x, std::uint32_t y) {
    return !key_less(x, y) && !key_less(y, x);
  };

  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  std::sort(idx.begin(), idx.end(), key_less);

  std::vector<Coord> out;
  out.reserve(n * d);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && key_equal(idx[i], idx[j])) ++j;
    for (std::size_t f = 0; f < j - i; ++f) {
      const Coord* row = flat.data() + idx[i + f] * d;
      out.insert(out.end(), row, row + d);
      out[out.size() - d + kc] = static_cast<Coord>(f);
    }
    i = j;
  }
  return PointSet::from_flat(a.dim(), std::move(out));
}

inline bool is_compressed(const PointSet& a) {
  for (int k = 1; k <= a.dim(); ++k)
    if (compress_k(a, k) != a) return false;
  return true;
}

struct CompressStats {
  int sweeps = 0;          // full left-to-right sweeps executed
  int changing_sweeps = 0; // sweeps that changed the set
};

// Sweeps C_1, ..., C_d repeatedly until a full sweep is the identity. The
// first sweep makes all coordinates nonnegative; from there every changing
// sweep strictly decreases the total coordinate sum, so iteration terminates.
// The result is compressed, hence downward closed.
inline PointSet compress_full(PointSet a, CompressStats* stats = nullptr) {
  for (;;) {
    bool changed = false;
    for (int k = 1; k <= a.dim(); ++k) {
      PointSet b = compress_k(a, k);
      if (b != a) {
        a = std::move(b);
        changed = true;
      }
    }
    if (stats) {
      ++stats->sweeps;
      if (changed) ++stats->changing_sweeps;
    }
    if (!changed) return a;
  }
}

// Dimension reduction: compress, then delete every coordinate that is
// identically zero (equivalently, whose basis vector is missing from the
// compressed set), re-compressing after each deletion batch, until every
// basis vector e_1, ..., e_d is present. Preserves cardinality, never
// increases the dilate sum, and lands in dimension d <= 2K where K is the
// doubling ratio of the result.
inline PointSet reduce_dim(PointSet a) {
  a = compress_full(a);
  for (;;) {
    if (a.dim() == 1) return a;  // either {0} or contains e_1 already
    const std::size_t d = static_cast<std::size_t>(a.dim());
    const auto& flat = a.flat();
    std::vector<int> zero_cols;
    for (std::size_t c = 0; c < d; ++c) {
      bool all_zero = true;
      for (std::size_t r = 0; r < a.size() && all_zero; ++r) all_zero = flat[r * d + c] == 0;
      if (all_zero) zero_cols.push_back(static_cast<int>(c) + 1);
    }
    if (zero_cols.empty()) return a;
    for (auto it = zero_cols.rbegin(); it != zero_cols.rend(); ++it) a = delete_coord(a, *it);
    a = compress_full(a);
  }
}

}  // namespace dilates
