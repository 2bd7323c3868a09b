#include <catch2/catch.hpp>

#include <random>
#include <vector>

#include "dilates/compression.hpp"
#include "dilates/constructions.hpp"
#include "oracle_ref.hpp"

using namespace dilates;

namespace {

PointSet from(std::vector<std::vector<Coord>> rows) { return PointSet::from_rows(rows); }

PointSet random_raw_set(std::mt19937_64& rng, std::size_t max_n, int max_d, Coord lo, Coord hi) {
  const std::size_t n = 1 + rng() % max_n;
  const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_d));
  std::vector<std::vector<Coord>> rows(n, std::vector<Coord>(static_cast<std::size_t>(d)));
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  for (auto& r : rows)
    for (auto& c : r) c = lo + static_cast<Coord>(rng() % span);
  return PointSet::from_rows(rows);
}

}  // namespace

TEST_CASE("projection zeroes the complement and canonicalizes") {
  REQUIRE(project(from({{1, 2}, {3, 4}}), IndexSet::of({1})) == from({{1}, {3}}));
  REQUIRE(project(from({{1, 2}, {3, 4}}), IndexSet{}) == PointSet::origin());
  REQUIRE(project(from({{0, 0}, {0, 1}, {1, 0}}), IndexSet::of({2})) == from({{0, 0}, {0, 1}}));
  REQUIRE_THROWS_AS(project(from({{1}}), IndexSet::of({2})), precondition_error);
}

TEST_CASE("coordinate deletion fibers and merges") {
  REQUIRE(delete_coord(from({{0, 5}, {1, 5}}), 2) == from({{0}, {1}}));
  REQUIRE(delete_coord(from({{0, 0}, {0, 1}}), 2) == PointSet::origin());
  REQUIRE(delete_coord(from({{1, 2, 3}}), 2) == from({{1, 3}}));
  REQUIRE_THROWS_AS(delete_coord(from({{1, 2}}), 3), precondition_error);
  REQUIRE_THROWS_AS(delete_coord(from({{1}}), 1), precondition_error);
}

TEST_CASE("coordinate compression rewrites fibers to initial segments") {
  REQUIRE(compress_k(from({{0, 0}, {0, 2}, {1, 5}}), 2) == from({{0, 0}, {0, 1}, {1, 0}}));
  PointSet grid = from({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  REQUIRE(compress_k(grid, 1) == grid);
  REQUIRE(compress_k(grid, 2) == grid);
  REQUIRE(compress_k(from({{5}}), 1) == PointSet::origin());
}

TEST_CASE("coordinate compression preserves cardinality and is idempotent") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    PointSet a = random_raw_set(rng, 14, 3, -4, 4);
    for (int k = 1; k <= a.dim(); ++k) {
      PointSet c = compress_k(a, k);
      REQUIRE(c.size() == a.size());
      if (c.dim() >= k) REQUIRE(compress_k(c, k) == c);
    }
  }
}

TEST_CASE("compression never increases sumset sizes") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    PointSet a = random_raw_set(rng, 10, 3, -3, 4);
    PointSet b = random_raw_set(rng, 10, 3, -3, 4);
    const int d = std::min(a.dim(), b.dim());
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d));
    REQUIRE(minkowski(compress_k(a, k), compress_k(b, k)).size() <= minkowski(a, b).size());
    REQUIRE(dilate_sum(compress_full(a)).size() <= dilate_sum(a).size());
  }
}

TEST_CASE("full compression reaches the stated fixpoints") {
  REQUIRE(compress_full(from({{0, 0}, {1, 0}, {5, 0}})) == from({{0}, {1}, {2}}));
  REQUIRE(compress_full(from({{0}, {1}, {2}})) == from({{0}, {1}, {2}}));
  REQUIRE(compress_full(from({{3, 7}})) == PointSet::origin());
}

TEST_CASE("full compression handles negative coordinates") {
  PointSet a = from({{-5}, {-2}, {9}});
  REQUIRE(compress_full(a) == from({{0}, {1}, {2}}));
}

TEST_CASE("full compression output is compressed and downward closed") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    PointSet a = random_raw_set(rng, 12, 3, -4, 4);
    CompressStats stats;
    PointSet c = compress_full(a, &stats);
    REQUIRE(c.size() == a.size());
    REQUIRE(is_compressed(c));
    REQUIRE(stats.sweeps >= 1);

    oracle::Rows rows;
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto p = c.point(i);
      rows.emplace_back(p.begin(), p.end());
    }
    REQUIRE(oracle::downward_closed(rows));

    // downward closed also means every projection stays inside the set
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c.dim()); ++mask) {
      PointSet p = project(c, IndexSet::from_mask(mask));
      for (std::size_t i = 0; i < p.size(); ++i) {
        std::vector<Coord> padded(p.point(i).begin(), p.point(i).end());
        padded.resize(static_cast<std::size_t>(c.dim()), 0);
        REQUIRE(c.contains(padded));
      }
    }
  }
}

TEST_CASE("compressed predicate matches the definition") {
  REQUIRE(is_compressed(from({{0, 0}, {0, 1}, {1, 0}, {1, 1}})));
  REQUIRE_FALSE(is_compressed(from({{0, 1}})));
  REQUIRE(is_compressed(from({{0, 0}, {1, 0}, {0, 1}})));
}

TEST_CASE("dimension reduction drops identically-zero coordinates") {
  REQUIRE(reduce_dim(from({{0, 0}, {0, 1}, {0, 2}})) == from({{0}, {1}, {2}}));
  REQUIRE(reduce_dim(from({{0, 0}, {1, 0}, {5, 0}})) == from({{0}, {1}, {2}}));
  REQUIRE(reduce_dim(from({{3, 7}})) == PointSet::origin());
}

TEST_CASE("dimension reduction satisfies the contract on random sets") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    PointSet a = trial % 2 == 0 ? random_raw_set(rng, 20, 4, -3, 5)
                                : random_ideal(1 + rng() % 20, 1 + static_cast<int>(rng() % 4), rng());
    PointSet r = reduce_dim(a);
    REQUIRE(r.size() == a.size());
    REQUIRE(is_compressed(r));
    const std::size_t before = dilate_sum(a).size();
    const std::size_t after = dilate_sum(r).size();
    REQUIRE(after <= before);
    // d <= 2K with K the doubling ratio of the reduced set
    REQUIRE(static_cast<std::size_t>(r.dim()) * r.size() <= 2 * after);

    if (a.size() >= 2) {
      // every basis vector is present, so the set and its dilate sum span
      const int d = r.dim();
      for (int k = 1; k <= d; ++k) {
        std::vector<Coord> basis(static_cast<std::size_t>(d), 0);
        basis[static_cast<std::size_t>(k - 1)] = 1;
        REQUIRE(r.contains(basis));
      }
      REQUIRE(affine_dim(r) == d);
      REQUIRE(affine_dim(dilate_sum(r)) == d + 1);
    }
  }
}

TEST_CASE("alpha is the longest run of consecutive members") {
  REQUIRE(alpha(IndexSet::of({1, 2, 4})) == 2);
  REQUIRE(alpha(IndexSet{}) == 0);
  REQUIRE(alpha(IndexSet::of({2, 3, 4, 7})) == 3);
  REQUIRE(alpha(IndexSet::of({5})) == 1);
}

TEST_CASE("index shift increments every member") {
  REQUIRE(shift_index_set(IndexSet::of({1, 3})) == IndexSet::of({2, 4}));
  REQUIRE(shift_index_set(IndexSet{}) == IndexSet{});
  REQUIRE(shift_index_set(IndexSet::of({1, 2})) == IndexSet::of({2, 3}));
}

TEST_CASE("index set parsing and printing") {
  REQUIRE(IndexSet::parse("1,3,4") == IndexSet::of({1, 3, 4}));
  REQUIRE(IndexSet::parse("-") == IndexSet{});
  REQUIRE(IndexSet::of({1, 3, 4}).str() == "{1,3,4}");
  REQUIRE_THROWS_AS(IndexSet::parse("1,,2"), parse_error);
  REQUIRE_THROWS_AS(IndexSet::parse("a"), parse_error);
}

TEST_CASE("the run-length chain of an index set descends to empty") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t mask = rng() % 256;  // subsets of [8]
    IndexSet i = IndexSet::from_mask(mask);
    const int k = alpha(i);

    // chain members by definition: I_t = { j in I : {j-t..j} subseteq I }
    auto chain_member = [&](int t) {
      IndexSet out;
      for (int j : i.members()) {
        bool all = true;
        for (int back = 0; back <= t && all; ++back) all = j - back >= 1 && i.contains(j - back);
        if (all) out.add(j);
      }
      return out;
    };

    IndexSet prev = i;
    REQUIRE(chain_member(0) == i);
    for (int t = 1; t <= k; ++t) {
      IndexSet cur = chain_member(t);
      // strict descent and the shift recurrence I_{t} = I cap phi(I_{t-1})
      REQUIRE((cur.mask() & ~prev.mask()) == 0);
      REQUIRE(cur.count() < prev.count());
      REQUIRE(cur == i.intersected(shift_index_set(prev)));
      prev = cur;
    }
    REQUIRE(prev.empty());
  }
}
