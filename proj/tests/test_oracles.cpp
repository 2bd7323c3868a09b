#include <catch2/catch.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dilates/constructions.hpp"
#include "dilates/oracles.hpp"

using namespace dilates;

namespace {

PointSet from(std::vector<std::vector<Coord>> rows) { return PointSet::from_rows(rows); }

bool nonnegative_slack(const Report& r) {
  return !r.slack.empty() && r.slack[0] != '-';
}

}  // namespace

TEST_CASE("projection-sum bound on singletons and progressions") {
  PointSet point = from({{0}});
  Report r1 = check_discbm(point, point);
  REQUIRE(r1.pass);
  REQUIRE(r1.lhs == "2");
  REQUIRE(r1.rhs == "2");

  PointSet two = from({{0}, {1}});
  Report r2 = check_discbm(two, two);
  REQUIRE(r2.pass);
  REQUIRE(r2.lhs == "4");  // |p_{}(A+B)| + |p_{1}(A+B)| = 1 + 3
  REQUIRE(r2.rhs == "4");
}

TEST_CASE("projection-sum bound on the unit square is tight") {
  PointSet grid = from({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  Report r = check_discbm(grid, grid);
  REQUIRE(r.pass);
  REQUIRE(r.rhs == "16");  // (sqrt(4)+sqrt(4))^2
  REQUIRE(r.lhs == "16");  // 1 + 3 + 3 + 9
}

TEST_CASE("projection-sum bound survives irrational d-th roots") {
  PointSet a = from({{0, 0}, {1, 1}, {2, 0}});  // |A| = 3 is not a square
  Report r = check_discbm(a, a);
  REQUIRE(r.pass);
  REQUIRE(r.witness.find("rounded") != std::string::npos);
}

TEST_CASE("projection-sum bound honors the dimension cap") {
  PointSet wide = from({{0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}});
  REQUIRE_THROWS_AS(check_discbm(wide, wide, 4), cap_exceeded);
}

TEST_CASE("full-dimensional sumset bound matches the examples") {
  PointSet tri = from({{0, 0}, {1, 0}, {0, 1}});
  Report r1 = check_hdsums(tri, tri);
  REQUIRE(r1.pass);
  REQUIRE(r1.lhs == "6");
  REQUIRE(r1.rhs == "6");  // 3 + 2*3 - 3, tight

  PointSet point = from({{0}});
  Report r2 = check_hdsums(point, point);
  REQUIRE(r2.pass);

  Report r3 = check_hdsums(from({{0}, {1}, {2}}), from({{0}, {1}}));
  REQUIRE(r3.pass);
  REQUIRE(r3.lhs == "4");
  REQUIRE(r3.rhs == "4");
}

TEST_CASE("triangle inequality on sets and their shifts") {
  PointSet two = from({{0}, {1}});
  Report r1 = check_ruzsa_triangle(two, two, two);
  REQUIRE(r1.pass);
  REQUIRE(r1.lhs == "6");
  REQUIRE(r1.rhs == "9");

  PointSet point = from({{0}});
  Report r2 = check_ruzsa_triangle(point, point, point);
  REQUIRE(r2.pass);
  REQUIRE(r2.lhs == r2.rhs);

  PointSet a = from({{0}, {1}, {2}});
  Report r3 = check_ruzsa_triangle(phi(a), a, a);
  REQUIRE(r3.pass);
  REQUIRE(r3.lhs == "15");  // 3 * |A+A| = 3*5
  REQUIRE(r3.rhs == "81");  // |A+PhiA|^2 = 9^2
}

TEST_CASE("doubling chain on a two-point set") {
  DoublingChain chain = pr_chain(from({{0}, {1}}));
  REQUIRE(chain.k == Rational::of(2, 1));
  REQUIRE(chain.n_b == 12);
  REQUIRE(chain.steps.size() == 4);
  REQUIRE(all_pass(chain.steps));
  REQUIRE(chain.steps[3].rhs == "2048");  // K^10 * |A| = 1024 * 2

  Report agg = check_pr_chain(from({{0}, {1}}));
  REQUIRE(agg.pass);
  REQUIRE(agg.lhs == "12");
}

TEST_CASE("doubling chain on a singleton is all ones") {
  DoublingChain chain = pr_chain(from({{0}}));
  REQUIRE(chain.k == Rational::of(1, 1));
  for (const auto& s : chain.steps) {
    REQUIRE(s.pass);
    REQUIRE(s.lhs == "1");
    REQUIRE(s.rhs == "1");
  }
}

TEST_CASE("doubling chain on the unit square") {
  PointSet grid = from({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  DoublingChain chain = pr_chain(grid);
  REQUIRE(chain.k == Rational::of(3, 1));
  REQUIRE(all_pass(chain.steps));
}

TEST_CASE("doubling chain respects the element cap") {
  PointSet a = ap(40);
  REQUIRE_THROWS_AS(pr_chain(a, 1000), cap_exceeded);
}

TEST_CASE("projection bound on a compressed box") {
  PointSet a = from({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}});  // {0,1,2} x {0,1}
  Report single = check_projection_bound(a, IndexSet::of({1, 2}));
  REQUIRE(single.pass);
  REQUIRE(single.lhs == "216");  // 6^3
  REQUIRE(single.rhs == "576");  // N^2 = 24^2

  Report sweep = check_projection_bound(a);
  REQUIRE(sweep.pass);

  Report origin_sweep = check_projection_bound(PointSet::origin());
  REQUIRE(origin_sweep.pass);

  PointSet grid = from({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  REQUIRE(check_projection_bound(grid).pass);
}

TEST_CASE("projection bound rejects non-compressed input") {
  REQUIRE_THROWS_AS(check_projection_bound(from({{0, 1}})), precondition_error);
}

TEST_CASE("projection bound holds across random compressed sets") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 100; ++trial) {
    PointSet a = random_ideal(1 + rng() % 300, 1 + static_cast<int>(rng() % 4), rng());
    REQUIRE(check_projection_bound(a).pass);
  }
}

TEST_CASE("projection bound sweep is identical across worker counts") {
  PointSet a = random_ideal(40, 3, 99);
  Report seq = check_projection_bound(a, {}, 20, default_element_cap, 1);
  Report par = check_projection_bound(a, {}, 20, default_element_cap, 4);
  REQUIRE(seq.pass == par.pass);
  REQUIRE(seq.lhs == par.lhs);
  REQUIRE(seq.rhs == par.rhs);
  REQUIRE(seq.witness == par.witness);
}

TEST_CASE("injection claim on the example box") {
  PointSet a = from({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}});
  Report r = check_injection_claim(a, IndexSet::of({1, 2}), IndexSet::of({1}));
  REQUIRE(r.pass);
  REQUIRE(r.lhs == "18");  // 6 * 3
  REQUIRE(r.rhs == "48");  // N * |p_{2}(A)| = 24 * 2
}

TEST_CASE("injection claim on a singleton") {
  Report r = check_injection_claim(PointSet::origin(), IndexSet{}, IndexSet{});
  REQUIRE(r.pass);
}

TEST_CASE("injection claim on compressed random sets") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    PointSet a = random_ideal(1 + rng() % 40, 1 + static_cast<int>(rng() % 3), rng());
    const int d = a.dim();
    IndexSet j1 = IndexSet::from_mask(rng() % (std::uint64_t{1} << d));
    IndexSet j2 = IndexSet::from_mask(rng() % (std::uint64_t{1} << d));
    Report r = check_injection_claim(a, j1, j2);
    REQUIRE(r.pass);
  }
}

TEST_CASE("injection claim rejects non-compressed input") {
  REQUIRE_THROWS_AS(check_injection_claim(from({{0, 1}}), IndexSet{}, IndexSet{}),
                    precondition_error);
}

TEST_CASE("alpha histogram for small arities") {
  AlphaCount two = count_by_alpha(2);
  REQUIRE(two.hist == std::vector<std::uint64_t>{1, 2, 1});
  REQUIRE(two.report.pass);

  AlphaCount one = count_by_alpha(1);
  REQUIRE(one.hist == std::vector<std::uint64_t>{1, 1});
  REQUIRE(one.report.pass);

  AlphaCount ten = count_by_alpha(10);
  std::uint64_t total = 0;
  for (auto h : ten.hist) total += h;
  REQUIRE(total == 1024);
  REQUIRE(ten.report.pass);
}

TEST_CASE("alpha histogram caps the arity") {
  REQUIRE_THROWS_AS(count_by_alpha(26), cap_exceeded);
  REQUIRE_THROWS_AS(count_by_alpha(0), precondition_error);
}

TEST_CASE("envelope value basics") {
  REQUIRE(lower_bound_value(1, 0.1) == Approx(1.0));
  REQUIRE(lower_bound_value(1, 5.0) == Approx(1.0));
  REQUIRE(lower_bound_value(100, 0.0) == Approx(100.0));
  REQUIRE(lower_bound_value(50, 0.1) > 50.0);
  REQUIRE(lower_bound_value(51, 0.1) > lower_bound_value(50, 0.1));
  REQUIRE(lower_bound_value(50, 0.2) > lower_bound_value(50, 0.1));
}

TEST_CASE("theorem trace passes on a two-point set") {
  auto reports = theorem_trace(from({{0}, {1}}));
  REQUIRE(reports.size() >= 15);
  REQUIRE(all_pass(reports));
  for (const auto& r : reports) REQUIRE(nonnegative_slack(r));
}

TEST_CASE("theorem trace handles the degenerate singleton") {
  auto reports = theorem_trace(PointSet::origin());
  REQUIRE(all_pass(reports));
}

TEST_CASE("theorem trace reports the final doubling ratio") {
  auto reports = theorem_trace(ap(5));
  REQUIRE(all_pass(reports));
  bool saw_doubling = false;
  for (const auto& r : reports)
    if (r.claim == "trace.doubling") {
      saw_doubling = true;
      REQUIRE(r.rhs == "5");  // K of the reduced progression
    }
  REQUIRE(saw_doubling);
}
