#include <catch2/catch.hpp>

#include <random>
#include <string>
#include <vector>

#include "dilates/constructions.hpp"
#include "oracle_ref.hpp"

using namespace dilates;

namespace {

oracle::Rows to_oracle(const PointSet& a) {
  oracle::Rows rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto p = a.point(i);
    rows.emplace_back(p.begin(), p.end());
  }
  return rows;
}

}  // namespace

TEST_CASE("grids have the advertised size and are compressed") {
  REQUIRE(kl_grid(1, 3) == PointSet::origin());
  PointSet g22 = kl_grid(2, 2);
  REQUIRE(g22.size() == 4);
  REQUIRE(is_compressed(g22));
  REQUIRE(dilate_sum(g22).size() == 12);
  PointSet g42 = kl_grid(4, 2);
  REQUIRE(g42.size() == 16);
  REQUIRE(dilate_sum(g42).size() == 112);
  REQUIRE_THROWS_AS(kl_grid(100, 5, 1000), cap_exceeded);
}

TEST_CASE("grid dilate sums match the brute-force reference and the closed form") {
  for (std::int64_t n = 1; n <= 6; ++n) {
    for (int m = 1; m <= 4; ++m) {
      PointSet g = kl_grid(n, m);
      const std::size_t measured = dilate_sum(g).size();
      REQUIRE(mpz_class(static_cast<unsigned long>(measured)) == grid_dilate_size(n, m));
      if (g.size() <= 260)  // keep the naive reference affordable
        REQUIRE(measured == oracle::dilate_size(to_oracle(g)));
    }
  }
}

TEST_CASE("envelope reports for small exponents are exact and pass") {
  Report m1 = kl_upper_envelope(1);
  REQUIRE(m1.pass);
  REQUIRE(m1.lhs == "4");   // dilate sum of {0,1}
  REQUIRE(m1.rhs == "16");  // 2^(2^2)
  REQUIRE(m1.inputs.find("enumerated") != std::string::npos);

  Report m2 = kl_upper_envelope(2);
  REQUIRE(m2.pass);
  REQUIRE(m2.lhs == "112");
  REQUIRE(m2.rhs == "512");

  Report m3 = kl_upper_envelope(3);
  REQUIRE(m3.pass);
  REQUIRE(m3.lhs == "14400");
  REQUIRE(m3.rhs == "65536");
}

TEST_CASE("envelope beyond the enumeration cap uses the validated closed form") {
  Report m4 = kl_upper_envelope(4);
  REQUIRE(m4.pass);
  REQUIRE(m4.inputs.find("closed-form") != std::string::npos);
  REQUIRE(m4.lhs == "7626496");  // 256 * 31^3
  Report m6 = kl_upper_envelope(6);
  REQUIRE(m6.pass);
}

TEST_CASE("progressions achieve the quadratic dilate sum") {
  REQUIRE(ap(1) == PointSet::origin());
  REQUIRE(dilate_sum(ap(2)).size() == 4);
  REQUIRE(dilate_sum(ap(5)).size() == 25);
  for (std::int64_t n = 1; n <= 10; ++n) {
    REQUIRE(doubling_k(ap(n)) == Rational::of(n, 1));
  }
}

TEST_CASE("grids beat progressions once the exponent grows") {
  // measured at desk scale, not asserted asymptotically
  PointSet g = kl_grid(3, 2);  // 9 points
  REQUIRE(dilate_sum(g).size() < dilate_sum(ap(9)).size());
}

TEST_CASE("random ideals are deterministic, downward closed, and sized") {
  REQUIRE(random_ideal(1, 3, 7) == PointSet::origin());
  REQUIRE(random_ideal(3, 1, 7) == PointSet::from_rows({{0}, {1}, {2}}));

  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 25;
    const int d = 1 + static_cast<int>(rng() % 4);
    const std::uint64_t seed = rng();
    PointSet a = random_ideal(n, d, seed);
    REQUIRE(a.size() == n);
    REQUIRE(a.dim() <= d);
    REQUIRE(is_compressed(a));
    REQUIRE(compress_full(a) == a);
    REQUIRE(random_ideal(n, d, seed) == a);
  }
}
