#include "lcache/lemma.hpp"

#include <random>

#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "lcache/rng.hpp"

using namespace lcache;
using V = std::vector<std::int64_t>;

TEST_CASE("inversion counting, ties included") {
  CHECK(inversions(V{3, 1, 2}) == 2);
  CHECK(inversions(V{1, 2, 3}) == 0);
  CHECK(inversions(V{2, 2}) == 1);
  CHECK(inversions(V{}) == 0);
  CHECK(inversions(V{5, 5, 5}) == 3);
}

TEST_CASE("fast inversion count matches the quadratic oracle") {
  std::mt19937_64 gen(31);
  for (int round = 0; round < 400; ++round) {
    const std::int64_t n = bounded(gen, 120);
    V a(n);
    for (auto& v : a) v = static_cast<std::int64_t>(bounded(gen, 25)) - 12;
    CHECK(inversions(a) == testutil::inversions_quadratic(a));
  }
}

TEST_CASE("l1 cost") {
  CHECK(l1_cost(V{3, 1, 2}, V{1, 2, 3}) == 4);
  CHECK(l1_cost(V{1, 2, 3}, V{1, 2, 3}) == 0);
  CHECK(l1_cost(V{2, 2}, V{1, 2}) == 1);
  CHECK_THROWS_AS(l1_cost(V{1}, V{1, 2}), std::invalid_argument);
}

TEST_CASE("inversion lemma on the documented cases") {
  CHECK(check_inversion_lemma(V{3, 1, 2}, V{1, 2, 3}));
  CHECK(check_inversion_lemma(V{2, 2}, V{1, 2}));
  CHECK(check_inversion_lemma(V{1, 2, 3}, V{1, 2, 3}));
  CHECK_THROWS_AS(check_inversion_lemma(V{1, 2}, V{2, 2}), std::invalid_argument);
}

TEST_CASE("inversion lemma, exhaustive over a small box") {
  // all A in {0..n+1}^n against M = (1..n)
  std::int64_t checked = 0;
  for (int n = 1; n <= 5; ++n) {
    V m(n), a(n, 0);
    for (int i = 0; i < n; ++i) m[i] = i + 1;
    while (true) {
      ++checked;
      REQUIRE(check_inversion_lemma(a, m));
      int pos = 0;
      while (pos < n && a[pos] == n + 1) a[pos++] = 0;
      if (pos == n) break;
      ++a[pos];
    }
  }
  CHECK(checked > 17000);
}

TEST_CASE("bounded-geometric floor holds at modest scale") {
  for (const auto& [k, l] : {std::pair{8, 2}, std::pair{8, 8}, std::pair{16, 8}}) {
    const auto rep = check_bounded_geom(k, l, 2000, 99);
    CHECK(rep.violations.empty());
    REQUIRE(static_cast<int>(rep.empirical_means.size()) == l);
    // T_0 is one draw short of a full geometric with success rate l/k
    CHECK(rep.empirical_means[0] ==
          doctest::Approx(static_cast<double>(k) / l).epsilon(0.15));
  }
  // with l == k the first draw always hits, so T_0 is exactly 1
  const auto rep = check_bounded_geom(4, 4, 1000, 5);
  CHECK(rep.empirical_means[0] == doctest::Approx(1.0));
  CHECK(rep.floors[0] == doctest::Approx(1.0 - 0.25));
}

TEST_CASE("bounded-geometric parameter validation") {
  CHECK_THROWS_AS(check_bounded_geom(8, 1, 2000, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_bounded_geom(8, 9, 2000, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_bounded_geom(8, 4, 999, 1), std::invalid_argument);
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(0) == 0.0);
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(4) == doctest::Approx(25.0 / 12.0));
}
