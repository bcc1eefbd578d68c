#include "lcache/trace.hpp"

#include <cstdio>
#include <random>
#include <set>

#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "lcache/rng.hpp"

using namespace lcache;
using V = std::vector<std::int64_t>;
using R = std::vector<PageId>;

TEST_CASE("compute_true_next on small sequences") {
  CHECK(compute_true_next({0, 1, 0}) == V{3, 4, 4});
  CHECK(compute_true_next({0}) == V{2});
  CHECK(compute_true_next({0, 1, 2, 0, 1}) == V{4, 5, 6, 6, 6});
  CHECK(compute_true_next({0, 1, 2, 0, 1}) ==
        testutil::next_arrival_quadratic({0, 1, 2, 0, 1}));
}

TEST_CASE("compute_true_next matches quadratic oracle on random sequences") {
  std::mt19937_64 gen(7);
  for (int round = 0; round < 200; ++round) {
    const auto requests = testutil::random_requests(gen, 1 + bounded(gen, 60), 1 + bounded(gen, 8));
    CHECK(compute_true_next(requests) == testutil::next_arrival_quadratic(requests));
  }
}

TEST_CASE("duplicating the sequence only rewrites never-again entries") {
  std::mt19937_64 gen(8);
  for (int round = 0; round < 100; ++round) {
    const auto requests = testutil::random_requests(gen, 1 + bounded(gen, 40), 1 + bounded(gen, 10));
    const std::int64_t n = static_cast<std::int64_t>(requests.size());
    auto doubled = requests;
    doubled.insert(doubled.end(), requests.begin(), requests.end());
    const auto y = compute_true_next(requests);
    const auto y2 = compute_true_next(doubled);
    for (std::int64_t i = 0; i < n; ++i) {
      if (y[i] <= n) {
        CHECK(y2[i] == y[i]);
      } else {
        // never-again entries now point at the page's first occurrence in
        // the second copy
        std::int64_t first = 0;
        while (requests[first] != requests[i]) ++first;
        CHECK(y2[i] == n + first + 1);
      }
    }
  }
}

TEST_CASE("compute_phases on the documented cases") {
  const auto phases = compute_phases({0, 1, 2, 0, 1}, 2);
  REQUIRE(phases.phase_count() == 3);
  CHECK(phases.boundaries[0] == std::pair<std::int64_t, std::int64_t>{1, 2});
  CHECK(phases.boundaries[1] == std::pair<std::int64_t, std::int64_t>{3, 4});
  CHECK(phases.boundaries[2] == std::pair<std::int64_t, std::int64_t>{5, 5});
  CHECK(phases.distinct_per_phase[0] == R{0, 1});
  CHECK(phases.distinct_per_phase[1] == R{0, 2});
  CHECK(phases.distinct_per_phase[2] == R{1});

  const auto single = compute_phases({0, 0, 0}, 2);
  REQUIRE(single.phase_count() == 1);
  CHECK(single.boundaries[0] == std::pair<std::int64_t, std::int64_t>{1, 3});
  CHECK(single.distinct_per_phase[0] == R{0});

  const auto two = compute_phases({0, 1, 0, 1, 2, 3}, 2);
  REQUIRE(two.phase_count() == 2);
  CHECK(two.boundaries[0] == std::pair<std::int64_t, std::int64_t>{1, 4});
  CHECK(two.boundaries[1] == std::pair<std::int64_t, std::int64_t>{5, 6});
}

TEST_CASE("phase decomposition invariants hold on random traces") {
  std::mt19937_64 gen(9);
  for (int round = 0; round < 200; ++round) {
    const auto requests = testutil::random_requests(gen, 1 + bounded(gen, 300), 1 + bounded(gen, 12));
    const int k = 1 + static_cast<int>(bounded(gen, 6));
    const auto phases = compute_phases(requests, k);
    std::int64_t expect_start = 1;
    for (std::int64_t r = 0; r < phases.phase_count(); ++r) {
      const auto [start, end] = phases.boundaries[r];
      CHECK(start == expect_start);
      CHECK(end >= start);
      expect_start = end + 1;
      std::set<PageId> distinct(requests.begin() + (start - 1), requests.begin() + end);
      CHECK(distinct == std::set<PageId>(phases.distinct_per_phase[r].begin(),
                                         phases.distinct_per_phase[r].end()));
      if (r + 1 < phases.phase_count()) {
        CHECK(static_cast<int>(distinct.size()) == k);
        // the next phase's first request would be the (k+1)-th distinct page
        distinct.insert(requests[end]);
        CHECK(static_cast<int>(distinct.size()) == k + 1);
      } else {
        CHECK(static_cast<int>(distinct.size()) <= k);
      }
    }
    CHECK(expect_start == static_cast<std::int64_t>(requests.size()) + 1);
  }
}

TEST_CASE("l1_error on the documented cases") {
  {
    const Trace t = make_trace({0, 1, 0}, {3, 4, 4});
    CHECK(l1_error(t, compute_phases(t.requests, 2)).eta == 0);
  }
  {
    const Trace t = make_trace({0, 1, 0}, {5, 4, 4});
    CHECK(l1_error(t, compute_phases(t.requests, 2)).eta == 2);
  }
  {
    const Trace t = make_trace({0, 1, 2, 0, 1}, {1, 1, 1, 1, 1});
    const auto rep = l1_error(t, compute_phases(t.requests, 2));
    CHECK(rep.eta == 22);  // 3+4+5+5+5
    std::int64_t sum = 0;
    for (auto e : rep.per_phase_eta) sum += e;
    CHECK(sum == rep.eta);
  }
}

TEST_CASE("l1 error agrees with a from-scratch quadratic recomputation") {
  std::mt19937_64 gen(12);
  for (int round = 0; round < 60; ++round) {
    const auto requests = testutil::random_requests(gen, 1 + bounded(gen, 80), 1 + bounded(gen, 8));
    const auto preds = noisy_predictions(requests, NoiseModel::additive_uniform(9), gen());
    const Trace t = make_trace(requests, preds);
    const auto oracle_y = testutil::next_arrival_quadratic(requests);
    std::int64_t expected = 0;
    for (std::size_t i = 0; i < preds.size(); ++i)
      expected += std::abs(preds[i] - oracle_y[i]);
    CHECK(l1_error(t, compute_phases(requests, 3)).eta == expected);
  }
}

TEST_CASE("perfect predictions have zero error") {
  std::mt19937_64 gen(10);
  for (int round = 0; round < 50; ++round) {
    const auto requests = testutil::random_requests(gen, 1 + bounded(gen, 100), 1 + bounded(gen, 9));
    const Trace t = make_trace(requests, perfect_predictions(requests));
    CHECK(l1_error(t, compute_phases(requests, 3)).eta == 0);
  }
}

TEST_CASE("noisy predictions: determinism, zero width, error bound") {
  std::mt19937_64 gen(11);
  const auto requests = testutil::random_requests(gen, 400, 20);

  CHECK(noisy_predictions(requests, NoiseModel::additive_uniform(0), 5) ==
        perfect_predictions(requests));

  const auto a = noisy_predictions(requests, NoiseModel::additive_uniform(3), 42);
  const auto b = noisy_predictions(requests, NoiseModel::additive_uniform(3), 42);
  CHECK(a == b);
  CHECK(a != noisy_predictions(requests, NoiseModel::additive_uniform(3), 43));

  const Trace t = make_trace(requests, a);
  const auto rep = l1_error(t, compute_phases(requests, 4));
  CHECK(rep.eta <= static_cast<std::int64_t>(requests.size()) * 3);

  const auto g1 = noisy_predictions(requests, NoiseModel::additive_geometric(0.5), 7);
  CHECK(g1 == noisy_predictions(requests, NoiseModel::additive_geometric(0.5), 7));
  const auto s1 = noisy_predictions(requests, NoiseModel::scaled(2.5), 7);
  CHECK(s1 == noisy_predictions(requests, NoiseModel::scaled(2.5), 7));

  // geometric with p = 1 always perturbs by exactly 1
  const auto g2 = noisy_predictions(requests, NoiseModel::additive_geometric(1.0), 3);
  const auto y = perfect_predictions(requests);
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(std::abs(g2[i] - y[i]) == 1);
}

TEST_CASE("noise parameter validation") {
  CHECK_THROWS_AS(NoiseModel::additive_uniform(-1), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel::additive_geometric(0.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel::additive_geometric(1.5), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel::scaled(-0.5), std::invalid_argument);
}

TEST_CASE("trace file round trip and diagnostics") {
  const char* path = "tmp_trace_io.trace";
  const Trace t = make_trace({5, 7, 5, 9}, {3, 10, 5, 5});
  save_trace(path, t, true);
  const Trace back = load_trace(path);
  CHECK(back.requests == t.requests);
  CHECK(back.predictions == t.predictions);
  CHECK(back.true_next == t.true_next);

  {
    std::FILE* f = std::fopen(path, "w");
    std::fputs("# comment line\n5\n\n7\n5\n", f);
    std::fclose(f);
    const Trace bare = load_trace(path);
    CHECK(bare.requests == R{5, 7, 5});
    CHECK_FALSE(bare.has_predictions());
  }
  {
    std::FILE* f = std::fopen(path, "w");
    std::fputs("5 3\n7\n", f);
    std::fclose(f);
    CHECK_THROWS(load_trace(path));  // prediction column on some lines only
  }
  {
    std::FILE* f = std::fopen(path, "w");
    std::fputs("5\nnot_a_page\n", f);
    std::fclose(f);
    CHECK_THROWS_WITH_AS(load_trace(path), doctest::Contains(":2:"), std::runtime_error);
  }
  std::remove(path);
}
