#include "lcache/lemma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <vector>

#include "lcache/rng.hpp"

namespace lcache {

namespace {

// Merge-sort count of strict inversions (a[i] > a[j] for i < j). Equal pairs
// are added separately afterwards, since the merge takes the left side first
// on ties and therefore never counts them.
std::int64_t strict_inversions(std::vector<std::int64_t>& a,
                               std::vector<std::int64_t>& scratch,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = strict_inversions(a, scratch, lo, mid) +
                       strict_inversions(a, scratch, mid, hi);
  std::size_t left = lo, right = mid, out = lo;
  while (left < mid && right < hi) {
    if (a[right] < a[left]) {
      count += static_cast<std::int64_t>(mid - left);
      scratch[out++] = a[right++];
    } else {
      scratch[out++] = a[left++];
    }
  }
  std::copy(a.begin() + left, a.begin() + mid, scratch.begin() + out);
  std::copy(a.begin() + right, a.begin() + hi, scratch.begin() + out + (mid - left));
  std::copy(scratch.begin() + lo, scratch.begin() + hi, a.begin() + lo);
  return count;
}

}  // namespace

std::int64_t inversions(const std::vector<std::int64_t>& a) {
  std::vector<std::int64_t> work(a);
  std::vector<std::int64_t> scratch(a.size());
  std::int64_t count = strict_inversions(work, scratch, 0, work.size());
  // work is now sorted; equal pairs count toward the >= definition
  for (std::size_t i = 0; i < work.size();) {
    std::size_t j = i;
    while (j < work.size() && work[j] == work[i]) ++j;
    const std::int64_t run = static_cast<std::int64_t>(j - i);
    count += run * (run - 1) / 2;
    i = j;
  }
  return count;
}

std::int64_t l1_cost(const std::vector<std::int64_t>& a,
                     const std::vector<std::int64_t>& m) {
  if (a.size() != m.size()) throw std::invalid_argument("l1_cost: length mismatch");
  std::int64_t cost = 0;
  for (std::size_t i = 0; i < a.size(); ++i) cost += std::llabs(a[i] - m[i]);
  return cost;
}

bool check_inversion_lemma(const std::vector<std::int64_t>& a,
                           const std::vector<std::int64_t>& m) {
  for (std::size_t i = 1; i < m.size(); ++i)
    if (m[i] <= m[i - 1])
      throw std::invalid_argument("check_inversion_lemma: m not strictly increasing");
  return inversions(a) <= 2 * l1_cost(a, m);
}

BoundedGeomReport check_bounded_geom(int k, int l, int trials, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("check_bounded_geom: k must be >= 2");
  if (l < 2 || l > k) throw std::invalid_argument("check_bounded_geom: l must be in [2, k]");
  if (trials < 1000) throw std::invalid_argument("check_bounded_geom: trials must be >= 1000");

  const std::int64_t draws =
      static_cast<std::int64_t>(std::ceil(3.0 * k * std::log(static_cast<double>(k))));
  std::mt19937_64 gen(seed);
  std::vector<double> sum(l, 0.0), sum_sq(l, 0.0);
  std::vector<char> seen(static_cast<std::size_t>(l) + 1, 0);
  std::vector<std::int64_t> t(l, 0);
  for (int trial = 0; trial < trials; ++trial) {
    std::fill(seen.begin(), seen.end(), 0);
    std::fill(t.begin(), t.end(), 0);
    int y = 0;  // distinct values in {1..l} seen before the current draw
    for (std::int64_t i = 0; i < draws; ++i) {
      if (y < l) ++t[y];
      const std::int64_t x = static_cast<std::int64_t>(bounded(gen, k)) + 1;
      if (x <= l && !seen[x]) {
        seen[x] = 1;
        ++y;
      }
    }
    for (int j = 0; j < l; ++j) {
      sum[j] += static_cast<double>(t[j]);
      sum_sq[j] += static_cast<double>(t[j]) * static_cast<double>(t[j]);
    }
  }

  BoundedGeomReport rep;
  rep.empirical_means.resize(l);
  rep.stderrs.resize(l);
  rep.floors.resize(l);
  for (int j = 0; j < l; ++j) {
    const double mean = sum[j] / trials;
    const double var = std::max(0.0, sum_sq[j] / trials - mean * mean);
    const double se = std::sqrt(var / trials);
    rep.empirical_means[j] = mean;
    rep.stderrs[j] = se;
    rep.floors[j] = static_cast<double>(k) / (l - j) - 1.0 / k;
    if (mean + 3.0 * se < rep.floors[j]) rep.violations.push_back(j);
  }
  return rep;
}

double harmonic(std::int64_t k) {
  double h = 0.0;
  for (std::int64_t i = 1; i <= k; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

}  // namespace lcache
