#pragma once

#include <random>
#include <vector>

#include "lcache/rng.hpp"
#include "lcache/trace.hpp"

namespace testutil {

// Quadratic restatement of the next-arrival definition, kept independent of
// the implementation it checks.
inline std::vector<std::int64_t> next_arrival_quadratic(
    const std::vector<lcache::PageId>& requests) {
  const std::int64_t n = static_cast<std::int64_t>(requests.size());
  std::vector<std::int64_t> next(requests.size(), n + 1);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j)
      if (requests[j] == requests[i]) {
        next[i] = j + 1;
        break;
      }
  return next;
}

inline std::int64_t inversions_quadratic(const std::vector<std::int64_t>& a) {
  std::int64_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] >= a[j]) ++count;
  return count;
}

inline std::vector<lcache::PageId> random_requests(std::mt19937_64& gen,
                                                   std::int64_t length,
                                                   std::int64_t universe) {
  std::vector<lcache::PageId> requests(length);
  for (auto& page : requests)
    page = static_cast<lcache::PageId>(lcache::bounded(gen, universe));
  return requests;
}

}  // namespace testutil
