#pragma once

#include "lcache/trace.hpp"

namespace lcache {

struct OptReport {
  std::int64_t opt_cost = 0;     // misses of the offline optimum
  std::int64_t clean_count = 0;  // L: clean arrivals summed over phases
};

// Furthest-in-future eviction (Belady's rule); equals the offline optimum for
// unweighted paging. Empty slots are filled before any eviction; a tie (two
// cached pages that never reappear) evicts the smaller PageId.
std::int64_t belady_cost(const Trace& trace, int k);

// Exact minimum misses by dynamic programming over cache states. Guarded:
// n <= 14, distinct pages <= 6, k <= 4.
std::int64_t brute_force_opt(const Trace& trace, int k);

// L = sum over phases of pages that appear in the phase but not in the
// previous one; every distinct page of the first phase counts as clean.
std::int64_t count_clean(const Trace& trace, int k);

OptReport opt_report(const Trace& trace, int k);

}  // namespace lcache
