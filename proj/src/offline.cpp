#include "lcache/offline.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lcache {

namespace {

// Ordered so that *rbegin() is the eviction victim: latest next arrival,
// smaller PageId among ties (ties occur only at the never-again value n+1).
struct VictimOrder {
  bool operator()(const std::pair<std::int64_t, PageId>& a,
                  const std::pair<std::int64_t, PageId>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  }
};

}  // namespace

std::int64_t belady_cost(const Trace& trace, int k) {
  if (k < 1) throw std::invalid_argument("belady_cost: k must be >= 1");
  std::int64_t misses = 0;
  std::set<std::pair<std::int64_t, PageId>, VictimOrder> by_next;
  std::unordered_map<PageId, std::int64_t> cached_next;  // page -> key in by_next
  cached_next.reserve(static_cast<std::size_t>(k) * 2);
  for (std::int64_t i = 0; i < trace.size(); ++i) {
    const PageId page = trace.requests[i];
    const std::int64_t next = trace.true_next[i];
    auto it = cached_next.find(page);
    if (it != cached_next.end()) {
      by_next.erase({it->second, page});
      by_next.emplace(next, page);
      it->second = next;
      continue;
    }
    ++misses;
    if (cached_next.size() == static_cast<std::size_t>(k)) {
      auto victim = std::prev(by_next.end());
      cached_next.erase(victim->second);
      by_next.erase(victim);
    }
    cached_next.emplace(page, next);
    by_next.emplace(next, page);
  }
  return misses;
}

std::int64_t brute_force_opt(const Trace& trace, int k) {
  if (k < 1) throw std::invalid_argument("brute_force_opt: k must be >= 1");
  const std::int64_t n = trace.size();
  std::vector<PageId> distinct(trace.requests);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (n > 14 || distinct.size() > 6 || k > 4)
    throw std::invalid_argument(
        "brute_force_opt: instance too large (needs n <= 14, distinct <= 6, k <= 4)");

  std::unordered_map<PageId, int> index;
  for (std::size_t d = 0; d < distinct.size(); ++d) index[distinct[d]] = static_cast<int>(d);

  // states[mask] = minimum misses so far ending with exactly that cache set
  constexpr std::int64_t kUnreached = -1;
  std::vector<std::int64_t> states(1u << distinct.size(), kUnreached);
  states[0] = 0;
  std::vector<std::int64_t> next_states(states.size());
  for (std::int64_t i = 0; i < n; ++i) {
    const unsigned bit = 1u << index[trace.requests[i]];
    std::fill(next_states.begin(), next_states.end(), kUnreached);
    auto relax = [&](unsigned mask, std::int64_t cost) {
      if (next_states[mask] == kUnreached || cost < next_states[mask])
        next_states[mask] = cost;
    };
    for (unsigned mask = 0; mask < states.size(); ++mask) {
      if (states[mask] == kUnreached) continue;
      const std::int64_t cost = states[mask];
      if (mask & bit) {
        relax(mask, cost);  // hit
        continue;
      }
      if (std::popcount(mask) < k) {
        relax(mask | bit, cost + 1);  // cold insertion
        continue;
      }
      for (unsigned rest = mask; rest != 0; rest &= rest - 1) {
        const unsigned victim = rest & (~rest + 1);
        relax((mask ^ victim) | bit, cost + 1);
      }
    }
    states.swap(next_states);
  }
  std::int64_t best = kUnreached;
  for (std::int64_t cost : states)
    if (cost != kUnreached && (best == kUnreached || cost < best)) best = cost;
  return best;
}

std::int64_t count_clean(const Trace& trace, int k) {
  const PhaseDecomposition phases = compute_phases(trace.requests, k);
  std::int64_t clean = 0;
  for (std::int64_t r = 0; r < phases.phase_count(); ++r) {
    const auto& cur = phases.distinct_per_phase[r];
    if (r == 0) {
      clean += static_cast<std::int64_t>(cur.size());
      continue;
    }
    const auto& prev = phases.distinct_per_phase[r - 1];
    for (PageId page : cur)
      if (!std::binary_search(prev.begin(), prev.end(), page)) ++clean;
  }
  return clean;
}

OptReport opt_report(const Trace& trace, int k) {
  return OptReport{belady_cost(trace, k), count_clean(trace, k)};
}

}  // namespace lcache
