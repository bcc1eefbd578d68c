#pragma once

#include <cstdint>
#include <vector>

#include "lcache/trace.hpp"

namespace lcache {

std::vector<PageId> uniform_random_requests(std::int64_t universe, std::int64_t length,
                                            std::uint64_t seed);

// Zipf-distributed requests: page r in [0, universe) drawn with probability
// proportional to (r+1)^-exponent.
std::vector<PageId> zipf_requests(std::int64_t universe, std::int64_t length,
                                  double exponent, std::uint64_t seed);

}  // namespace lcache
