#include "lcache/workload.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lcache/rng.hpp"

namespace lcache {

std::vector<PageId> uniform_random_requests(std::int64_t universe, std::int64_t length,
                                            std::uint64_t seed) {
  if (universe < 1 || length < 1)
    throw std::invalid_argument("uniform_random_requests: universe and length must be >= 1");
  std::mt19937_64 gen(seed);
  std::vector<PageId> requests(length);
  for (auto& page : requests)
    page = static_cast<PageId>(bounded(gen, static_cast<std::uint64_t>(universe)));
  return requests;
}

std::vector<PageId> zipf_requests(std::int64_t universe, std::int64_t length,
                                  double exponent, std::uint64_t seed) {
  if (universe < 1 || length < 1)
    throw std::invalid_argument("zipf_requests: universe and length must be >= 1");
  if (exponent < 0.0) throw std::invalid_argument("zipf_requests: exponent must be >= 0");
  std::vector<double> cdf(universe);
  double total = 0.0;
  for (std::int64_t r = 0; r < universe; ++r) {
    total += std::pow(static_cast<double>(r + 1), -exponent);
    cdf[r] = total;
  }
  std::mt19937_64 gen(seed);
  std::vector<PageId> requests(length);
  for (auto& page : requests) {
    const double u = uniform01(gen) * total;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    page = static_cast<PageId>(it - cdf.begin());
  }
  return requests;
}

}  // namespace lcache
