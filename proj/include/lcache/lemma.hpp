#pragma once

#include <cstdint>
#include <vector>

namespace lcache {

// Number of pairs i < j with a[i] >= a[j]; note that ties count.
std::int64_t inversions(const std::vector<std::int64_t>& a);

// sum_i |a[i] - m[i]|; m must be the same length as a.
std::int64_t l1_cost(const std::vector<std::int64_t>& a,
                     const std::vector<std::int64_t>& m);

// inversions(a) <= 2 * l1_cost(a, m), for strictly increasing m.
bool check_inversion_lemma(const std::vector<std::int64_t>& a,
                           const std::vector<std::int64_t>& m);

// Monte Carlo check of the bounded-geometric expectation floor.
//
// Per trial: draw ceil(3 k ln k) values iid uniform on {1..k}; before draw i,
// let Y_i be the number of distinct values seen so far that lie in {1..l};
// T_j counts the draws made while Y_i = j. The floor E[T_j] >= k/(l-j) - 1/k
// is flagged for any j where mean + 3*stderr still falls short.
struct BoundedGeomReport {
  std::vector<double> empirical_means;  // indexed by j in [0, l)
  std::vector<double> stderrs;
  std::vector<double> floors;           // k/(l-j) - 1/k
  std::vector<int> violations;          // flagged j values
};

BoundedGeomReport check_bounded_geom(int k, int l, int trials, std::uint64_t seed);

// k-th harmonic number; harmonic(0) == 0.
double harmonic(std::int64_t k);

}  // namespace lcache
