#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcache/trace.hpp"

namespace lcache {

// One sample from the adversarial input family: n phases over the universe
// {1..k+t}, each phase made of a random part (iid draws from the phase's k
// live pages) followed by one copy of those pages in increasing order, with
// deliberately uninformative predictions attached.
struct AdversarialInstance {
  Trace trace;
  int k = 0;
  int t = 0;
  std::int64_t n = 0;                 // number of phases
  std::int64_t phase_len_m = 0;       // random_part_len + k
  std::int64_t random_part_len = 0;   // ceil(3 k ln k) unless overridden
  std::uint64_t seed = 0;
  std::vector<std::vector<PageId>> clean_sets;  // C_r, sorted
  std::vector<std::vector<PageId>> stale_sets;  // S_r, sorted
};

std::int64_t default_random_part_len(int k);

AdversarialInstance sample_omega(int k, int t, std::int64_t n, std::uint64_t seed);
AdversarialInstance sample_omega(int k, int t, std::int64_t n, std::uint64_t seed,
                                 std::int64_t random_part_len);

struct InstanceStats {
  std::int64_t eta = 0;
  std::int64_t opt_cost = 0;
  double eta_over_opt = 0.0;
};

InstanceStats instance_stats(const AdversarialInstance& inst);

// Trace file in the two-column format plus a key=value sidecar with the
// construction parameters.
void save_instance(const AdversarialInstance& inst, const std::string& trace_path,
                   const std::string& meta_path);

struct OmegaParams {
  int k = 0;
  int t = 0;
  std::int64_t n = 0;
  std::int64_t phase_len_m = 0;
  std::int64_t random_part_len = 0;
  std::uint64_t seed = 0;
};

OmegaParams load_omega_meta(const std::string& meta_path);

}  // namespace lcache
