#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcache/trace.hpp"

namespace lcache {

enum class PolicyKind {
  Lru,
  RandomMarker,
  BlindFollow,
  PredictiveMarker,
  LMarker,
  LNonMarker,
  Combiner,
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::Lru;
  std::uint64_t seed = 0;

  // PredictiveMarker: chains trust the oracle for their first tau evictions.
  // tau == 0 selects the default ceil(H(k)).
  int tau = 0;

  // Combiner: switch away from the followed policy once its shadow misses
  // exceed gamma times the other's.
  double gamma = 2.0;
  std::vector<PolicySpec> inner;  // Combiner: exactly two non-combiner specs

  static PolicySpec lru() { return {PolicyKind::Lru, 0, 0, 2.0, {}}; }
  static PolicySpec random_marker(std::uint64_t seed) {
    return {PolicyKind::RandomMarker, seed, 0, 2.0, {}};
  }
  static PolicySpec blind_follow() { return {PolicyKind::BlindFollow, 0, 0, 2.0, {}}; }
  static PolicySpec predictive_marker(std::uint64_t seed, int tau = 0) {
    return {PolicyKind::PredictiveMarker, seed, tau, 2.0, {}};
  }
  static PolicySpec lmarker(std::uint64_t seed) {
    return {PolicyKind::LMarker, seed, 0, 2.0, {}};
  }
  static PolicySpec lnonmarker(std::uint64_t seed) {
    return {PolicyKind::LNonMarker, seed, 0, 2.0, {}};
  }
  static PolicySpec combiner(PolicySpec a, PolicySpec b, double gamma = 2.0,
                             std::uint64_t seed = 0);
};

bool policy_uses_predictions(const PolicySpec& spec);
std::string policy_name(const PolicySpec& spec);

// One eviction chain: the run of misses a phase blames on a single clean
// (marker view) or non-initial (general view) arrival.
struct ChainRecord {
  std::int64_t phase_index = 0;
  std::int64_t head_time = 0;  // arrival time of the head
  std::int64_t length = 1;     // misses attributed to this chain
  // Distinct pages requested after the in-phase reappearance of the head's
  // first victim; stays 0 if that victim never reappears in the phase.
  std::int64_t n_star = 0;
};

struct SimReport {
  std::int64_t misses = 0;
  std::vector<std::int64_t> per_phase_misses;
  std::vector<ChainRecord> chains;
  std::int64_t chain_count_C = 0;   // non-initial arrivals over all phases
  std::int64_t clean_count_L = 0;   // clean arrivals over all phases
  std::int64_t sum_n_star = 0;

  // Combiner instrumentation; zero for plain policies.
  std::int64_t switch_count = 0;
  std::int64_t shadow_misses_a = 0;
  std::int64_t shadow_misses_b = 0;
};

// Shared, policy-independent per-(trace, k) precomputation.
struct PhaseInfo {
  PhaseDecomposition phases;
  std::vector<std::int32_t> phase_of;       // 0-based phase index per position
  std::vector<std::uint8_t> first_arrival;  // first in-phase occurrence
  std::vector<std::uint8_t> clean;          // meaningful at first arrivals
  std::vector<std::int32_t> distinct_after; // distinct pages later in the phase
  std::vector<std::int64_t> clean_per_phase;
  std::int64_t clean_total = 0;
};

PhaseInfo analyze_phases(const Trace& trace, int k);

SimReport simulate(const PolicySpec& spec, const Trace& trace, int k);
SimReport simulate(const PolicySpec& spec, const Trace& trace, int k,
                   const PhaseInfo& info);

// Lemma instrumentation checks over LNonMarker reports. Both carry the
// additive slack that covers the bounded last-two-phase discrepancy, and are
// expected to hold on every execution.
bool verify_lemma_totalerror(const SimReport& report, const ErrorReport& error, int k);
bool verify_lemma_injection(const SimReport& report, const ErrorReport& error, int k);

}  // namespace lcache
