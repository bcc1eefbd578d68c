#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lcache {

using PageId = std::uint32_t;

// A request sequence together with the oracle's per-occurrence prediction of
// the next arrival and the derived true next arrival. Time is the 1-based
// position in the sequence. true_next[i] is the next position at which
// requests[i] appears again, or n+1 if it never does.
struct Trace {
  std::vector<PageId> requests;
  std::vector<std::int64_t> predictions;  // empty when no oracle is attached
  std::vector<std::int64_t> true_next;

  std::int64_t size() const { return static_cast<std::int64_t>(requests.size()); }
  bool has_predictions() const { return !predictions.empty(); }
};

std::vector<std::int64_t> compute_true_next(const std::vector<PageId>& requests);

Trace make_trace(std::vector<PageId> requests);
Trace make_trace(std::vector<PageId> requests, std::vector<std::int64_t> predictions);

// Maximal windows containing at most k distinct pages, scanned left to right.
// Every phase other than the last holds exactly k distinct pages, and the
// first request after a non-final phase would be its (k+1)-th distinct page.
struct PhaseDecomposition {
  std::vector<std::pair<std::int64_t, std::int64_t>> boundaries;  // 1-based, inclusive
  std::vector<std::vector<PageId>> distinct_per_phase;            // sorted

  std::int64_t phase_count() const { return static_cast<std::int64_t>(boundaries.size()); }
};

PhaseDecomposition compute_phases(const std::vector<PageId>& requests, int k);

struct ErrorReport {
  std::int64_t eta = 0;                      // sum_i |prediction_i - true_next_i|
  std::vector<std::int64_t> per_phase_eta;   // attributed to the phase of position i
};

ErrorReport l1_error(const Trace& trace, const PhaseDecomposition& phases);

// Predictions with zero l1 error: exactly compute_true_next.
std::vector<std::int64_t> perfect_predictions(const std::vector<PageId>& requests);

struct NoiseModel {
  enum class Kind { AdditiveUniform, AdditiveGeometric, Scaled };

  Kind kind = Kind::AdditiveUniform;
  std::int64_t width = 0;  // AdditiveUniform: h = y + U{-width..width}
  double p = 1.0;          // AdditiveGeometric: h = y +- Geom(p)
  double sigma = 0.0;      // Scaled: h = y + round(sigma * z), z ~ N(0,1)

  static NoiseModel additive_uniform(std::int64_t width);
  static NoiseModel additive_geometric(double p);
  static NoiseModel scaled(double sigma);
};

// Deterministic given (noise, seed). Results are arbitrary integers; no
// clamping is applied, out-of-range predictions simply carry error.
std::vector<std::int64_t> noisy_predictions(const std::vector<PageId>& requests,
                                            const NoiseModel& noise,
                                            std::uint64_t seed);

// Trace file: one request per line, optional second whitespace-separated
// column holding the integer prediction for that occurrence. Lines starting
// with '#' are ignored.
Trace load_trace(const std::string& path);
void save_trace(const std::string& path, const Trace& trace, bool with_predictions);

}  // namespace lcache
