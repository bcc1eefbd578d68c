#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lcache/policy.hpp"
#include "lcache/trace.hpp"

namespace lcache {

struct FileWorkload {
  std::string path;
};
struct OmegaWorkload {
  int k = 0;
  int t = 0;
  std::int64_t n = 0;
};
struct UniformWorkload {
  std::int64_t universe = 0;
  std::int64_t length = 0;
};
struct ZipfWorkload {
  std::int64_t universe = 0;
  std::int64_t length = 0;
  double exponent = 1.0;
};
using Workload = std::variant<FileWorkload, OmegaWorkload, UniformWorkload, ZipfWorkload>;

std::string workload_id(const Workload& workload);
std::string noise_label(const std::optional<NoiseModel>& noise);

struct ExperimentConfig {
  Workload workload;
  std::vector<PolicySpec> policies;
  int k = 0;  // for omega workloads, defaults to the construction's k
  std::optional<NoiseModel> noise;      // overrides trace predictions
  std::vector<NoiseModel> noise_grid;   // sweep subcommand
  std::vector<std::uint64_t> seeds;
  std::vector<int> t_list;              // lowerbound subcommand
  std::int64_t n = 0;                   // lowerbound subcommand
  std::string output_path;
};

// Flat key=value file with repeated keys for lists; '#' starts a comment.
// Throws with file:line diagnostics on malformed input.
ExperimentConfig parse_config(const std::string& path);

struct ResultRow {
  std::string workload;
  std::string policy;
  std::uint64_t seed = 0;
  int k = 0;
  std::int64_t misses = 0;
  std::int64_t opt_cost = 0;
  double ratio = 0.0;
  std::int64_t eta = 0;
  double eta_over_opt = 0.0;
  std::int64_t clean_L = 0;
  std::int64_t chains_C = 0;
  std::int64_t sum_n_star = 0;
  std::int64_t runtime_ms = 0;
};

struct RunOptions {
  int jobs = 1;
  std::uint64_t seed_base = 0;
  // Adds the measured runtime_ms column. Off by default so that two runs of
  // the same config stay byte-identical.
  bool timing = false;
};

// One row per (policy, seed), in that order; deterministic given the config
// and seed_base, for any jobs value.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      const RunOptions& options = {});

struct SweepRow {
  std::string noise;
  ResultRow row;
  double lmarker_ref = 0.0;   // 4 + 2 H(min(2 eta/opt, k))
  double combiner_ref = 0.0;  // 9 min(4 + 7x + 3x H(k), 2 H(k)), x = (eta/opt)/k
};

std::vector<SweepRow> sweep_eta(const ExperimentConfig& config,
                                const RunOptions& options = {});

struct LowerBoundRow {
  int k = 0;
  int t = 0;
  std::int64_t n = 0;
  std::string policy;
  std::int64_t seeds = 0;
  double mean_misses = 0.0;
  double floor_ref = 0.0;  // (n t / 2) (H(k) - H(t))
  double mean_eta_over_opt = 0.0;
  bool pass = false;
};

std::vector<LowerBoundRow> lower_bound_experiment(const ExperimentConfig& config,
                                                  const RunOptions& options = {});

struct VerifyRow {
  std::string suite;
  std::string item;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyScale {
  int inversion_max_n = 5;
  std::int64_t inversion_box = 6;      // A entries range over {0..box}
  std::int64_t inversion_fuzz = 100000;
  std::int64_t inversion_fuzz_max_n = 200;
  int geom_trials = 10000;
};

std::vector<VerifyRow> run_verify_suite(std::uint64_t seed_base,
                                        const VerifyScale& scale = {});

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool timing);
std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool timing);
std::string lower_bound_to_csv(const std::vector<LowerBoundRow>& rows);
std::string verify_to_csv(const std::vector<VerifyRow>& rows);

// Two-column x,y text grouped per policy: x = mean realized eta/opt at a
// noise level, y = mean ratio.
std::string sweep_plot_data(const std::vector<SweepRow>& rows);

void write_text_file(const std::string& path, const std::string& body);

}  // namespace lcache
