#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lcache/adversary.hpp"
#include "lcache/experiment.hpp"
#include "lcache/rng.hpp"
#include "lcache/trace.hpp"
#include "lcache/workload.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed_base = 0;
  int jobs = 1;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
  auto* config = cmd->add_option("--config", args.config_path, "experiment config file");
  if (config_required) config->required();
  cmd->add_option("--out", args.out_path, "output path (overrides the config's 'out')");
  cmd->add_option("--seed-base", args.seed_base, "offset added to every seed");
  cmd->add_option("--jobs", args.jobs, "parallel jobs (output is identical for any value)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--timing", args.timing,
                "append measured runtime_ms (breaks byte-for-byte determinism)");
}

std::string resolve_out(const CommonArgs& args, const lcache::ExperimentConfig& config,
                        const char* fallback) {
  if (!args.out_path.empty()) return args.out_path;
  if (!config.output_path.empty()) return config.output_path;
  return fallback;
}

int cmd_generate(const CommonArgs& args) {
  const lcache::ExperimentConfig config = lcache::parse_config(args.config_path);
  if (config.seeds.empty()) throw std::runtime_error("generate: config lists no seeds");
  const std::string prefix = resolve_out(args, config, "workload");
  const std::string wid = lcache::workload_id(config.workload);
  for (std::uint64_t seed : config.seeds) {
    const std::uint64_t eff = args.seed_base + seed;
    const std::string base = prefix + "_" + wid + "_s" + std::to_string(seed);
    if (const auto* w = std::get_if<lcache::OmegaWorkload>(&config.workload)) {
      const auto inst = lcache::sample_omega(w->k, w->t, w->n, eff);
      lcache::save_instance(inst, base + ".trace", base + ".meta");
      std::cout << base << ".trace " << base << ".meta\n";
      continue;
    }
    std::vector<lcache::PageId> requests;
    if (const auto* w = std::get_if<lcache::UniformWorkload>(&config.workload))
      requests = lcache::uniform_random_requests(w->universe, w->length,
                                                 lcache::mix_seed(eff, 'W'));
    else if (const auto* w = std::get_if<lcache::ZipfWorkload>(&config.workload))
      requests = lcache::zipf_requests(w->universe, w->length, w->exponent,
                                       lcache::mix_seed(eff, 'W'));
    else
      throw std::runtime_error("generate: needs an omega/uniform/zipf workload");
    lcache::Trace trace;
    if (config.noise) {
      auto preds =
          lcache::noisy_predictions(requests, *config.noise, lcache::mix_seed(eff, 'N'));
      trace = lcache::make_trace(std::move(requests), std::move(preds));
    } else {
      trace = lcache::make_trace(std::move(requests));
    }
    lcache::save_trace(base + ".trace", trace, trace.has_predictions());
    std::cout << base << ".trace\n";
  }
  return 0;
}

int cmd_simulate(const CommonArgs& args) {
  const lcache::ExperimentConfig config = lcache::parse_config(args.config_path);
  if (config.noise_grid.size() > 1)
    throw std::runtime_error("simulate: more than one noise level (use the sweep command)");
  const lcache::RunOptions options{args.jobs, args.seed_base, args.timing};
  const auto rows = lcache::run_experiment(config, options);
  lcache::write_text_file(resolve_out(args, config, "results.csv"),
                          lcache::rows_to_csv(rows, args.timing));
  return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& plot_path) {
  const lcache::ExperimentConfig config = lcache::parse_config(args.config_path);
  const lcache::RunOptions options{args.jobs, args.seed_base, args.timing};
  const auto rows = lcache::sweep_eta(config, options);
  lcache::write_text_file(resolve_out(args, config, "sweep.csv"),
                          lcache::sweep_to_csv(rows, args.timing));
  if (!plot_path.empty())
    lcache::write_text_file(plot_path, lcache::sweep_plot_data(rows));
  return 0;
}

int cmd_lowerbound(const CommonArgs& args) {
  const lcache::ExperimentConfig config = lcache::parse_config(args.config_path);
  const lcache::RunOptions options{args.jobs, args.seed_base, args.timing};
  const auto rows = lcache::lower_bound_experiment(config, options);
  lcache::write_text_file(resolve_out(args, config, "lowerbound.csv"),
                          lcache::lower_bound_to_csv(rows));
  bool all_pass = true;
  for (const auto& row : rows) all_pass = all_pass && row.pass;
  return all_pass ? 0 : 1;
}

int cmd_verify(const CommonArgs& args) {
  lcache::ExperimentConfig config;
  if (!args.config_path.empty()) config = lcache::parse_config(args.config_path);
  const auto rows = lcache::run_verify_suite(args.seed_base);
  const std::string out = args.out_path.empty()
                              ? (config.output_path.empty() ? "verify.csv"
                                                            : config.output_path)
                              : args.out_path;
  lcache::write_text_file(out, lcache::verify_to_csv(rows));
  bool all_pass = true;
  for (const auto& row : rows) {
    std::cout << (row.pass ? "pass " : "FAIL ") << row.suite << '/' << row.item
              << " value=" << row.value << '\n';
    all_pass = all_pass && row.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cache simulation benchmark with next-arrival predictions"};
  app.require_subcommand(1);

  CommonArgs generate_args, simulate_args, sweep_args, lower_args, verify_args;
  std::string plot_path;

  auto* generate = app.add_subcommand("generate", "write workload files");
  add_common(generate, generate_args);
  auto* simulate = app.add_subcommand("simulate", "run one experiment config to CSV");
  add_common(simulate, simulate_args);
  auto* sweep = app.add_subcommand("sweep", "run a noise grid to CSV");
  add_common(sweep, sweep_args);
  sweep->add_option("--plot", plot_path, "also write two-column x,y plot data");
  auto* lowerbound = app.add_subcommand("lowerbound", "adversarial lower-bound experiment");
  add_common(lowerbound, lower_args);
  auto* verify = app.add_subcommand("verify", "run the lemma verification suites");
  add_common(verify, verify_args, false);

  CLI11_PARSE(app, argc, argv);
  try {
    if (generate->parsed()) return cmd_generate(generate_args);
    if (simulate->parsed()) return cmd_simulate(simulate_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args, plot_path);
    if (lowerbound->parsed()) return cmd_lowerbound(lower_args);
    if (verify->parsed()) return cmd_verify(verify_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
