#include "lcache/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "lcache/adversary.hpp"
#include "lcache/lemma.hpp"
#include "lcache/offline.hpp"
#include "lcache/rng.hpp"
#include "lcache/workload.hpp"

namespace lcache {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// "name(a,b,c)" -> name plus top-level comma-separated args; bare "name" has
// no args. Nested parentheses stay inside a single arg.
std::pair<std::string, std::vector<std::string>> parse_call(const std::string& raw) {
  const std::string s = trim(raw);
  const std::size_t open = s.find('(');
  if (open == std::string::npos) return {s, {}};
  if (s.empty() || s.back() != ')')
    throw std::invalid_argument("malformed value: " + s);
  std::vector<std::string> args;
  std::string cur;
  int depth = 0;
  for (std::size_t i = open + 1; i + 1 < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      args.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !args.empty()) args.push_back(trim(cur));
  return {trim(s.substr(0, open)), args};
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  const std::int64_t v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: " + s);
  return v;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

PolicySpec parse_policy(const std::string& s) {
  const auto [name, args] = parse_call(s);
  auto expect_args = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw std::invalid_argument("policy " + name + ": wrong argument count");
  };
  if (name == "LRU") {
    expect_args(0, 0);
    return PolicySpec::lru();
  }
  if (name == "RANDOM_MARKER") {
    expect_args(0, 0);
    return PolicySpec::random_marker(0);
  }
  if (name == "BLIND_FOLLOW") {
    expect_args(0, 0);
    return PolicySpec::blind_follow();
  }
  if (name == "LMARKER") {
    expect_args(0, 0);
    return PolicySpec::lmarker(0);
  }
  if (name == "LNONMARKER") {
    expect_args(0, 0);
    return PolicySpec::lnonmarker(0);
  }
  if (name == "PREDICTIVE_MARKER") {
    expect_args(0, 1);
    int tau = 0;
    if (args.size() == 1) {
      tau = static_cast<int>(parse_int(args[0]));
      if (tau < 1) throw std::invalid_argument("PREDICTIVE_MARKER: tau must be >= 1");
    }
    return PolicySpec::predictive_marker(0, tau);
  }
  if (name == "COMBINER") {
    expect_args(2, 3);
    PolicySpec a = parse_policy(args[0]);
    PolicySpec b = parse_policy(args[1]);
    double gamma = 2.0;
    if (args.size() == 3) gamma = parse_double(args[2]);
    return PolicySpec::combiner(std::move(a), std::move(b), gamma);
  }
  throw std::invalid_argument("unknown policy: " + name);
}

std::optional<NoiseModel> parse_noise(const std::string& s) {
  const auto [name, args] = parse_call(s);
  if (name == "none") return std::nullopt;
  if (args.size() != 1)
    throw std::invalid_argument("noise " + name + ": expected one parameter");
  if (name == "additive_uniform") return NoiseModel::additive_uniform(parse_int(args[0]));
  if (name == "additive_geometric") return NoiseModel::additive_geometric(parse_double(args[0]));
  if (name == "scaled") return NoiseModel::scaled(parse_double(args[0]));
  throw std::invalid_argument("unknown noise model: " + name);
}

Workload parse_workload(const std::string& s) {
  const auto [name, args] = parse_call(s);
  if (name == "file") {
    if (args.size() != 1) throw std::invalid_argument("file workload: expected file(path)");
    return FileWorkload{args[0]};
  }
  if (name == "omega") {
    if (args.size() != 3) throw std::invalid_argument("omega workload: expected omega(k,t,n)");
    return OmegaWorkload{static_cast<int>(parse_int(args[0])),
                         static_cast<int>(parse_int(args[1])), parse_int(args[2])};
  }
  if (name == "uniform" || name == "uniform_random") {
    if (args.size() != 2)
      throw std::invalid_argument("uniform workload: expected uniform(universe,length)");
    return UniformWorkload{parse_int(args[0]), parse_int(args[1])};
  }
  if (name == "zipf") {
    if (args.size() != 3)
      throw std::invalid_argument("zipf workload: expected zipf(universe,length,exponent)");
    return ZipfWorkload{parse_int(args[0]), parse_int(args[1]), parse_double(args[2])};
  }
  throw std::invalid_argument("unknown workload: " + name);
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex err_mutex;
  std::exception_ptr err;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(err_mutex);
        if (!err) err = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t width = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  pool.reserve(width);
  for (std::size_t j = 0; j < width; ++j) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (err) std::rethrow_exception(err);
}

struct InstanceData {
  Trace trace;
  PhaseInfo info;
  std::int64_t opt = 0;
  std::int64_t eta = 0;
};

void finalize_instance(InstanceData& data, int k) {
  data.info = analyze_phases(data.trace, k);
  data.opt = belady_cost(data.trace, k);
  data.eta = data.trace.has_predictions()
                 ? l1_error(data.trace, data.info.phases).eta
                 : 0;
}

InstanceData build_instance(const ExperimentConfig& config, int k,
                            std::uint64_t eff_seed, const Trace* file_trace) {
  InstanceData data;
  if (const auto* w = std::get_if<OmegaWorkload>(&config.workload)) {
    data.trace = sample_omega(w->k, w->t, w->n, eff_seed).trace;
  } else if (const auto* w = std::get_if<UniformWorkload>(&config.workload)) {
    data.trace = make_trace(
        uniform_random_requests(w->universe, w->length, mix_seed(eff_seed, 'W')));
  } else if (const auto* w = std::get_if<ZipfWorkload>(&config.workload)) {
    data.trace = make_trace(
        zipf_requests(w->universe, w->length, w->exponent, mix_seed(eff_seed, 'W')));
  } else {
    data.trace = *file_trace;
  }
  if (config.noise) {
    data.trace.predictions =
        noisy_predictions(data.trace.requests, *config.noise, mix_seed(eff_seed, 'N'));
  } else if (!data.trace.has_predictions()) {
    data.trace.predictions = perfect_predictions(data.trace.requests);
  }
  finalize_instance(data, k);
  return data;
}

int resolved_k(const ExperimentConfig& config) {
  if (const auto* w = std::get_if<OmegaWorkload>(&config.workload)) {
    if (config.k != 0 && config.k != w->k)
      throw std::invalid_argument("config: k differs from the omega workload's k");
    return w->k;
  }
  if (config.k < 1) throw std::invalid_argument("config: k must be >= 1");
  return config.k;
}

void validate_run(const ExperimentConfig& config) {
  if (config.policies.empty()) throw std::invalid_argument("config: no policies listed");
  if (config.seeds.empty()) throw std::invalid_argument("config: no seeds listed");
  if (std::holds_alternative<OmegaWorkload>(config.workload) && config.noise)
    throw std::invalid_argument(
        "config: omega workloads carry their own predictions; noise override not allowed");
  if (const auto* w = std::get_if<FileWorkload>(&config.workload); w && w->path.empty())
    throw std::invalid_argument("config: missing workload");
}

}  // namespace

std::string workload_id(const Workload& workload) {
  if (const auto* w = std::get_if<FileWorkload>(&workload)) {
    std::string stem = std::filesystem::path(w->path).stem().string();
    for (char& c : stem)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_'))
        c = '_';
    return "file_" + stem;
  }
  if (const auto* w = std::get_if<OmegaWorkload>(&workload))
    return "omega_k" + std::to_string(w->k) + "_t" + std::to_string(w->t) + "_n" +
           std::to_string(w->n);
  if (const auto* w = std::get_if<UniformWorkload>(&workload))
    return "uniform_u" + std::to_string(w->universe) + "_len" + std::to_string(w->length);
  const auto& w = std::get<ZipfWorkload>(workload);
  return "zipf_u" + std::to_string(w.universe) + "_len" + std::to_string(w.length) +
         "_e" + fmt_compact(w.exponent);
}

std::string noise_label(const std::optional<NoiseModel>& noise) {
  if (!noise) return "none";
  switch (noise->kind) {
    case NoiseModel::Kind::AdditiveUniform:
      return "additive_uniform_" + std::to_string(noise->width);
    case NoiseModel::Kind::AdditiveGeometric:
      return "additive_geometric_" + std::string(fmt_compact(noise->p));
    case NoiseModel::Kind::Scaled:
      return "scaled_" + std::string(fmt_compact(noise->sigma));
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_config: cannot open " + path);
  ExperimentConfig config;
  config.workload = FileWorkload{""};
  bool seen_workload = false;
  bool seen_seed_count = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) -> void {
    throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "workload") {
        if (seen_workload) fail("duplicate workload");
        config.workload = parse_workload(value);
        seen_workload = true;
      } else if (key == "k") {
        config.k = static_cast<int>(parse_int(value));
      } else if (key == "policy") {
        config.policies.push_back(parse_policy(value));
      } else if (key == "noise") {
        const auto model = parse_noise(value);
        if (model) config.noise_grid.push_back(*model);
        // "none" contributes nothing: predictions stay as generated
      } else if (key == "seed") {
        if (seen_seed_count) fail("mix of 'seed' entries and 'seeds' count");
        config.seeds.push_back(static_cast<std::uint64_t>(parse_int(value)));
      } else if (key == "seeds") {
        if (!config.seeds.empty()) fail("mix of 'seed' entries and 'seeds' count");
        const std::int64_t count = parse_int(value);
        if (count < 1) fail("seeds count must be >= 1");
        for (std::int64_t s = 0; s < count; ++s)
          config.seeds.push_back(static_cast<std::uint64_t>(s));
        seen_seed_count = true;
      } else if (key == "t") {
        config.t_list.push_back(static_cast<int>(parse_int(value)));
      } else if (key == "n") {
        config.n = parse_int(value);
      } else if (key == "out") {
        config.output_path = value;
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (config.noise_grid.size() == 1) config.noise = config.noise_grid[0];
  return config;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      const RunOptions& options) {
  validate_run(config);
  const int k = resolved_k(config);
  const std::string wid = workload_id(config.workload);
  const std::size_t policies = config.policies.size();
  const std::size_t seeds = config.seeds.size();
  std::vector<ResultRow> rows(policies * seeds);

  std::optional<Trace> file_trace;
  if (const auto* w = std::get_if<FileWorkload>(&config.workload))
    file_trace = load_trace(w->path);

  auto run_cell = [&](const InstanceData& data, std::size_t p, std::size_t s) {
    PolicySpec spec = config.policies[p];
    const std::uint64_t eff = options.seed_base + config.seeds[s];
    spec.seed = eff;
    if (spec.kind == PolicyKind::Combiner) {
      spec.inner[0].seed = mix_seed(eff, 'A');
      spec.inner[1].seed = mix_seed(eff, 'B');
    }
    const auto started = std::chrono::steady_clock::now();
    const SimReport rep = simulate(spec, data.trace, k, data.info);
    const auto elapsed = std::chrono::steady_clock::now() - started;

    ResultRow& row = rows[p * seeds + s];
    row.workload = wid;
    row.policy = policy_name(spec);
    row.seed = config.seeds[s];
    row.k = k;
    row.misses = rep.misses;
    row.opt_cost = data.opt;
    row.ratio = static_cast<double>(rep.misses) / static_cast<double>(data.opt);
    row.eta = data.eta;
    row.eta_over_opt = static_cast<double>(data.eta) / static_cast<double>(data.opt);
    row.clean_L = rep.clean_count_L;
    row.chains_C = rep.chain_count_C;
    row.sum_n_star = rep.sum_n_star;
    row.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  };

  const bool per_seed_instance =
      !std::holds_alternative<FileWorkload>(config.workload) || config.noise.has_value();
  if (per_seed_instance) {
    parallel_for(seeds, options.jobs, [&](std::size_t s) {
      const InstanceData data = build_instance(
          config, k, options.seed_base + config.seeds[s],
          file_trace ? &*file_trace : nullptr);
      for (std::size_t p = 0; p < policies; ++p) run_cell(data, p, s);
    });
  } else {
    InstanceData shared;
    shared.trace = *file_trace;
    if (!shared.trace.has_predictions())
      shared.trace.predictions = perfect_predictions(shared.trace.requests);
    finalize_instance(shared, k);
    parallel_for(policies * seeds, options.jobs, [&](std::size_t cell) {
      run_cell(shared, cell / seeds, cell % seeds);
    });
  }
  return rows;
}

std::vector<SweepRow> sweep_eta(const ExperimentConfig& config, const RunOptions& options) {
  if (config.noise_grid.empty())
    throw std::invalid_argument("sweep: noise grid is empty (add 'noise = ...' lines)");
  if (std::holds_alternative<OmegaWorkload>(config.workload))
    throw std::invalid_argument("sweep: omega workloads cannot take noise overrides");
  std::vector<SweepRow> out;
  const int k = resolved_k(config);
  const double hk = harmonic(k);
  for (const NoiseModel& noise : config.noise_grid) {
    ExperimentConfig step = config;
    step.noise = noise;
    const std::vector<ResultRow> rows = run_experiment(step, options);
    for (const ResultRow& row : rows) {
      SweepRow s;
      s.noise = noise_label(noise);
      s.row = row;
      const double x = row.eta_over_opt;
      const std::int64_t arg = std::min<std::int64_t>(
          static_cast<std::int64_t>(std::floor(2.0 * x)), k);
      s.lmarker_ref = 4.0 + 2.0 * harmonic(arg);
      const double xk = x / static_cast<double>(k);
      s.combiner_ref = 9.0 * std::min(4.0 + 7.0 * xk + 3.0 * xk * hk, 2.0 * hk);
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<LowerBoundRow> lower_bound_experiment(const ExperimentConfig& config,
                                                  const RunOptions& options) {
  if (config.t_list.empty())
    throw std::invalid_argument("lowerbound: no 't = ...' entries");
  if (config.n < 2) throw std::invalid_argument("lowerbound: n must be >= 2");
  if (config.k < 2) throw std::invalid_argument("lowerbound: k must be >= 2");
  for (int t : config.t_list)
    if (t < 1 || t > config.k)
      throw std::invalid_argument("lowerbound: every t must lie in [1, k]");

  std::vector<LowerBoundRow> out;
  const double hk = harmonic(config.k);
  for (int t : config.t_list) {
    ExperimentConfig step = config;
    step.workload = OmegaWorkload{config.k, t, config.n};
    step.noise.reset();
    const std::vector<ResultRow> rows = run_experiment(step, options);
    const std::size_t seeds = config.seeds.size();
    double mean_eta_over_opt = 0.0;
    for (std::size_t s = 0; s < seeds; ++s) mean_eta_over_opt += rows[s].eta_over_opt;
    mean_eta_over_opt /= static_cast<double>(seeds);
    for (std::size_t p = 0; p < config.policies.size(); ++p) {
      LowerBoundRow row;
      row.k = config.k;
      row.t = t;
      row.n = config.n;
      row.policy = rows[p * seeds].policy;
      row.seeds = static_cast<std::int64_t>(seeds);
      double mean = 0.0;
      for (std::size_t s = 0; s < seeds; ++s)
        mean += static_cast<double>(rows[p * seeds + s].misses);
      row.mean_misses = mean / static_cast<double>(seeds);
      row.floor_ref = 0.5 * static_cast<double>(config.n) * t * (hk - harmonic(t));
      row.mean_eta_over_opt = mean_eta_over_opt;
      row.pass = row.mean_misses >= row.floor_ref;
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::vector<VerifyRow> run_verify_suite(std::uint64_t seed_base, const VerifyScale& scale) {
  std::vector<VerifyRow> rows;

  // Exhaustive inversion lemma over all short sequences in a small box.
  {
    std::int64_t violations = 0;
    for (int n = 1; n <= scale.inversion_max_n; ++n) {
      std::vector<std::int64_t> m(n), a(n, 0);
      for (int i = 0; i < n; ++i) m[i] = i + 1;
      while (true) {
        if (!check_inversion_lemma(a, m)) ++violations;
        int pos = 0;
        while (pos < n && a[pos] == scale.inversion_box) a[pos++] = 0;
        if (pos == n) break;
        ++a[pos];
      }
    }
    rows.push_back({"inversion_lemma",
                    "exhaustive_n" + std::to_string(scale.inversion_max_n) + "_box" +
                        std::to_string(scale.inversion_box),
                    static_cast<double>(violations), 0.0, violations == 0});
  }

  // Randomized inversion lemma fuzz at larger n.
  {
    std::mt19937_64 gen(mix_seed(seed_base, 'I'));
    std::int64_t violations = 0;
    for (std::int64_t trial = 0; trial < scale.inversion_fuzz; ++trial) {
      const std::int64_t n =
          1 + static_cast<std::int64_t>(bounded(gen, scale.inversion_fuzz_max_n));
      std::vector<std::int64_t> m(n), a(n);
      std::int64_t v = static_cast<std::int64_t>(bounded(gen, 200)) - 100;
      for (std::int64_t i = 0; i < n; ++i) {
        v += 1 + static_cast<std::int64_t>(bounded(gen, 4));
        m[i] = v;
      }
      const std::int64_t lo = m.front() - 20, hi = m.back() + 20;
      for (std::int64_t i = 0; i < n; ++i)
        a[i] = lo + static_cast<std::int64_t>(bounded(gen, hi - lo + 1));
      if (!check_inversion_lemma(a, m)) ++violations;
    }
    rows.push_back({"inversion_lemma", "fuzz_" + std::to_string(scale.inversion_fuzz),
                    static_cast<double>(violations), 0.0, violations == 0});
  }

  // Bounded-geometric floor across the (k, l) grid.
  for (int k : {8, 32, 128}) {
    std::vector<int> ls = {2, k / 2, k};
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    for (int l : ls) {
      const std::uint64_t cell_seed = splitmix64(
          mix_seed(seed_base, 'G') + static_cast<std::uint64_t>(k) * 1000003 + l);
      const BoundedGeomReport rep =
          check_bounded_geom(k, l, scale.geom_trials, cell_seed);
      rows.push_back({"bounded_geom",
                      "k" + std::to_string(k) + "_l" + std::to_string(l),
                      static_cast<double>(rep.violations.size()), 0.0,
                      rep.violations.empty()});
    }
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool timing) {
  std::string out =
      "workload,policy,seed,k,misses,opt_cost,ratio,eta,eta_over_opt,clean_L,"
      "chains_C,sum_n_star";
  if (timing) out += ",runtime_ms";
  out += '\n';
  for (const ResultRow& r : rows) {
    out += r.workload + ',' + r.policy + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.k) + ',' + std::to_string(r.misses) + ',' +
           std::to_string(r.opt_cost) + ',' + fmt(r.ratio) + ',' +
           std::to_string(r.eta) + ',' + fmt(r.eta_over_opt) + ',' +
           std::to_string(r.clean_L) + ',' + std::to_string(r.chains_C) + ',' +
           std::to_string(r.sum_n_star);
    if (timing) out += ',' + std::to_string(r.runtime_ms);
    out += '\n';
  }
  return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, bool timing) {
  std::string out =
      "noise,workload,policy,seed,k,misses,opt_cost,ratio,eta,eta_over_opt,"
      "lmarker_ref,combiner_ref";
  if (timing) out += ",runtime_ms";
  out += '\n';
  for (const SweepRow& s : rows) {
    const ResultRow& r = s.row;
    out += s.noise + ',' + r.workload + ',' + r.policy + ',' + std::to_string(r.seed) +
           ',' + std::to_string(r.k) + ',' + std::to_string(r.misses) + ',' +
           std::to_string(r.opt_cost) + ',' + fmt(r.ratio) + ',' +
           std::to_string(r.eta) + ',' + fmt(r.eta_over_opt) + ',' +
           fmt(s.lmarker_ref) + ',' + fmt(s.combiner_ref);
    if (timing) out += ',' + std::to_string(r.runtime_ms);
    out += '\n';
  }
  return out;
}

std::string lower_bound_to_csv(const std::vector<LowerBoundRow>& rows) {
  std::string out = "k,t,n,policy,seeds,mean_misses,floor_ref,mean_eta_over_opt,pass\n";
  for (const LowerBoundRow& r : rows) {
    out += std::to_string(r.k) + ',' + std::to_string(r.t) + ',' + std::to_string(r.n) +
           ',' + r.policy + ',' + std::to_string(r.seeds) + ',' + fmt(r.mean_misses) +
           ',' + fmt(r.floor_ref) + ',' + fmt(r.mean_eta_over_opt) + ',' +
           (r.pass ? "1" : "0") + '\n';
  }
  return out;
}

std::string verify_to_csv(const std::vector<VerifyRow>& rows) {
  std::string out = "suite,item,value,threshold,pass\n";
  for (const VerifyRow& r : rows)
    out += r.suite + ',' + r.item + ',' + fmt(r.value) + ',' + fmt(r.threshold) + ',' +
           (r.pass ? "1" : "0") + '\n';
  return out;
}

std::string sweep_plot_data(const std::vector<SweepRow>& rows) {
  // mean (eta/opt, ratio) per (policy, noise level), grouped per policy
  std::vector<std::string> policies;
  for (const SweepRow& s : rows)
    if (std::find(policies.begin(), policies.end(), s.row.policy) == policies.end())
      policies.push_back(s.row.policy);
  std::string out;
  for (const std::string& policy : policies) {
    out += "# " + policy + '\n';
    std::vector<std::string> noises;
    for (const SweepRow& s : rows)
      if (s.row.policy == policy &&
          std::find(noises.begin(), noises.end(), s.noise) == noises.end())
        noises.push_back(s.noise);
    for (const std::string& noise : noises) {
      double x = 0.0, y = 0.0;
      std::int64_t count = 0;
      for (const SweepRow& s : rows) {
        if (s.row.policy != policy || s.noise != noise) continue;
        x += s.row.eta_over_opt;
        y += s.row.ratio;
        ++count;
      }
      out += fmt(x / count) + ' ' + fmt(y / count) + '\n';
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace lcache
