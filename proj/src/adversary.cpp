#include "lcache/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lcache/offline.hpp"
#include "lcache/rng.hpp"

namespace lcache {

std::int64_t default_random_part_len(int k) {
  return static_cast<std::int64_t>(
      std::ceil(3.0 * k * std::log(static_cast<double>(k))));
}

AdversarialInstance sample_omega(int k, int t, std::int64_t n, std::uint64_t seed) {
  return sample_omega(k, t, n, seed, default_random_part_len(k));
}

AdversarialInstance sample_omega(int k, int t, std::int64_t n, std::uint64_t seed,
                                 std::int64_t random_part_len) {
  if (k < 2) throw std::invalid_argument("sample_omega: k must be >= 2");
  if (t < 1 || t > k) throw std::invalid_argument("sample_omega: t must be in [1, k]");
  if (n < 2) throw std::invalid_argument("sample_omega: n must be >= 2");
  if (random_part_len < 1)
    throw std::invalid_argument("sample_omega: random_part_len must be >= 1");

  AdversarialInstance inst;
  inst.k = k;
  inst.t = t;
  inst.n = n;
  inst.random_part_len = random_part_len;
  inst.phase_len_m = random_part_len + k;
  inst.seed = seed;

  std::mt19937_64 gen(seed);
  const std::int64_t m = inst.phase_len_m;
  const std::int64_t total = n * m;
  std::vector<PageId> requests;
  std::vector<std::int64_t> predictions;
  requests.reserve(total);
  predictions.reserve(total);

  std::vector<PageId> clean(t), stale(k - t);
  for (int p = 0; p < t; ++p) clean[p] = static_cast<PageId>(p + 1);
  for (int p = t; p < k; ++p) stale[p - t] = static_cast<PageId>(p + 1);

  std::vector<char> in_universe(static_cast<std::size_t>(k) + t + 1, 0);
  for (std::int64_t r = 0; r < n; ++r) {
    std::vector<PageId> live(clean);
    live.insert(live.end(), stale.begin(), stale.end());
    std::sort(live.begin(), live.end());
    inst.clean_sets.push_back(clean);
    inst.stale_sets.push_back(stale);

    // Random part. The first draw of every later phase comes from the clean
    // set, so the phase decomposition of the emitted trace reproduces the
    // constructed boundaries exactly; the rest is iid uniform over the
    // phase's k live pages.
    for (std::int64_t j = 0; j < random_part_len; ++j) {
      PageId page;
      if (j == 0 && r > 0)
        page = clean[bounded(gen, clean.size())];
      else
        page = live[bounded(gen, live.size())];
      requests.push_back(page);
      predictions.push_back(static_cast<std::int64_t>(requests.size()) + 1);
    }
    // Ordered copy, predicted to reappear at the end of the next phase (a
    // virtual phase n+1 for the last one).
    for (PageId page : live) {
      requests.push_back(page);
      predictions.push_back((r + 2) * m);
    }

    if (r + 1 == n) break;
    // C_{r+1} = universe minus the live pages; S_{r+1} = uniform
    // (k-t)-subset of the live pages.
    std::fill(in_universe.begin(), in_universe.end(), 0);
    for (PageId page : live) in_universe[page] = 1;
    std::vector<PageId> next_clean;
    next_clean.reserve(t);
    for (PageId page = 1; page <= static_cast<PageId>(k + t); ++page)
      if (!in_universe[page]) next_clean.push_back(page);
    for (std::size_t j = 0; j + 1 < live.size() && j < static_cast<std::size_t>(k - t); ++j)
      std::swap(live[j], live[j + bounded(gen, live.size() - j)]);
    std::vector<PageId> next_stale(live.begin(), live.begin() + (k - t));
    std::sort(next_stale.begin(), next_stale.end());
    clean = std::move(next_clean);
    stale = std::move(next_stale);
  }

  inst.trace = make_trace(std::move(requests), std::move(predictions));
  return inst;
}

InstanceStats instance_stats(const AdversarialInstance& inst) {
  InstanceStats stats;
  const PhaseDecomposition phases = compute_phases(inst.trace.requests, inst.k);
  stats.eta = l1_error(inst.trace, phases).eta;
  stats.opt_cost = belady_cost(inst.trace, inst.k);
  stats.eta_over_opt =
      static_cast<double>(stats.eta) / static_cast<double>(stats.opt_cost);
  return stats;
}

void save_instance(const AdversarialInstance& inst, const std::string& trace_path,
                   const std::string& meta_path) {
  save_trace(trace_path, inst.trace, true);
  std::ofstream out(meta_path);
  if (!out) throw std::runtime_error("save_instance: cannot open " + meta_path);
  out << "k=" << inst.k << '\n'
      << "t=" << inst.t << '\n'
      << "n=" << inst.n << '\n'
      << "seed=" << inst.seed << '\n'
      << "phase_len_m=" << inst.phase_len_m << '\n'
      << "random_part_len=" << inst.random_part_len << '\n';
  if (!out) throw std::runtime_error("save_instance: write failed for " + meta_path);
}

OmegaParams load_omega_meta(const std::string& meta_path) {
  std::ifstream in(meta_path);
  if (!in) throw std::runtime_error("load_omega_meta: cannot open " + meta_path);
  OmegaParams params;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const long long value = std::stoll(line.substr(eq + 1));
    if (key == "k") params.k = static_cast<int>(value);
    else if (key == "t") params.t = static_cast<int>(value);
    else if (key == "n") params.n = value;
    else if (key == "phase_len_m") params.phase_len_m = value;
    else if (key == "random_part_len") params.random_part_len = value;
    else if (key == "seed") params.seed = static_cast<std::uint64_t>(value);
  }
  return params;
}

}  // namespace lcache
