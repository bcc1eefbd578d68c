#include "lcache/trace.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lcache/rng.hpp"

namespace lcache {

std::vector<std::int64_t> compute_true_next(const std::vector<PageId>& requests) {
  const std::int64_t n = static_cast<std::int64_t>(requests.size());
  std::vector<std::int64_t> next(requests.size());
  std::unordered_map<PageId, std::int64_t> last_seen;  // page -> 1-based position
  last_seen.reserve(requests.size());
  for (std::int64_t i = n - 1; i >= 0; --i) {
    auto it = last_seen.find(requests[i]);
    next[i] = (it == last_seen.end()) ? n + 1 : it->second;
    last_seen[requests[i]] = i + 1;
  }
  return next;
}

Trace make_trace(std::vector<PageId> requests) {
  Trace t;
  t.true_next = compute_true_next(requests);
  t.requests = std::move(requests);
  return t;
}

Trace make_trace(std::vector<PageId> requests, std::vector<std::int64_t> predictions) {
  if (requests.size() != predictions.size())
    throw std::invalid_argument("make_trace: requests and predictions differ in length");
  Trace t = make_trace(std::move(requests));
  t.predictions = std::move(predictions);
  return t;
}

PhaseDecomposition compute_phases(const std::vector<PageId>& requests, int k) {
  if (k < 1) throw std::invalid_argument("compute_phases: k must be >= 1");
  PhaseDecomposition out;
  const std::int64_t n = static_cast<std::int64_t>(requests.size());
  std::int64_t start = 0;
  std::unordered_set<PageId> distinct;
  for (std::int64_t i = 0; i < n; ++i) {
    if (!distinct.contains(requests[i]) &&
        distinct.size() == static_cast<std::size_t>(k)) {
      // requests[i] would be the (k+1)-th distinct page: close the phase here
      out.boundaries.emplace_back(start + 1, i);
      out.distinct_per_phase.emplace_back(distinct.begin(), distinct.end());
      distinct.clear();
      start = i;
    }
    distinct.insert(requests[i]);
  }
  if (n > 0) {
    out.boundaries.emplace_back(start + 1, n);
    out.distinct_per_phase.emplace_back(distinct.begin(), distinct.end());
  }
  for (auto& set : out.distinct_per_phase) std::sort(set.begin(), set.end());
  return out;
}

ErrorReport l1_error(const Trace& trace, const PhaseDecomposition& phases) {
  if (!trace.has_predictions())
    throw std::invalid_argument("l1_error: trace carries no predictions");
  if (trace.true_next.size() != trace.requests.size())
    throw std::invalid_argument("l1_error: true_next not populated");
  ErrorReport rep;
  rep.per_phase_eta.assign(phases.boundaries.size(), 0);
  std::size_t phase = 0;
  for (std::int64_t i = 0; i < trace.size(); ++i) {
    while (phase < phases.boundaries.size() && i + 1 > phases.boundaries[phase].second)
      ++phase;
    std::int64_t err = std::llabs(trace.predictions[i] - trace.true_next[i]);
    rep.eta += err;
    rep.per_phase_eta[phase] += err;
  }
  return rep;
}

std::vector<std::int64_t> perfect_predictions(const std::vector<PageId>& requests) {
  return compute_true_next(requests);
}

NoiseModel NoiseModel::additive_uniform(std::int64_t width) {
  if (width < 0) throw std::invalid_argument("additive_uniform: width must be >= 0");
  NoiseModel m;
  m.kind = Kind::AdditiveUniform;
  m.width = width;
  return m;
}

NoiseModel NoiseModel::additive_geometric(double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("additive_geometric: p must be in (0, 1]");
  NoiseModel m;
  m.kind = Kind::AdditiveGeometric;
  m.p = p;
  return m;
}

NoiseModel NoiseModel::scaled(double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("scaled: sigma must be >= 0");
  NoiseModel m;
  m.kind = Kind::Scaled;
  m.sigma = sigma;
  return m;
}

std::vector<std::int64_t> noisy_predictions(const std::vector<PageId>& requests,
                                            const NoiseModel& noise,
                                            std::uint64_t seed) {
  std::vector<std::int64_t> preds = compute_true_next(requests);
  std::mt19937_64 gen(seed);
  switch (noise.kind) {
    case NoiseModel::Kind::AdditiveUniform:
      if (noise.width < 0) throw std::invalid_argument("noisy_predictions: width < 0");
      for (auto& h : preds)
        h += static_cast<std::int64_t>(bounded(gen, 2 * noise.width + 1)) - noise.width;
      break;
    case NoiseModel::Kind::AdditiveGeometric:
      if (!(noise.p > 0.0 && noise.p <= 1.0))
        throw std::invalid_argument("noisy_predictions: p outside (0, 1]");
      for (auto& h : preds) {
        std::int64_t sign = bounded(gen, 2) == 0 ? -1 : 1;
        h += sign * geometric(gen, noise.p);
      }
      break;
    case NoiseModel::Kind::Scaled:
      if (noise.sigma < 0.0) throw std::invalid_argument("noisy_predictions: sigma < 0");
      for (auto& h : preds)
        h += static_cast<std::int64_t>(std::llround(noise.sigma * std_normal(gen)));
      break;
  }
  return preds;
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_trace: cannot open " + path);
  std::vector<PageId> requests;
  std::vector<std::int64_t> predictions;
  std::size_t lines_with_prediction = 0;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long page;
    if (!(fields >> page) || page < 0)
      throw std::runtime_error("load_trace: " + path + ":" + std::to_string(lineno) +
                               ": expected non-negative page id");
    long long pred = 0;
    if (fields >> pred) ++lines_with_prediction;
    predictions.push_back(pred);
    requests.push_back(static_cast<PageId>(page));
  }
  if (requests.empty()) throw std::runtime_error("load_trace: " + path + ": empty trace");
  if (lines_with_prediction == 0) predictions.clear();
  else if (lines_with_prediction != requests.size())
    throw std::runtime_error("load_trace: " + path +
                             ": prediction column present on some lines only");
  if (!predictions.empty()) return make_trace(std::move(requests), std::move(predictions));
  return make_trace(std::move(requests));
}

void save_trace(const std::string& path, const Trace& trace, bool with_predictions) {
  if (with_predictions && !trace.has_predictions())
    throw std::invalid_argument("save_trace: trace carries no predictions");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_trace: cannot open " + path);
  for (std::int64_t i = 0; i < trace.size(); ++i) {
    out << trace.requests[i];
    if (with_predictions) out << ' ' << trace.predictions[i];
    out << '\n';
  }
  if (!out) throw std::runtime_error("save_trace: write failed for " + path);
}

}  // namespace lcache
