#include "lcache/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "lcache/lemma.hpp"
#include "lcache/rng.hpp"

namespace lcache {

namespace {

void ensure(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(msg);
}

}  // namespace

PolicySpec PolicySpec::combiner(PolicySpec a, PolicySpec b, double gamma,
                                std::uint64_t seed) {
  if (a.kind == PolicyKind::Combiner || b.kind == PolicyKind::Combiner)
    throw std::invalid_argument("combiner: inner policies must not be combiners");
  if (!(gamma > 1.0)) throw std::invalid_argument("combiner: gamma must be > 1");
  PolicySpec spec;
  spec.kind = PolicyKind::Combiner;
  spec.seed = seed;
  spec.gamma = gamma;
  spec.inner.push_back(std::move(a));
  spec.inner.push_back(std::move(b));
  return spec;
}

bool policy_uses_predictions(const PolicySpec& spec) {
  switch (spec.kind) {
    case PolicyKind::Lru:
    case PolicyKind::RandomMarker:
      return false;
    case PolicyKind::BlindFollow:
    case PolicyKind::PredictiveMarker:
    case PolicyKind::LMarker:
    case PolicyKind::LNonMarker:
      return true;
    case PolicyKind::Combiner:
      return policy_uses_predictions(spec.inner.at(0)) ||
             policy_uses_predictions(spec.inner.at(1));
  }
  return false;
}

std::string policy_name(const PolicySpec& spec) {
  switch (spec.kind) {
    case PolicyKind::Lru: return "LRU";
    case PolicyKind::RandomMarker: return "RANDOM_MARKER";
    case PolicyKind::BlindFollow: return "BLIND_FOLLOW";
    case PolicyKind::PredictiveMarker:
      return spec.tau > 0 ? "PREDICTIVE_MARKER(" + std::to_string(spec.tau) + ")"
                          : "PREDICTIVE_MARKER";
    case PolicyKind::LMarker: return "LMARKER";
    case PolicyKind::LNonMarker: return "LNONMARKER";
    case PolicyKind::Combiner:
      return "COMBINER(" + policy_name(spec.inner.at(0)) + "+" +
             policy_name(spec.inner.at(1)) + ")";
  }
  return "?";
}

PhaseInfo analyze_phases(const Trace& trace, int k) {
  PhaseInfo info;
  info.phases = compute_phases(trace.requests, k);
  const std::int64_t n = trace.size();
  info.phase_of.resize(n);
  info.first_arrival.assign(n, 0);
  info.clean.assign(n, 0);
  info.distinct_after.assign(n, 0);
  info.clean_per_phase.assign(info.phases.phase_count(), 0);

  std::unordered_map<PageId, std::int64_t> last_seen;
  last_seen.reserve(trace.requests.size());
  std::unordered_set<PageId> suffix;
  const std::vector<PageId> no_previous;
  for (std::int64_t r = 0; r < info.phases.phase_count(); ++r) {
    const auto [start, end] = info.phases.boundaries[r];
    const std::vector<PageId>& prev =
        r == 0 ? no_previous : info.phases.distinct_per_phase[r - 1];
    for (std::int64_t i = start - 1; i < end; ++i) {
      info.phase_of[i] = static_cast<std::int32_t>(r);
      const PageId page = trace.requests[i];
      auto it = last_seen.find(page);
      const bool first = (it == last_seen.end() || it->second < start);
      info.first_arrival[i] = first;
      if (first) {
        const bool is_clean = !std::binary_search(prev.begin(), prev.end(), page);
        info.clean[i] = is_clean;
        if (is_clean) ++info.clean_per_phase[r];
      }
      last_seen[page] = i + 1;
    }
    suffix.clear();
    for (std::int64_t i = end - 1; i >= start - 1; --i) {
      info.distinct_after[i] = static_cast<std::int32_t>(suffix.size());
      suffix.insert(trace.requests[i]);
    }
  }
  for (std::int64_t c : info.clean_per_phase) info.clean_total += c;
  return info;
}

namespace {

struct Slot {
  PageId page;
  std::int64_t pred;         // prediction attached to the latest occurrence
  std::int64_t last_access;  // 1-based time
  bool marked;
};

// Single-policy simulation state machine. Slots are kept sorted by PageId so
// that index-based uniform sampling is reproducible regardless of container
// iteration order.
class Engine {
 public:
  Engine(const PolicySpec& spec, const Trace& trace, int k, const PhaseInfo& info)
      : spec_(spec), trace_(trace), k_(k), info_(info), rng_(spec.seed) {
    if (k < 1) throw std::invalid_argument("simulate: k must be >= 1");
    slots_.reserve(k);
    rep_.per_phase_misses.assign(info.phases.phase_count(), 0);
    rep_.clean_count_L = info.clean_total;
    tau_ = spec.tau > 0
               ? spec.tau
               : static_cast<int>(std::ceil(harmonic(k) - 1e-12));
  }

  struct Step {
    bool miss = false;
    bool evicted = false;
    PageId victim = 0;
  };

  Step step() {
    const std::int64_t i = pos_++;
    const PageId page = trace_.requests[i];
    if (info_.phase_of[i] != cur_phase_) roll_phase(info_.phase_of[i]);
    const std::int64_t now = i + 1;
    const std::int64_t pred = trace_.has_predictions() ? trace_.predictions[i] : 0;

    Step result;
    if (Slot* slot = find(page)) {
      if (!slot->marked) {
        slot->marked = true;
        ++marked_count_;
      }
      slot->pred = pred;
      slot->last_access = now;
      return result;
    }

    result.miss = true;
    ++rep_.misses;
    ++rep_.per_phase_misses[cur_phase_];

    // Chain attribution: a repeat miss extends the chain whose eviction put
    // the page out; anything else must be a non-initial arrival and heads a
    // new chain.
    std::size_t chain_idx;
    bool head = false;
    bool incoming_chain_second = false;
    auto ev = evicted_this_phase_.find(page);
    if (ev != evicted_this_phase_.end()) {
      chain_idx = ev->second.chain;
      incoming_chain_second = ev->second.by_non_initial;
      ChainRecord& chain = rep_.chains[chain_idx];
      ++chain.length;
      if (chain.length == 2) {
        chain.n_star = info_.distinct_after[i];
        rep_.sum_n_star += chain.n_star;
      }
      evicted_this_phase_.erase(ev);
    } else {
      ensure(info_.first_arrival[i], "engine: unexpected repeat miss");
      ensure(!is_initial(page), "engine: initial page missed without eviction");
      head = true;
      ++rep_.chain_count_C;
      chain_idx = rep_.chains.size();
      rep_.chains.push_back(ChainRecord{cur_phase_, now, 1, 0});
    }

    if (static_cast<int>(slots_.size()) == k_) {
      const PageId victim =
          choose_victim(i, head, incoming_chain_second, chain_idx);
      remove_slot(victim);
      evicted_this_phase_[victim] = EvictRecord{chain_idx, head};
      result.evicted = true;
      result.victim = victim;
    }
    insert_slot(page, pred, now);
    return result;
  }

  std::int64_t misses() const { return rep_.misses; }
  PolicyKind kind() const { return spec_.kind; }

  bool cached(PageId page) const { return find_const(page) != nullptr; }
  bool marked(PageId page) const {
    const Slot* slot = find_const(page);
    return slot != nullptr && slot->marked;
  }
  bool is_initial(PageId page) const {
    return std::binary_search(phase_initial_.begin(), phase_initial_.end(), page);
  }
  // 0: not evicted this phase, 1: evicted by a non-initial arrival, 2: other
  int evict_class(PageId page) const {
    auto it = evicted_this_phase_.find(page);
    if (it == evicted_this_phase_.end()) return 0;
    return it->second.by_non_initial ? 1 : 2;
  }

  SimReport finish() { return std::move(rep_); }

 private:
  struct EvictRecord {
    std::size_t chain;
    bool by_non_initial;
  };

  void roll_phase(std::int32_t phase) {
    cur_phase_ = phase;
    for (Slot& slot : slots_) slot.marked = false;
    marked_count_ = 0;
    evicted_this_phase_.clear();
    phase_initial_.clear();
    for (const Slot& slot : slots_) phase_initial_.push_back(slot.page);
  }

  Slot* find(PageId page) {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), page,
                               [](const Slot& s, PageId p) { return s.page < p; });
    return (it != slots_.end() && it->page == page) ? &*it : nullptr;
  }
  const Slot* find_const(PageId page) const {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), page,
                               [](const Slot& s, PageId p) { return s.page < p; });
    return (it != slots_.end() && it->page == page) ? &*it : nullptr;
  }

  void insert_slot(PageId page, std::int64_t pred, std::int64_t now) {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), page,
                               [](const Slot& s, PageId p) { return s.page < p; });
    slots_.insert(it, Slot{page, pred, now, true});
    ++marked_count_;
  }

  void remove_slot(PageId page) {
    auto it = std::lower_bound(slots_.begin(), slots_.end(), page,
                               [](const Slot& s, PageId p) { return s.page < p; });
    ensure(it != slots_.end() && it->page == page, "engine: victim not cached");
    if (it->marked) --marked_count_;
    slots_.erase(it);
  }

  PageId choose_victim(std::int64_t i, bool head, bool incoming_chain_second,
                       std::size_t chain_idx) {
    switch (spec_.kind) {
      case PolicyKind::Lru:
        return lru_victim();
      case PolicyKind::BlindFollow:
        return highest_pred_any();
      case PolicyKind::RandomMarker:
        return random_unmarked();
      case PolicyKind::LMarker:
        return info_.clean[i] ? highest_pred_unmarked() : random_unmarked();
      case PolicyKind::PredictiveMarker: {
        const std::int64_t before = rep_.chains[chain_idx].length - 1;
        return before < tau_ ? highest_pred_unmarked() : random_unmarked();
      }
      case PolicyKind::LNonMarker:
        if (head) return highest_pred_unmarked();
        if (incoming_chain_second) return random_any();
        return random_unmarked();
      case PolicyKind::Combiner:
        break;
    }
    throw std::logic_error("engine: combiner has no direct eviction rule");
  }

  PageId lru_victim() const {
    const Slot* best = &slots_.front();
    for (const Slot& slot : slots_)
      if (slot.last_access < best->last_access) best = &slot;
    return best->page;
  }

  PageId highest_pred_any() const {
    const Slot* best = &slots_.front();
    for (const Slot& slot : slots_)
      if (slot.pred > best->pred) best = &slot;  // first max = smallest PageId
    return best->page;
  }

  PageId highest_pred_unmarked() const {
    ensure(marked_count_ < k_, "engine: no unmarked page to evict");
    const Slot* best = nullptr;
    for (const Slot& slot : slots_) {
      if (slot.marked) continue;
      if (best == nullptr || slot.pred > best->pred) best = &slot;
    }
    return best->page;
  }

  PageId random_unmarked() {
    ensure(marked_count_ < k_, "engine: no unmarked page to evict");
    const std::int64_t unmarked = static_cast<std::int64_t>(slots_.size()) - marked_count_;
    std::int64_t target = static_cast<std::int64_t>(bounded(rng_, unmarked));
    for (const Slot& slot : slots_) {
      if (slot.marked) continue;
      if (target-- == 0) return slot.page;
    }
    throw std::logic_error("engine: unmarked sampling out of range");
  }

  PageId random_any() {
    return slots_[bounded(rng_, slots_.size())].page;
  }

  const PolicySpec& spec_;
  const Trace& trace_;
  const int k_;
  const PhaseInfo& info_;
  std::mt19937_64 rng_;
  int tau_ = 1;

  std::vector<Slot> slots_;  // sorted by page
  int marked_count_ = 0;
  std::vector<PageId> phase_initial_;  // sorted snapshot at phase start
  std::unordered_map<PageId, EvictRecord> evicted_this_phase_;
  std::int32_t cur_phase_ = -1;
  std::int64_t pos_ = 0;
  SimReport rep_;
};

struct PhysSlot {
  PageId page;
  std::int64_t pred;
  std::int64_t last_access;
};

// The combiner's physical cache plus two full shadow simulations. The
// physical cache follows the cheaper shadow: its misses are the reported
// cost, and its evictions mimic the followed policy's choice, falling back to
// the followed policy's own rule restricted to physically present pages when
// that choice is unavailable.
class CombinerRun {
 public:
  CombinerRun(const PolicySpec& spec, const Trace& trace, int k, const PhaseInfo& info)
      : spec_(spec),
        trace_(trace),
        k_(k),
        info_(info),
        shadow_a_(spec.inner.at(0), trace, k, info),
        shadow_b_(spec.inner.at(1), trace, k, info),
        phys_rng_(mix_seed(spec.seed, 'P')) {
    if (spec.inner.size() != 2) throw std::invalid_argument("combiner: needs two inner policies");
    if (!(spec.gamma > 1.0)) throw std::invalid_argument("combiner: gamma must be > 1");
    rep_.per_phase_misses.assign(info.phases.phase_count(), 0);
    rep_.clean_count_L = info.clean_total;
  }

  SimReport run() {
    const std::int64_t n = trace_.size();
    for (std::int64_t i = 0; i < n; ++i) {
      const Engine::Step step_a = shadow_a_.step();
      const Engine::Step step_b = shadow_b_.step();
      if (followed_ == 0 &&
          static_cast<double>(shadow_a_.misses()) > spec_.gamma * static_cast<double>(shadow_b_.misses())) {
        followed_ = 1;
        ++rep_.switch_count;
      } else if (followed_ == 1 &&
                 static_cast<double>(shadow_b_.misses()) > spec_.gamma * static_cast<double>(shadow_a_.misses())) {
        followed_ = 0;
        ++rep_.switch_count;
      }
      serve(i, followed_ == 0 ? step_a : step_b);
    }
    rep_.shadow_misses_a = shadow_a_.misses();
    rep_.shadow_misses_b = shadow_b_.misses();
    // doubling argument: at most log_gamma(misses) + 1 switches per direction
    const double worst = static_cast<double>(
        std::max<std::int64_t>({shadow_a_.misses(), shadow_b_.misses(), 2}));
    ensure(static_cast<double>(rep_.switch_count) <=
               2.0 * (std::log(worst) / std::log(spec_.gamma) + 1.0),
           "combiner: switch count exceeded the doubling bound");
    return std::move(rep_);
  }

 private:
  void serve(std::int64_t i, const Engine::Step& followed_step) {
    const PageId page = trace_.requests[i];
    if (info_.phase_of[i] != cur_phase_) {
      cur_phase_ = info_.phase_of[i];
      phys_initial_.clear();
      for (const PhysSlot& slot : phys_) phys_initial_.push_back(slot.page);
    }
    const std::int64_t now = i + 1;
    const std::int64_t pred = trace_.has_predictions() ? trace_.predictions[i] : 0;
    if (PhysSlot* slot = find(page)) {
      slot->pred = pred;
      slot->last_access = now;
      return;
    }
    ++rep_.misses;
    ++rep_.per_phase_misses[cur_phase_];
    if (info_.first_arrival[i] &&
        !std::binary_search(phys_initial_.begin(), phys_initial_.end(), page))
      ++rep_.chain_count_C;
    if (static_cast<int>(phys_.size()) == k_) {
      PageId victim;
      if (followed_step.evicted && find(followed_step.victim) != nullptr)
        victim = followed_step.victim;
      else
        victim = mimic_victim(i, page);
      remove(victim);
    }
    insert(page, pred, now);
  }

  // The followed policy's rule applied to the physically present pages, using
  // the followed shadow's marks and phase bookkeeping.
  PageId mimic_victim(std::int64_t i, PageId incoming) {
    const Engine& f = followed_ == 0 ? shadow_a_ : shadow_b_;
    switch (f.kind()) {
      case PolicyKind::Lru: {
        const PhysSlot* best = &phys_.front();
        for (const PhysSlot& slot : phys_)
          if (slot.last_access < best->last_access) best = &slot;
        return best->page;
      }
      case PolicyKind::BlindFollow: {
        const PhysSlot* best = &phys_.front();
        for (const PhysSlot& slot : phys_)
          if (slot.pred > best->pred) best = &slot;
        return best->page;
      }
      case PolicyKind::RandomMarker:
      case PolicyKind::PredictiveMarker:
        return random_shadow_unmarked(f);
      case PolicyKind::LMarker:
        if (info_.first_arrival[i] && info_.clean[i]) return highest_pred_shadow_unmarked(f);
        return random_shadow_unmarked(f);
      case PolicyKind::LNonMarker: {
        const int cls = f.evict_class(incoming);
        if (cls == 1) return phys_[bounded(phys_rng_, phys_.size())].page;
        if (cls == 0 && info_.first_arrival[i] && !f.is_initial(incoming))
          return highest_pred_shadow_unmarked(f);
        return random_shadow_unmarked(f);
      }
      case PolicyKind::Combiner:
        break;
    }
    throw std::logic_error("combiner: nested combiner");
  }

  PageId random_shadow_unmarked(const Engine& f) {
    std::vector<const PhysSlot*> candidates = shadow_unmarked(f);
    return candidates[bounded(phys_rng_, candidates.size())]->page;
  }

  PageId highest_pred_shadow_unmarked(const Engine& f) {
    std::vector<const PhysSlot*> candidates = shadow_unmarked(f);
    const PhysSlot* best = candidates.front();
    for (const PhysSlot* slot : candidates)
      if (slot->pred > best->pred) best = slot;
    return best->page;
  }

  // Physically present pages not marked in the followed shadow; pages the
  // shadow does not even cache count as unmarked. Falls back to the whole
  // physical cache when everything is marked there.
  std::vector<const PhysSlot*> shadow_unmarked(const Engine& f) const {
    std::vector<const PhysSlot*> out;
    out.reserve(phys_.size());
    for (const PhysSlot& slot : phys_)
      if (!f.marked(slot.page)) out.push_back(&slot);
    if (out.empty())
      for (const PhysSlot& slot : phys_) out.push_back(&slot);
    return out;
  }

  PhysSlot* find(PageId page) {
    auto it = std::lower_bound(phys_.begin(), phys_.end(), page,
                               [](const PhysSlot& s, PageId p) { return s.page < p; });
    return (it != phys_.end() && it->page == page) ? &*it : nullptr;
  }
  void insert(PageId page, std::int64_t pred, std::int64_t now) {
    auto it = std::lower_bound(phys_.begin(), phys_.end(), page,
                               [](const PhysSlot& s, PageId p) { return s.page < p; });
    phys_.insert(it, PhysSlot{page, pred, now});
  }
  void remove(PageId page) {
    auto it = std::lower_bound(phys_.begin(), phys_.end(), page,
                               [](const PhysSlot& s, PageId p) { return s.page < p; });
    ensure(it != phys_.end() && it->page == page, "combiner: victim not cached");
    phys_.erase(it);
  }

  const PolicySpec& spec_;
  const Trace& trace_;
  const int k_;
  const PhaseInfo& info_;
  Engine shadow_a_;
  Engine shadow_b_;
  std::mt19937_64 phys_rng_;
  std::vector<PhysSlot> phys_;  // sorted by page
  std::vector<PageId> phys_initial_;
  int followed_ = 0;
  std::int32_t cur_phase_ = -1;
  SimReport rep_;
};

}  // namespace

SimReport simulate(const PolicySpec& spec, const Trace& trace, int k,
                   const PhaseInfo& info) {
  if (spec.kind == PolicyKind::Combiner) {
    if (spec.inner.size() != 2 || spec.inner[0].kind == PolicyKind::Combiner ||
        spec.inner[1].kind == PolicyKind::Combiner)
      throw std::invalid_argument("simulate: combiner needs two non-combiner inner policies");
    if (!(spec.gamma > 1.0))
      throw std::invalid_argument("simulate: combiner gamma must be > 1");
  }
  if (policy_uses_predictions(spec) && !trace.has_predictions())
    throw std::invalid_argument("simulate: policy " + policy_name(spec) +
                                " needs predictions but the trace has none");
  if (spec.kind == PolicyKind::Combiner) {
    CombinerRun run(spec, trace, k, info);
    return run.run();
  }
  Engine engine(spec, trace, k, info);
  for (std::int64_t i = 0; i < trace.size(); ++i) engine.step();
  return engine.finish();
}

SimReport simulate(const PolicySpec& spec, const Trace& trace, int k) {
  const PhaseInfo info = analyze_phases(trace, k);
  return simulate(spec, trace, k, info);
}

bool verify_lemma_totalerror(const SimReport& report, const ErrorReport& error, int k) {
  const std::int64_t slack = 6 * static_cast<std::int64_t>(k) * k;
  return report.sum_n_star <= 3 * error.eta + slack;
}

bool verify_lemma_injection(const SimReport& report, const ErrorReport& error, int k) {
  const std::int64_t slack = 2 * static_cast<std::int64_t>(k) * k;
  return 2 * (error.eta + slack) >=
         static_cast<std::int64_t>(k) * (report.chain_count_C - report.clean_count_L);
}

}  // namespace lcache
