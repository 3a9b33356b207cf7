#include "wsd/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "wsd/error.hpp"

namespace wsd {

std::string_view to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::tu: return "tu";
    case StrategyKind::uncertainty: return "uncertainty";
    case StrategyKind::committee: return "committee";
    case StrategyKind::random: return "random";
  }
  return "?";
}

StrategyKind parse_strategy(std::string_view s) {
  if (s == "tu") return StrategyKind::tu;
  if (s == "uncertainty" || s == "us") return StrategyKind::uncertainty;
  if (s == "committee" || s == "cbs") return StrategyKind::committee;
  if (s == "random") return StrategyKind::random;
  throw Error("unknown strategy '" + std::string(s) + "'");
}

void Strategy::validate() const {
  if (k < 1) throw Error("k must be >= 1");
  if (committee_size < 2) throw Error("committee size must be >= 2");
  if (!(member_fraction > 0.0 && member_fraction <= 1.0))
    throw Error("member fraction must lie in (0, 1]");
}

std::string to_json(const HistoryRecord& r) {
  nlohmann::json j;
  j["iteration"] = r.iteration;
  j["strategy"] = r.strategy;
  j["example_id"] = r.example_id;
  j["assigned_sense"] = r.sense;
  j["pool_accuracy"] = r.pool_accuracy ? nlohmann::json(*r.pool_accuracy) : nlohmann::json();
  j["certainty_mean"] = r.certainty_mean ? nlohmann::json(*r.certainty_mean) : nlohmann::json();
  return j.dump();
}

// ---------------------------------------------------------------------------

/// Interned noun vocabulary with a lazily filled similarity matrix.
class NounTable final : public NounSimilarity {
 public:
  static constexpr std::size_t kMaxDense = 4096;

  explicit NounTable(const NounSimilarity& backend) : backend_(&backend) {}

  std::uint32_t intern(const std::string& noun) {
    auto [it, inserted] = ids_.try_emplace(noun, static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.push_back(noun);
    return it->second;
  }

  const std::string& name(std::uint32_t id) const { return names_[id]; }

  void freeze() {
    n_ = names_.size();
    if (n_ <= kMaxDense) matrix_.assign(n_ * n_, std::numeric_limits<double>::quiet_NaN());
  }

  double at(std::uint32_t a, std::uint32_t b) const {
    if (matrix_.empty()) return (*backend_)(names_[a], names_[b]);
    double& v = matrix_[static_cast<std::size_t>(a) * n_ + b];
    if (std::isnan(v)) {
      v = (*backend_)(names_[a], names_[b]);
      matrix_[static_cast<std::size_t>(b) * n_ + a] = v;
    }
    return v;
  }

  double operator()(std::string_view a, std::string_view b) const override {
    auto ia = ids_.find(std::string(a));
    auto ib = ids_.find(std::string(b));
    if (ia == ids_.end() || ib == ids_.end() || ia->second >= n_ || ib->second >= n_)
      return (*backend_)(a, b);
    return at(ia->second, ib->second);
  }

 private:
  const NounSimilarity* backend_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::size_t n_ = 0;
  mutable std::vector<double> matrix_;
};

// ---------------------------------------------------------------------------

SamplerState::SamplerState(SenseDatabase db, const ExampleSet& pool, const NounSimilarity& sim,
                           const Thesaurus* classes, SamplerConfig cfg, const ExampleSet* tracked)
    : db_(std::move(db)), cfg_(cfg), classes_(classes), nouns_(std::make_unique<NounTable>(sim)) {
  cfg_.engine.validate();
  if (cfg_.tu_refresh_interval < 0) throw Error("utility refresh interval must be >= 0");
  for (const auto& e : pool) add_item(e, Role::pool);
  if (tracked != nullptr)
    for (const auto& e : *tracked) add_item(e, Role::tracked);
  build_verb_models();
  nouns_->freeze();
  for (auto& it : items_) {
    fill_sims(it);
    refresh_item(it);
  }
}

SamplerState::~SamplerState() = default;
SamplerState::SamplerState(SamplerState&&) noexcept = default;
SamplerState& SamplerState::operator=(SamplerState&&) noexcept = default;

const NounSimilarity& SamplerState::similarity() const { return *nouns_; }

void SamplerState::add_item(const Example& e, Role role) {
  validate_example(e);
  if (item_index_.contains(e.id)) throw Error("duplicate example id '" + e.id + "'");
  Item it;
  it.ex = e;
  it.role = role;
  for (const auto& s : e.slots) it.nouns.push_back(nouns_->intern(s.noun));
  item_index_.emplace(e.id, items_.size());
  if (role == Role::pool) pool_order_.push_back(items_.size());
  items_.push_back(std::move(it));
}

void SamplerState::build_verb_models() {
  for (const auto& [verb, entry] : db_.entries()) {
    VerbModel vm;
    vm.verb = verb;
    for (const auto& [sid, s] : entry.senses) {
      vm.senses.push_back(sid);
      vm.freq.push_back(s.freq);
      vm.frames.push_back(s.frame);
    }
    const std::size_t n = vm.senses.size();
    std::size_t si = 0;
    for (const auto& [sid, s] : entry.senses) {
      for (const auto& c : s.frame) {
        auto& f = vm.fillers[c];
        auto& cl = vm.classes[c];
        f.resize(n);
        cl.resize(n);
        for (const auto& noun : s.fillers_for(c)) {
          auto id = nouns_->intern(noun);
          f[si].push_back(id);
          auto g = classes_of(id);
          cl[si].insert(g.begin(), g.end());
        }
      }
      ++si;
    }
    verb_index_.emplace(verb, verbs_.size());
    verbs_.push_back(std::move(vm));
  }
  for (std::size_t i = 0; i < items_.size(); ++i) {
    auto& it = items_[i];
    auto v = verb_index_.find(it.ex.verb);
    if (v == verb_index_.end() || verbs_[v->second].senses.empty())
      throw Error("example '" + it.ex.id + "' uses verb '" + it.ex.verb +
                  "' which has no senses in the database");
    it.verb = v->second;
    auto& vm = verbs_[it.verb];
    vm.items.push_back(i);
    for (const auto& s : it.ex.slots)
      if (!vm.ccd.contains(s.case_id)) vm.ccd[s.case_id] = ccd_for(vm, s.case_id);
  }
  for (auto& vm : verbs_)
    for (const auto& [c, _] : vm.classes) vm.ccd[c] = ccd_for(vm, c);
}

std::set<std::string> SamplerState::classes_of(std::uint32_t noun) const {
  return noun_classes(classes_, nouns_->name(noun), cfg_.engine.smoothing_level);
}

double SamplerState::ccd_for(const VerbModel& vm, const std::string& case_id) const {
  std::vector<const std::set<std::string>*> sets(vm.senses.size(), nullptr);
  auto cl = vm.classes.find(case_id);
  for (std::size_t s = 0; s < vm.senses.size(); ++s)
    if (vm.frames[s].contains(case_id)) sets[s] = cl == vm.classes.end() ? nullptr : &cl->second[s];
  // A sense subcategorizing the case always has a class entry once built.
  static const std::set<std::string> kEmpty;
  for (std::size_t s = 0; s < vm.senses.size(); ++s)
    if (vm.frames[s].contains(case_id) && sets[s] == nullptr) sets[s] = &kEmpty;
  return ccd_from_class_sets(sets, 1.0);
}

double SamplerState::sim(std::uint32_t a, std::uint32_t b) const {
  ++sim_evals_;
  return nouns_->at(a, b);
}

void SamplerState::fill_sims(Item& it) const {
  const auto& vm = verbs_[it.verb];
  const std::size_t slots = it.nouns.size();
  it.sims.assign(vm.senses.size() * slots, 0.0);
  for (std::size_t s = 0; s < vm.senses.size(); ++s) {
    for (std::size_t j = 0; j < slots; ++j) {
      auto f = vm.fillers.find(it.ex.slots[j].case_id);
      if (f == vm.fillers.end()) continue;
      double best = 0.0;
      for (auto filler : f->second[s]) best = std::max(best, sim(it.nouns[j], filler));
      it.sims[s * slots + j] = best;
    }
  }
}

void SamplerState::refresh_item(Item& it) const {
  const auto& vm = verbs_[it.verb];
  const std::size_t n = vm.senses.size();
  const std::size_t slots = it.nouns.size();
  it.ccd.resize(slots);
  for (std::size_t j = 0; j < slots; ++j) it.ccd[j] = vm.ccd.at(it.ex.slots[j].case_id);
  it.candidate.assign(n, 0);
  it.scores.assign(n, 0.0);

  std::vector<DecisionInput::Candidate> cands;
  std::vector<std::size_t> cand_sense;
  double top = -1.0;
  double second = -1.0;
  for (std::size_t s = 0; s < n; ++s) {
    bool fits = std::all_of(it.ex.slots.begin(), it.ex.slots.end(),
                            [&](const Slot& sl) { return vm.frames[s].contains(sl.case_id); });
    if (!fits) continue;
    it.candidate[s] = 1;
    std::span<const double> row(it.sims.data() + s * slots, slots);
    it.scores[s] = weighted_score(row, it.ccd);
    cands.push_back({vm.senses[s], vm.freq[s], row});
    cand_sense.push_back(s);
    if (it.scores[s] > top) {
      second = top;
      top = it.scores[s];
    } else if (it.scores[s] > second) {
      second = it.scores[s];
    }
  }

  if (cands.empty()) {
    std::size_t best = 0;
    for (std::size_t s = 1; s < n; ++s)
      if (vm.freq[s] > vm.freq[best]) best = s;
    it.chosen = best;
    it.tie_broken = true;
    it.certainty = 0.0;
    return;
  }
  std::vector<std::string> cases;
  cases.reserve(slots);
  for (const auto& sl : it.ex.slots) cases.push_back(sl.case_id);
  Decision d = decide({cases, it.ccd, cands}, cfg_.engine);
  it.chosen = cand_sense[d.winner];
  it.tie_broken = d.tie_broken;
  it.certainty = wsd::certainty(top, cands.size() < 2 ? 0.0 : second, cfg_.engine.lambda);
}

// ---------------------------------------------------------------------------

std::size_t SamplerState::index_of(std::string_view id) const {
  auto it = item_index_.find(std::string(id));
  if (it == item_index_.end()) throw Error("unknown example '" + std::string(id) + "'");
  return it->second;
}

const SamplerState::Item& SamplerState::item(std::string_view id) const {
  const Item& it = items_[index_of(id)];
  if (it.role == Role::committed)
    throw Error("example '" + std::string(id) + "' is already supervised");
  return it;
}

std::size_t SamplerState::pool_index(std::string_view id) const {
  auto it = item_index_.find(std::string(id));
  if (it == item_index_.end() || items_[it->second].role != Role::pool)
    throw Error("example '" + std::string(id) + "' is not in the pool");
  return it->second;
}

std::size_t SamplerState::sense_index(const VerbModel& vm, std::string_view sense) const {
  auto it = std::lower_bound(vm.senses.begin(), vm.senses.end(), sense);
  if (it == vm.senses.end() || *it != sense)
    throw Error("'" + std::string(sense) + "' is not a sense of '" + vm.verb + "'");
  return static_cast<std::size_t>(it - vm.senses.begin());
}

std::vector<const Example*> SamplerState::pool() const {
  std::vector<const Example*> out;
  out.reserve(pool_order_.size());
  for (auto i : pool_order_) out.push_back(&items_[i].ex);
  return out;
}

bool SamplerState::in_pool(std::string_view id) const {
  auto it = item_index_.find(std::string(id));
  return it != item_index_.end() && items_[it->second].role == Role::pool;
}

const Example* SamplerState::find_example(std::string_view id) const {
  auto it = item_index_.find(std::string(id));
  return it == item_index_.end() ? nullptr : &items_[it->second].ex;
}

double SamplerState::best_sim(std::string_view id, std::string_view sense,
                              std::string_view case_id) const {
  const Item& it = item(id);
  const auto& vm = verbs_[it.verb];
  std::size_t s = sense_index(vm, sense);
  for (std::size_t j = 0; j < it.ex.slots.size(); ++j)
    if (it.ex.slots[j].case_id == case_id) return it.sims[s * it.nouns.size() + j];
  throw Error("example '" + std::string(id) + "' has no case '" + std::string(case_id) + "'");
}

std::vector<std::pair<std::string, double>> SamplerState::scores(std::string_view id) const {
  const Item& it = item(id);
  const auto& vm = verbs_[it.verb];
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t s = 0; s < vm.senses.size(); ++s)
    if (it.candidate[s]) out.emplace_back(vm.senses[s], it.scores[s]);
  return out;
}

double SamplerState::certainty(std::string_view id) const { return item(id).certainty; }

const std::string& SamplerState::predicted(std::string_view id) const {
  const Item& it = item(id);
  return verbs_[it.verb].senses[it.chosen];
}

double SamplerState::ccd(std::string_view verb, std::string_view case_id) const {
  auto v = verb_index_.find(std::string(verb));
  if (v == verb_index_.end()) throw Error("unknown verb '" + std::string(verb) + "'");
  const auto& vm = verbs_[v->second];
  auto c = vm.ccd.find(std::string(case_id));
  return c != vm.ccd.end() ? c->second : ccd_for(vm, std::string(case_id));
}

ScoreReport SamplerState::report(std::string_view id) const {
  const Item& it = item(id);
  const auto& vm = verbs_[it.verb];
  const std::size_t slots = it.nouns.size();
  ScoreReport r;
  r.verb = it.ex.verb;
  for (const auto& sl : it.ex.slots) r.cases.push_back(sl.case_id);
  r.ccd = it.ccd;
  for (std::size_t s = 0; s < vm.senses.size(); ++s) {
    if (!it.candidate[s]) {
      r.filtered.push_back(vm.senses[s]);
      continue;
    }
    SenseScore ss;
    ss.sense = vm.senses[s];
    ss.score = it.scores[s];
    ss.case_sims.assign(it.sims.begin() + static_cast<std::ptrdiff_t>(s * slots),
                        it.sims.begin() + static_cast<std::ptrdiff_t>((s + 1) * slots));
    r.senses.push_back(std::move(ss));
  }
  std::stable_sort(r.senses.begin(), r.senses.end(),
                   [](const SenseScore& a, const SenseScore& b) { return a.score > b.score; });
  r.chosen = vm.senses[it.chosen];
  r.tie_broken = it.tie_broken;
  r.certainty = it.certainty;
  return r;
}

// ---------------------------------------------------------------------------

double SamplerState::utility_for_sense(const Item& x, std::size_t s,
                                       std::vector<std::size_t>* members) const {
  const auto& vm = verbs_[x.verb];
  const std::size_t n = vm.senses.size();
  const double lambda = cfg_.engine.lambda;
  std::vector<double> row;
  double total = 0.0;

  for (std::size_t yi : vm.items) {
    const Item& y = items_[yi];
    if (y.role != Role::pool || &y == &x) continue;
    const std::size_t slots = y.nouns.size();
    row.assign(y.sims.begin() + static_cast<std::ptrdiff_t>(s * slots),
               y.sims.begin() + static_cast<std::ptrdiff_t>((s + 1) * slots));
    bool member = false;
    bool covered = true;  // y's cases within frame(s) + x's cases
    for (std::size_t j = 0; j < slots; ++j) {
      const auto& c = y.ex.slots[j].case_id;
      const Slot* xs = nullptr;
      std::size_t xj = 0;
      for (; xj < x.ex.slots.size(); ++xj) {
        if (x.ex.slots[xj].case_id == c) {
          xs = &x.ex.slots[xj];
          break;
        }
      }
      if (xs != nullptr) {
        double v = sim(y.nouns[j], x.nouns[xj]);
        if (v > row[j]) {
          row[j] = v;
          member = true;
        }
      } else if (!vm.frames[s].contains(c)) {
        covered = false;
      }
    }
    bool flips = !y.candidate[s] && covered;
    if (!member && !flips) continue;
    if (members != nullptr) members->push_back(yi);

    bool cand_after = y.candidate[s] || flips;
    double top = -1.0;
    double second = -1.0;
    std::size_t count = 0;
    for (std::size_t t = 0; t < n; ++t) {
      bool cand = t == s ? cand_after : y.candidate[t] != 0;
      if (!cand) continue;
      double sc = t == s ? weighted_score(row, y.ccd) : y.scores[t];
      ++count;
      if (sc > top) {
        second = top;
        top = sc;
      } else if (sc > second) {
        second = sc;
      }
    }
    double after = count == 0 ? 0.0 : wsd::certainty(top, count < 2 ? 0.0 : second, lambda);
    double delta = after - y.certainty;
    if (cfg_.utility == UtilityMode::positive_only) delta = std::max(delta, 0.0);
    total += delta;
  }
  return total;
}

std::vector<std::size_t> SamplerState::top_senses(const Item& it, int k) const {
  const auto& vm = verbs_[it.verb];
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < vm.senses.size(); ++s)
    if (it.candidate[s]) order.push_back(s);
  if (order.empty()) {
    order.resize(vm.senses.size());
    std::iota(order.begin(), order.end(), 0);
    return order;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return it.scores[a] > it.scores[b]; });
  std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
  double kth = it.scores[order[keep - 1]];
  while (keep < order.size() && it.scores[order[keep]] == kth) ++keep;
  order.resize(keep);
  return order;
}

double SamplerState::utility(const Item& x, int k, std::vector<std::size_t>* members) const {
  auto senses = top_senses(x, k);
  double sum = 0.0;
  for (auto s : senses) sum += utility_for_sense(x, s, members);
  if (members != nullptr) {
    std::sort(members->begin(), members->end());
    members->erase(std::unique(members->begin(), members->end()), members->end());
  }
  return sum / static_cast<double>(senses.size());
}

std::vector<std::string> SamplerState::affected_set(std::string_view id,
                                                    std::string_view sense) const {
  const Item& x = items_[pool_index(id)];
  std::vector<std::size_t> members;
  utility_for_sense(x, sense_index(verbs_[x.verb], sense), &members);
  std::vector<std::string> out;
  for (auto m : members) out.push_back(items_[m].ex.id);
  return out;
}

double SamplerState::training_utility_for_sense(std::string_view id, std::string_view sense) const {
  const Item& x = items_[pool_index(id)];
  return utility_for_sense(x, sense_index(verbs_[x.verb], sense), nullptr);
}

double SamplerState::training_utility(std::string_view id, int k) const {
  if (k < 1) throw Error("k must be >= 1");
  return utility(items_[pool_index(id)], k, nullptr);
}

void SamplerState::refresh_training_utilities(int k) {
  if (k < 1) throw Error("k must be >= 1");
  if (k != tu_k_) {
    for (auto& it : items_) it.tu_valid = false;
    tu_k_ = k;
  }
  for (auto i : pool_order_) {
    Item& it = items_[i];
    if (it.tu_valid) continue;
    it.tu_neighbors.clear();
    it.tu = utility(it, k, &it.tu_neighbors);
    it.tu_valid = true;
    ++tu_recomputed_;
  }
}

double SamplerState::cached_training_utility(std::string_view id, int k) {
  std::size_t i = pool_index(id);
  if (k < 1) throw Error("k must be >= 1");
  if (k != tu_k_) {
    for (auto& it : items_) it.tu_valid = false;
    tu_k_ = k;
  }
  Item& it = items_[i];
  if (!it.tu_valid) {
    it.tu_neighbors.clear();
    it.tu = utility(it, k, &it.tu_neighbors);
    it.tu_valid = true;
    ++tu_recomputed_;
  }
  return it.tu;
}

// ---------------------------------------------------------------------------

void SamplerState::commit(std::string_view id, std::string_view sense, std::string_view strategy) {
  const std::size_t xi = pool_index(id);
  VerbModel& vm = verbs_[items_[xi].verb];
  const std::size_t s = sense_index(vm, sense);
  const std::uint64_t evals_before = sim_evals_;

  Item& x = items_[xi];
  db_.commit(x.ex, vm.senses[s]);
  x.role = Role::committed;
  x.tu_valid = false;
  pool_order_.erase(std::find(pool_order_.begin(), pool_order_.end(), xi));

  // Database mirror: frequency, frame, fillers, generalized classes.
  ++vm.freq[s];
  bool frame_changed = false;
  const std::size_t n = vm.senses.size();
  for (std::size_t j = 0; j < x.ex.slots.size(); ++j) {
    const auto& c = x.ex.slots[j].case_id;
    frame_changed |= vm.frames[s].insert(c).second;
    auto& f = vm.fillers[c];
    auto& cl = vm.classes[c];
    f.resize(n);
    cl.resize(n);
    f[s].push_back(x.nouns[j]);
    auto g = classes_of(x.nouns[j]);
    cl[s].insert(g.begin(), g.end());
  }
  bool ccd_changed = false;
  for (const auto& sl : x.ex.slots) {
    double v = ccd_for(vm, sl.case_id);
    auto& slot = vm.ccd[sl.case_id];
    ccd_changed |= slot != v;
    slot = v;
  }

  // One pass over this verb's examples: SIM_new = max(SIM_old, sim(y_c, x_c)).
  std::vector<std::size_t> changed;
  std::vector<double> old_scores;
  std::vector<char> old_cand;
  for (std::size_t yi : vm.items) {
    Item& y = items_[yi];
    if (y.role == Role::committed) continue;
    const std::size_t slots = y.nouns.size();
    bool sims_changed = false;
    for (std::size_t j = 0; j < slots; ++j) {
      const auto& c = y.ex.slots[j].case_id;
      for (std::size_t xj = 0; xj < x.ex.slots.size(); ++xj) {
        if (x.ex.slots[xj].case_id != c) continue;
        double v = sim(y.nouns[j], x.nouns[xj]);
        double& cur = y.sims[s * slots + j];
        if (v > cur) {
          cur = v;
          sims_changed = true;
        }
        break;
      }
    }
    old_scores = y.scores;
    old_cand = y.candidate;
    refresh_item(y);
    if (sims_changed || old_scores != y.scores || old_cand != y.candidate) changed.push_back(yi);
  }
  last_commit_evals_ = sim_evals_ - evals_before;

  // Utility cache invalidation.
  ++commits_;
  if (tu_k_ != 0) {
    const bool periodic = cfg_.tu_refresh_interval > 0 && commits_ % cfg_.tu_refresh_interval == 0;
    if (periodic) {
      for (auto& it : items_) it.tu_valid = false;
    } else if (frame_changed || ccd_changed) {
      for (std::size_t yi : vm.items) items_[yi].tu_valid = false;
    } else {
      std::vector<char> dirty(items_.size(), 0);
      dirty[xi] = 1;
      for (auto c : changed) dirty[c] = 1;
      for (std::size_t zi : vm.items) {
        Item& z = items_[zi];
        if (z.role != Role::pool || !z.tu_valid) continue;
        if (dirty[zi] || std::any_of(z.tu_neighbors.begin(), z.tu_neighbors.end(),
                                     [&](std::size_t m) { return dirty[m] != 0; }))
          z.tu_valid = false;
      }
    }
  }

  HistoryRecord rec;
  rec.iteration = history_.size() + 1;
  rec.strategy = std::string(strategy);
  rec.example_id = x.ex.id;
  rec.sense = vm.senses[s];
  rec.pool_accuracy = pool_accuracy();
  rec.certainty_mean = certainty_mean();
  history_.push_back(std::move(rec));
}

std::optional<double> SamplerState::pool_accuracy() const {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (auto i : pool_order_) {
    const Item& it = items_[i];
    if (!it.ex.gold_sense) continue;
    ++total;
    correct += verbs_[it.verb].senses[it.chosen] == *it.ex.gold_sense;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::optional<double> SamplerState::tracked_accuracy() const {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& it : items_) {
    if (it.role != Role::tracked || !it.ex.gold_sense) continue;
    ++total;
    correct += verbs_[it.verb].senses[it.chosen] == *it.ex.gold_sense;
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::optional<double> SamplerState::certainty_mean() const {
  if (pool_order_.empty()) return std::nullopt;
  double sum = 0.0;
  for (auto i : pool_order_) sum += items_[i].certainty;
  return sum / static_cast<double>(pool_order_.size());
}

// ---------------------------------------------------------------------------

Selector::Selector(Strategy s) : s_(s), rng_(s.seed) { s_.validate(); }

std::string Selector::select(SamplerState& st) {
  if (st.pool_empty()) throw Error("cannot select from an empty pool");
  auto pool = st.pool();
  switch (s_.kind) {
    case StrategyKind::tu: {
      st.refresh_training_utilities(s_.k);
      const Example* best = nullptr;
      double best_tu = 0.0;
      for (const Example* e : pool) {
        double tu = st.cached_training_utility(e->id, s_.k);
        if (best == nullptr || tu > best_tu || (tu == best_tu && e->id < best->id)) {
          best = e;
          best_tu = tu;
        }
      }
      return best->id;
    }
    case StrategyKind::uncertainty: {
      const Example* best = nullptr;
      double best_c = 0.0;
      for (const Example* e : pool) {
        double c = st.certainty(e->id);
        if (best == nullptr || c < best_c || (c == best_c && e->id < best->id)) {
          best = e;
          best_c = c;
        }
      }
      return best->id;
    }
    case StrategyKind::random:
      return pool[uniform_index(rng_, pool.size())]->id;
    case StrategyKind::committee:
      return select_committee(st);
  }
  throw Error("unhandled strategy");
}

std::string Selector::select_committee(SamplerState& st) {
  const auto& db = st.database();
  std::vector<SenseDatabase> members(static_cast<std::size_t>(s_.committee_size));
  for (auto& m : members) {
    for (const auto& [verb, v] : db.entries()) {
      for (const auto& [sid, s] : v.senses) {
        m.declare_sense(verb, sid);
        m.set_frequency(verb, sid, s.freq);
        for (const auto& c : s.frame) {
          m.declare_case(verb, sid, c);
          const auto& fillers = s.fillers_for(c);
          if (fillers.empty()) continue;
          auto keep = static_cast<std::size_t>(std::llround(s_.member_fraction * static_cast<double>(fillers.size())));
          keep = std::clamp<std::size_t>(keep, 1, fillers.size());
          std::vector<std::size_t> idx(fillers.size());
          std::iota(idx.begin(), idx.end(), 0);
          for (std::size_t i = 0; i < keep; ++i) std::swap(idx[i], idx[i + uniform_index(rng_, idx.size() - i)]);
          idx.resize(keep);
          std::sort(idx.begin(), idx.end());
          std::vector<std::string> chosen;
          for (auto i : idx) chosen.push_back(fillers[i]);
          m.add_fillers(verb, sid, c, chosen);
        }
      }
    }
  }
  std::vector<std::unique_ptr<Engine>> engines;
  for (const auto& m : members)
    engines.push_back(std::make_unique<Engine>(m, st.similarity(), st.classes(), st.config().engine));

  auto pool = st.pool();
  std::vector<const Example*> disagreed;
  for (const Example* e : pool) {
    std::string first = engines.front()->disambiguate(*e).chosen;
    for (std::size_t i = 1; i < engines.size(); ++i) {
      if (engines[i]->disambiguate(*e).chosen != first) {
        disagreed.push_back(e);
        break;
      }
    }
  }
  const auto& from = disagreed.empty() ? pool : disagreed;
  return from[uniform_index(rng_, from.size())]->id;
}

std::vector<HistoryRecord> run_loop(SamplerState& st, Selector& selector, const Oracle& oracle,
                                    std::size_t budget, const LoopObserver& observer) {
  std::vector<HistoryRecord> out;
  const auto name = std::string(to_string(selector.strategy().kind));
  while (out.size() < budget && !st.pool_empty()) {
    std::string id = selector.select(st);
    const Example& e = *st.find_example(id);
    std::string sense = oracle(e);
    st.commit(id, sense, name);
    out.push_back(st.history().back());
    if (observer) observer(st, out.back());
  }
  return out;
}

Oracle gold_oracle() {
  return [](const Example& e) -> std::string {
    if (!e.gold_sense) throw Error("example '" + e.id + "' has no gold sense");
    return *e.gold_sense;
  };
}

}  // namespace wsd
