#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/database.hpp"
#include "wsd/engine.hpp"
#include "wsd/random.hpp"
#include "wsd/similarity.hpp"

namespace wsd {

enum class StrategyKind { tu, uncertainty, committee, random };

std::string_view to_string(StrategyKind k);
StrategyKind parse_strategy(std::string_view s);

struct Strategy {
  StrategyKind kind = StrategyKind::tu;
  int k = 1;                     // k-best senses averaged by training utility
  int committee_size = 2;
  double member_fraction = 0.5;  // share of each (sense, case) filler list a member keeps
  std::uint64_t seed = 0;

  void validate() const;
};

/// How certainty changes of affected examples are summed into a utility.
enum class UtilityMode { signed_sum, positive_only };

struct SamplerConfig {
  EngineConfig engine;
  UtilityMode utility = UtilityMode::signed_sum;
  /// Every N commits all cached utilities are recomputed; 0 disables.
  int tu_refresh_interval = 25;
};

struct HistoryRecord {
  std::size_t iteration = 0;  // 1-based
  std::string strategy;
  std::string example_id;
  std::string sense;
  std::optional<double> pool_accuracy;
  std::optional<double> certainty_mean;
};

/// One JSON object per record: iteration, strategy, example_id, assigned_sense,
/// pool_accuracy, certainty_mean (null when undefined).
std::string to_json(const HistoryRecord& r);

class NounTable;

/// Active-learning state: the supervised database D, the unsupervised pool X and
/// per-example caches (best SIM per sense and case, scores, certainty, training
/// utility) kept consistent with D by incremental updates on every commit.
///
/// An optional tracked set is disambiguated with the same caches but never
/// sampled; it serves held-out evaluation.
class SamplerState {
 public:
  SamplerState(SenseDatabase db, const ExampleSet& pool, const NounSimilarity& sim,
               const Thesaurus* classes, SamplerConfig cfg, const ExampleSet* tracked = nullptr);
  ~SamplerState();
  SamplerState(SamplerState&&) noexcept;
  SamplerState& operator=(SamplerState&&) noexcept;

  const SenseDatabase& database() const noexcept { return db_; }
  const SamplerConfig& config() const noexcept { return cfg_; }
  const NounSimilarity& similarity() const;
  const Thesaurus* classes() const noexcept { return classes_; }

  std::size_t pool_size() const noexcept { return pool_order_.size(); }
  bool pool_empty() const noexcept { return pool_order_.empty(); }
  /// Pool examples in input order.
  std::vector<const Example*> pool() const;
  bool in_pool(std::string_view id) const;
  /// Any example the state was built with (pool, tracked or already committed).
  const Example* find_example(std::string_view id) const;
  const std::vector<HistoryRecord>& history() const noexcept { return history_; }

  // Cached disambiguation results for pool or tracked examples.
  double best_sim(std::string_view id, std::string_view sense, std::string_view case_id) const;
  /// (sense, score) for frame-surviving senses, in sense id order.
  std::vector<std::pair<std::string, double>> scores(std::string_view id) const;
  double certainty(std::string_view id) const;
  const std::string& predicted(std::string_view id) const;
  ScoreReport report(std::string_view id) const;
  double ccd(std::string_view verb, std::string_view case_id) const;

  /// Pool examples whose sense-`sense` score changes if `id` is committed with it.
  std::vector<std::string> affected_set(std::string_view id, std::string_view sense) const;
  /// Sum of certainty changes over the affected pool examples, CCD frozen.
  double training_utility_for_sense(std::string_view id, std::string_view sense) const;
  /// Mean utility over the k best senses of `id` (ties at the k-th included).
  double training_utility(std::string_view id, int k) const;
  /// Cached variant of training_utility; recomputes stale entries.
  double cached_training_utility(std::string_view id, int k);
  /// Brings every pool entry of the utility cache up to date for `k`.
  void refresh_training_utilities(int k);

  /// Moves `id` from the pool into the database under `sense`. Throws (leaving
  /// the state untouched) when `id` is not pooled or `sense` is not a sense of
  /// its verb.
  void commit(std::string_view id, std::string_view sense, std::string_view strategy = "manual");

  std::optional<double> pool_accuracy() const;
  std::optional<double> tracked_accuracy() const;
  std::optional<double> certainty_mean() const;

  /// Logical noun-pair similarity evaluations performed so far.
  std::uint64_t similarity_evaluations() const noexcept { return sim_evals_; }
  /// Evaluations performed by the most recent commit.
  std::uint64_t last_commit_evaluations() const noexcept { return last_commit_evals_; }
  /// Utility entries recomputed so far (cache misses).
  std::uint64_t utility_recomputations() const noexcept { return tu_recomputed_; }

 private:
  enum class Role : std::uint8_t { pool, tracked, committed };

  struct VerbModel {
    std::string verb;
    std::vector<std::string> senses;  // id order
    std::vector<std::int64_t> freq;
    std::vector<std::set<std::string>> frames;
    // case -> per-sense filler noun ids / generalized classes
    std::map<std::string, std::vector<std::vector<std::uint32_t>>> fillers;
    std::map<std::string, std::vector<std::set<std::string>>> classes;
    std::map<std::string, double> ccd;  // alpha = 1
    std::vector<std::size_t> items;     // pool + tracked items of this verb
  };

  struct Item {
    Example ex;
    Role role = Role::pool;
    std::size_t verb = 0;
    std::vector<std::uint32_t> nouns;    // per slot
    std::vector<double> sims;            // [sense * slots + slot]
    std::vector<double> ccd;             // per slot
    std::vector<char> candidate;         // per sense
    std::vector<double> scores;          // per sense, 0 for non-candidates
    std::size_t chosen = 0;
    bool tie_broken = false;
    double certainty = 0.0;
    // training utility cache
    bool tu_valid = false;
    double tu = 0.0;
    std::vector<std::size_t> tu_neighbors;
  };

  std::size_t index_of(std::string_view id) const;
  const Item& item(std::string_view id) const;
  std::size_t pool_index(std::string_view id) const;
  double sim(std::uint32_t a, std::uint32_t b) const;
  void add_item(const Example& e, Role role);
  void build_verb_models();
  void fill_sims(Item& it) const;
  void refresh_item(Item& it) const;
  double ccd_for(const VerbModel& vm, const std::string& case_id) const;
  std::set<std::string> classes_of(std::uint32_t noun) const;
  std::vector<std::size_t> top_senses(const Item& it, int k) const;
  double utility_for_sense(const Item& x, std::size_t sense, std::vector<std::size_t>* members) const;
  double utility(const Item& x, int k, std::vector<std::size_t>* members) const;
  std::size_t sense_index(const VerbModel& vm, std::string_view sense) const;

  SenseDatabase db_;
  SamplerConfig cfg_;
  const Thesaurus* classes_;
  std::unique_ptr<NounTable> nouns_;
  std::vector<VerbModel> verbs_;
  std::unordered_map<std::string, std::size_t> verb_index_;
  std::vector<Item> items_;
  std::unordered_map<std::string, std::size_t> item_index_;
  std::vector<std::size_t> pool_order_;
  std::vector<HistoryRecord> history_;
  int tu_k_ = 0;
  std::size_t commits_ = 0;
  mutable std::uint64_t sim_evals_ = 0;
  std::uint64_t last_commit_evals_ = 0;
  std::uint64_t tu_recomputed_ = 0;
};

/// Picks the next example to label according to a strategy.
class Selector {
 public:
  explicit Selector(Strategy s);
  const Strategy& strategy() const noexcept { return s_; }
  /// Throws wsd::Error on an empty pool.
  std::string select(SamplerState& st);

 private:
  std::string select_committee(SamplerState& st);

  Strategy s_;
  Rng rng_;
};

using Oracle = std::function<std::string(const Example&)>;
using LoopObserver = std::function<void(const SamplerState&, const HistoryRecord&)>;

/// select -> oracle -> commit, one example per iteration, until `budget`
/// labels were committed or the pool is empty.
std::vector<HistoryRecord> run_loop(SamplerState& st, Selector& selector, const Oracle& oracle,
                                    std::size_t budget, const LoopObserver& observer = {});

/// Oracle answering with each example's gold sense; throws for unlabeled examples.
Oracle gold_oracle();

}  // namespace wsd
