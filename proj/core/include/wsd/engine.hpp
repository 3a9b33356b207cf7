#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/database.hpp"
#include "wsd/similarity.hpp"
#include "wsd/thesaurus.hpp"

namespace wsd {

enum class Backend { thesaurus, vsm };
enum class DecisionMode { weighted, lexicographic };

std::string_view to_string(Backend b);
std::string_view to_string(DecisionMode m);
Backend parse_backend(std::string_view s);
DecisionMode parse_decision(std::string_view s);

struct EngineConfig {
  Backend backend = Backend::thesaurus;
  double alpha = 1.0;  // CCD exponent used by the weighted decision
  DecisionMode decision = DecisionMode::lexicographic;
  double lambda = 0.5;
  int smoothing_level = 5;

  /// Throws wsd::Error when alpha < 0, lambda outside [0,1] or level < 1.
  void validate() const;
};

struct SenseScore {
  std::string sense;
  double score = 0.0;             // weighted mean of case_sims with alpha = 1 CCDs
  std::vector<double> case_sims;  // aligned with ScoreReport::cases
};

struct ScoreReport {
  std::string verb;
  std::vector<std::string> cases;     // input cases, input order
  std::vector<double> ccd;            // alpha = 1 CCD per input case
  std::vector<SenseScore> senses;     // frame survivors, score descending then id
  std::vector<std::string> filtered;  // senses whose frame lacks an input case
  std::string chosen;
  bool tie_broken = false;
  double certainty = 0.0;

  double top_score() const { return senses.empty() ? 0.0 : senses[0].score; }
  double second_score() const { return senses.size() < 2 ? 0.0 : senses[1].score; }
};

/// JSON object text: verb, cases, ccd, senses[{sense,score,case_sims}], filtered,
/// chosen, tie_broken, certainty.
std::string to_json(const ScoreReport& r);

/// lambda * top + (1 - lambda) * (top - second). Throws when lambda is outside [0,1].
double certainty(double top, double second, double lambda);
double certainty(const ScoreReport& r, double lambda);

/// Sum(sims * ccd^alpha) / Sum(ccd^alpha); 0 when every weight is 0.
double weighted_score(std::span<const double> sims, std::span<const double> ccd, double alpha = 1.0);

/// Generalization classes of a noun; identity sentinel classes without a thesaurus.
std::set<std::string> noun_classes(const Thesaurus* classes, std::string_view noun, int level);

/// Mean pairwise disjointness of class sets, raised to alpha. Null entries
/// (senses outside the case frame) are ignored; fewer than two sets gives 1.
double ccd_from_class_sets(std::span<const std::set<std::string>* const> sets, double alpha);

double compute_ccd(const SenseDatabase& db, const Thesaurus* classes, std::string_view verb,
                   std::string_view case_id, double alpha, int smoothing_level);

/// Inputs to the decision rule for one example. Rows of `sims` are candidates
/// (frame survivors), columns are the example's cases.
struct DecisionInput {
  std::span<const std::string> cases;
  std::span<const double> ccd;  // alpha = 1
  struct Candidate {
    std::string_view sense;
    std::int64_t freq = 0;
    std::span<const double> sims;
  };
  std::span<const Candidate> candidates;  // sense id order
};

struct Decision {
  std::size_t winner = 0;  // index into candidates
  bool tie_broken = false;
};

/// Weighted: argmax of the alpha-weighted score. Lexicographic: cases by
/// descending CCD, keep the senses with the highest SIM until one remains.
/// Residual ties go to the most frequent sense, then the lowest id.
/// Requires at least one candidate.
Decision decide(const DecisionInput& in, const EngineConfig& cfg);

/// Most frequent sense of a verb, lowest id on ties.
std::string most_frequent_sense(const SenseDatabase& db, std::string_view verb);

/// Nearest-neighbour verb sense disambiguator over a sense database.
/// The database is read as a snapshot: it must not change while the engine is
/// alive (CCD values are memoized). Queries are safe to run concurrently.
class Engine {
 public:
  Engine(const SenseDatabase& db, const NounSimilarity& sim, const Thesaurus* classes,
         EngineConfig cfg);

  const EngineConfig& config() const noexcept { return cfg_; }

  /// Max similarity of `noun` to the sense's fillers for `case_id` (0 when none).
  /// Throws when the case is outside the sense's frame.
  double case_sim(std::string_view verb, std::string_view sense, std::string_view case_id,
                  std::string_view noun) const;
  double ccd(std::string_view verb, std::string_view case_id, double alpha) const;
  /// Weighted score with alpha = 1 CCDs over the input cases in the sense's frame.
  double score(const Example& x, std::string_view sense) const;

  ScoreReport disambiguate(const Example& x) const;

 private:
  const SenseDatabase* db_;
  const NounSimilarity* sim_;
  const Thesaurus* classes_;
  EngineConfig cfg_;
  mutable std::mutex ccd_mutex_;
  mutable std::map<std::pair<std::string, std::string>, double, std::less<>> ccd_memo_;
};

}  // namespace wsd
