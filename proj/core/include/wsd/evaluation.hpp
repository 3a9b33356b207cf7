#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/database.hpp"
#include "wsd/engine.hpp"
#include "wsd/sampler.hpp"
#include "wsd/thesaurus.hpp"
#include "wsd/vectors.hpp"

namespace wsd {

/// correct / total. Throws on empty input or mismatched lengths.
double accuracy(const std::vector<std::string>& outputs, const std::vector<std::string>& golds);

// --- cross-validation -------------------------------------------------------

struct CrossValidationConfig {
  int folds = 6;
  std::uint64_t seed = 0;
  EngineConfig engine;
  std::vector<double> theta_grid = {0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5};
  int nb_level = 5;
  double nb_pseudo = 1.0;
};

struct CrossValidationReport {
  std::vector<std::string> methods;                        // column order
  std::map<std::string, std::vector<double>> fold_accuracy;  // method -> per fold
  std::map<std::string, double> mean;
  std::vector<double> rb_theta;  // tuned threshold per fold
};

/// Columns: lb (most frequent sense), rb (rules), nb (naive Bayes), vsm (engine
/// over TF·IDF cosine, only when `vectors` is given), thesaurus (engine over the
/// thesaurus). Every example must carry a gold sense.
CrossValidationReport cross_validate(const ExampleSet& corpus, const Thesaurus& thesaurus,
                                     const VectorTable* vectors, const CrossValidationConfig& cfg);
void write_cross_validation(std::ostream& out, const CrossValidationReport& r);

// --- coverage / accuracy ----------------------------------------------------

struct SweepRow {
  double lambda = 0.0;
  double threshold = 0.0;
  double coverage = 0.0;
  std::optional<double> accuracy;  // absent when nothing is covered
};

/// For each threshold: coverage = share of outputs with certainty >= threshold,
/// accuracy among those. Thresholds must be ascending. Throws on empty input.
std::vector<SweepRow> coverage_accuracy_sweep(const std::vector<double>& certainties,
                                              const std::vector<bool>& correct,
                                              const std::vector<double>& thresholds,
                                              double lambda = 0.0);

/// Cross-validated thesaurus-engine outputs, swept over every lambda.
std::vector<SweepRow> lambda_sweep(const ExampleSet& corpus, const Thesaurus& thesaurus,
                                   const std::vector<double>& lambdas,
                                   const std::vector<double>& thresholds, EngineConfig engine,
                                   int folds, std::uint64_t seed);

/// 0, step, 2*step, ... up to 1 inclusive.
std::vector<double> threshold_grid(double step = 0.05);

/// `lambda<TAB>threshold<TAB>coverage<TAB>accuracy` with header; `NA` for absent accuracy.
void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows);

// --- learning curves --------------------------------------------------------

enum class InitMode { seed_db, from_scratch };
std::string_view to_string(InitMode m);
InitMode parse_init_mode(std::string_view s);

struct CurvePoint {
  std::string strategy;
  std::size_t labels = 0;  // examples sampled so far, initialization excluded
  double accuracy = 0.0;   // held-out
  std::optional<double> pool_accuracy;
  std::uint64_t seed = 0;
  int fold = 0;
};

struct CurveConfig {
  Strategy strategy;
  SamplerConfig sampler;
  InitMode init = InitMode::from_scratch;
  const SenseDatabase* seed_db = nullptr;  // required for seed_db init
  int folds = 6;                           // fold 0 is held out
  std::optional<std::size_t> budget;       // default: the whole pool
  /// Stop once held-out accuracy reaches this fraction of the exhaustive accuracy.
  std::optional<double> stop_fraction;
};

struct SeedCurve {
  std::uint64_t seed = 0;
  std::vector<CurvePoint> points;  // first point: before any sampled label
  double exhaustive_accuracy = 0.0;
  std::size_t pool_size = 0;
};

/// One seed: split into folds, hold out fold 0, initialize the database
/// (seed database copy, or one random pool example per sense labelled by the
/// oracle) and sample from the remaining pool with gold answers.
SeedCurve run_learning_curve(const ExampleSet& corpus, const Thesaurus* classes,
                             const NounSimilarity& sim, const CurveConfig& cfg, std::uint64_t seed);

struct MeanPoint {
  std::string strategy;
  std::size_t labels = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one seed
};

/// Per-index mean over seeds, truncated to the shortest curve.
std::vector<MeanPoint> average_curves(const std::vector<SeedCurve>& curves);

/// Labels at the first point whose accuracy reaches `target`; nullopt if never.
std::optional<std::size_t> labels_to_reach(const SeedCurve& c, double target);

/// `strategy<TAB>labels<TAB>mean_acc<TAB>stddev` with header.
void write_curve(std::ostream& out, const std::vector<MeanPoint>& points, bool header = true);

double median(std::vector<double> v);

}  // namespace wsd
