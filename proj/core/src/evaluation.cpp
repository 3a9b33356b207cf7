#include "wsd/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "wsd/baselines.hpp"
#include "wsd/error.hpp"
#include "wsd/similarity.hpp"

namespace wsd {

double accuracy(const std::vector<std::string>& outputs, const std::vector<std::string>& golds) {
  if (outputs.empty()) throw Error("accuracy of an empty output list");
  if (outputs.size() != golds.size()) throw Error("outputs and golds differ in length");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i) correct += outputs[i] == golds[i];
  return static_cast<double>(correct) / static_cast<double>(outputs.size());
}

namespace {

void require_gold(const ExampleSet& s) {
  for (const auto& e : s)
    if (!e.gold_sense) throw Error("example '" + e.id + "' has no gold sense");
}

// Training database with every sense of the corpus declared, so that test
// examples of senses missing from a fold still resolve.
SenseDatabase training_database(const ExampleSet& corpus, const ExampleSet& train) {
  SenseDatabase db;
  for (const auto& [verb, senses] : sense_inventory(corpus))
    for (const auto& s : senses) db.declare_sense(verb, s);
  for (const auto& e : train) db.commit(e, *e.gold_sense);
  return db;
}

}  // namespace

CrossValidationReport cross_validate(const ExampleSet& corpus, const Thesaurus& thesaurus,
                                     const VectorTable* vectors, const CrossValidationConfig& cfg) {
  require_gold(corpus);
  cfg.engine.validate();
  auto folds = split_folds(corpus, cfg.folds, cfg.seed);

  CrossValidationReport r;
  r.methods = {"lb", "rb", "nb"};
  if (vectors != nullptr) r.methods.push_back("vsm");
  r.methods.push_back("thesaurus");

  ThesaurusSimilarity tsim(thesaurus);
  std::optional<CosineSimilarity> vsim;
  if (vectors != nullptr) vsim.emplace(*vectors);

  for (std::size_t f = 0; f < folds.size(); ++f) {
    const ExampleSet& test = folds[f];
    ExampleSet train = merge_folds_except(folds, f);
    SenseDatabase db = training_database(corpus, train);

    // Threshold chosen on an inner split of the training part.
    double theta = cfg.theta_grid.empty() ? 0.0 : cfg.theta_grid.front();
    if (!cfg.theta_grid.empty() && train.size() >= 5) {
      auto inner = split_folds(train, 5, cfg.seed + 1 + f);
      SenseDatabase inner_db = training_database(corpus, merge_folds_except(inner, 0));
      theta = tune_theta(inner_db, thesaurus, inner[0], cfg.theta_grid);
    }
    r.rb_theta.push_back(theta);
    RuleSet rules = induce_rules(db, thesaurus, theta);
    NbModel nb = nb_train(db, &thesaurus, cfg.nb_level, cfg.nb_pseudo);
    Engine teng(db, tsim, &thesaurus, cfg.engine);
    std::optional<Engine> veng;
    if (vsim) {
      EngineConfig vc = cfg.engine;
      vc.backend = Backend::vsm;
      veng.emplace(db, *vsim, &thesaurus, vc);
    }

    std::map<std::string, std::vector<std::string>> out;
    std::vector<std::string> golds;
    for (const auto& e : test) {
      golds.push_back(*e.gold_sense);
      out["lb"].push_back(most_frequent_sense(db, e.verb));
      out["rb"].push_back(rule_based_disambiguate(rules, db, thesaurus, e));
      out["nb"].push_back(nb_disambiguate(nb, e));
      if (veng) out["vsm"].push_back(veng->disambiguate(e).chosen);
      out["thesaurus"].push_back(teng.disambiguate(e).chosen);
    }
    for (const auto& m : r.methods) r.fold_accuracy[m].push_back(accuracy(out[m], golds));
  }
  for (const auto& m : r.methods) {
    const auto& v = r.fold_accuracy[m];
    double sum = 0.0;
    for (double a : v) sum += a;
    r.mean[m] = sum / static_cast<double>(v.size());
  }
  return r;
}

void write_cross_validation(std::ostream& out, const CrossValidationReport& r) {
  out << "fold";
  for (const auto& m : r.methods) out << '\t' << m;
  out << '\n';
  const std::size_t n = r.fold_accuracy.at(r.methods.front()).size();
  for (std::size_t f = 0; f < n; ++f) {
    out << f;
    for (const auto& m : r.methods) out << '\t' << r.fold_accuracy.at(m)[f];
    out << '\n';
  }
  out << "mean";
  for (const auto& m : r.methods) out << '\t' << r.mean.at(m);
  out << '\n';
}

// ---------------------------------------------------------------------------

std::vector<SweepRow> coverage_accuracy_sweep(const std::vector<double>& certainties,
                                              const std::vector<bool>& correct,
                                              const std::vector<double>& thresholds, double lambda) {
  if (certainties.empty()) throw Error("sweep over an empty output list");
  if (certainties.size() != correct.size()) throw Error("certainties and outcomes differ in length");
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    throw Error("thresholds must be ascending");
  std::vector<SweepRow> rows;
  for (double t : thresholds) {
    std::size_t covered = 0;
    std::size_t right = 0;
    for (std::size_t i = 0; i < certainties.size(); ++i) {
      if (certainties[i] >= t) {
        ++covered;
        right += correct[i];
      }
    }
    SweepRow row;
    row.lambda = lambda;
    row.threshold = t;
    row.coverage = static_cast<double>(covered) / static_cast<double>(certainties.size());
    if (covered > 0) row.accuracy = static_cast<double>(right) / static_cast<double>(covered);
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> lambda_sweep(const ExampleSet& corpus, const Thesaurus& thesaurus,
                                   const std::vector<double>& lambdas,
                                   const std::vector<double>& thresholds, EngineConfig engine,
                                   int folds, std::uint64_t seed) {
  require_gold(corpus);
  for (double l : lambdas) {
    engine.lambda = l;
    engine.validate();
  }
  auto parts = split_folds(corpus, folds, seed);
  ThesaurusSimilarity sim(thesaurus);
  // Top two scores and correctness per held-out example; certainty is formed per lambda.
  std::vector<double> top;
  std::vector<double> second;
  std::vector<bool> correct;
  for (std::size_t f = 0; f < parts.size(); ++f) {
    SenseDatabase db = training_database(corpus, merge_folds_except(parts, f));
    Engine eng(db, sim, &thesaurus, engine);
    for (const auto& e : parts[f]) {
      ScoreReport r = eng.disambiguate(e);
      top.push_back(r.top_score());
      second.push_back(r.second_score());
      correct.push_back(r.chosen == *e.gold_sense);
    }
  }
  std::vector<SweepRow> rows;
  for (double l : lambdas) {
    std::vector<double> c(top.size());
    for (std::size_t i = 0; i < top.size(); ++i) c[i] = certainty(top[i], second[i], l);
    auto part = coverage_accuracy_sweep(c, correct, thresholds, l);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::vector<double> threshold_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw Error("threshold step must lie in (0, 1]");
  std::vector<double> out;
  const auto n = static_cast<int>(std::llround(1.0 / step));
  for (int i = 0; i <= n; ++i) out.push_back(std::min(1.0, i * step));
  return out;
}

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "lambda\tthreshold\tcoverage\taccuracy\n";
  for (const auto& r : rows) {
    out << r.lambda << '\t' << r.threshold << '\t' << r.coverage << '\t';
    if (r.accuracy)
      out << *r.accuracy;
    else
      out << "NA";
    out << '\n';
  }
}

// ---------------------------------------------------------------------------

std::string_view to_string(InitMode m) { return m == InitMode::seed_db ? "seed-db" : "from-scratch"; }

InitMode parse_init_mode(std::string_view s) {
  if (s == "seed-db") return InitMode::seed_db;
  if (s == "from-scratch") return InitMode::from_scratch;
  throw Error("unknown init mode '" + std::string(s) + "'");
}

SeedCurve run_learning_curve(const ExampleSet& corpus, const Thesaurus* classes,
                             const NounSimilarity& sim, const CurveConfig& cfg, std::uint64_t seed) {
  require_gold(corpus);
  if (cfg.init == InitMode::seed_db && cfg.seed_db == nullptr)
    throw Error("seed-db init needs a seed database");
  auto folds = split_folds(corpus, cfg.folds, seed);
  const ExampleSet& held_out = folds[0];
  ExampleSet pool = merge_folds_except(folds, 0);

  SenseDatabase start;
  if (cfg.init == InitMode::seed_db) start = *cfg.seed_db;
  for (const auto& [verb, senses] : sense_inventory(corpus))
    for (const auto& s : senses) start.declare_sense(verb, s);

  SeedCurve out;
  out.seed = seed;
  out.pool_size = pool.size();
  {
    SenseDatabase full = start;
    for (const auto& e : pool) full.commit(e, *e.gold_sense);
    Engine eng(full, sim, classes, cfg.sampler.engine);
    std::size_t right = 0;
    for (const auto& e : held_out) right += eng.disambiguate(e).chosen == *e.gold_sense;
    out.exhaustive_accuracy = static_cast<double>(right) / static_cast<double>(held_out.size());
  }

  SamplerState st(std::move(start), pool, sim, classes, cfg.sampler, &held_out);
  const std::string name(to_string(cfg.strategy.kind));
  std::size_t init_labels = 0;
  auto point = [&](const SamplerState& s) {
    CurvePoint p;
    p.strategy = name;
    p.labels = s.history().size() - init_labels;
    p.accuracy = *s.tracked_accuracy();
    p.pool_accuracy = s.pool_accuracy();
    p.seed = seed;
    return p;
  };

  if (cfg.init == InitMode::from_scratch) {
    Rng rng(seed);
    for (const auto& [verb, senses] : sense_inventory(corpus)) {
      for (const auto& s : senses) {
        std::vector<std::string> ids;
        for (const Example* e : st.pool())
          if (e->verb == verb && *e->gold_sense == s) ids.push_back(e->id);
        if (ids.empty()) continue;
        st.commit(ids[uniform_index(rng, ids.size())], s, "init");
      }
    }
    init_labels = st.history().size();
  }
  out.points.push_back(point(st));

  const bool stop = cfg.stop_fraction.has_value();
  const double target = stop ? *cfg.stop_fraction * out.exhaustive_accuracy : 0.0;
  const std::size_t budget = cfg.budget.value_or(st.pool_size());
  if (stop && out.points.back().accuracy >= target) return out;

  Strategy strategy = cfg.strategy;
  strategy.seed = cfg.strategy.seed ^ (seed * 0x9E3779B97F4A7C15ULL);
  Selector selector(strategy);
  std::size_t used = 0;
  while (used < budget && !st.pool_empty()) {
    std::string id = selector.select(st);
    st.commit(id, *st.find_example(id)->gold_sense, name);
    ++used;
    out.points.push_back(point(st));
    if (stop && out.points.back().accuracy >= target) break;
  }
  return out;
}

std::vector<MeanPoint> average_curves(const std::vector<SeedCurve>& curves) {
  std::vector<MeanPoint> out;
  if (curves.empty()) return out;
  std::size_t len = curves.front().points.size();
  for (const auto& c : curves) len = std::min(len, c.points.size());
  for (std::size_t i = 0; i < len; ++i) {
    double sum = 0.0;
    for (const auto& c : curves) sum += c.points[i].accuracy;
    const double n = static_cast<double>(curves.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& c : curves) ss += (c.points[i].accuracy - mean) * (c.points[i].accuracy - mean);
    MeanPoint p;
    p.strategy = curves.front().points[i].strategy;
    p.labels = curves.front().points[i].labels;
    p.mean = mean;
    p.stddev = curves.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    out.push_back(p);
  }
  return out;
}

std::optional<std::size_t> labels_to_reach(const SeedCurve& c, double target) {
  for (const auto& p : c.points)
    if (p.accuracy >= target) return p.labels;
  return std::nullopt;
}

void write_curve(std::ostream& out, const std::vector<MeanPoint>& points, bool header) {
  if (header) out << "strategy\tlabels\tmean_acc\tstddev\n";
  for (const auto& p : points)
    out << p.strategy << '\t' << p.labels << '\t' << p.mean << '\t' << p.stddev << '\n';
}

double median(std::vector<double> v) {
  if (v.empty()) throw Error("median of an empty list");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace wsd
