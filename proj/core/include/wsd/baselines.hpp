#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/database.hpp"
#include "wsd/thesaurus.hpp"

namespace wsd {

/// Selectional restrictions: accepted thesaurus classes per (verb, sense, case)
/// with their association scores.
struct RuleSet {
  double theta = 0.0;
  std::map<std::tuple<std::string, std::string, std::string>, std::map<std::string, double>> rules;

  std::size_t class_count() const;
  /// The accepted classes for (verb, sense, case); null when none.
  const std::map<std::string, double>* find(std::string_view verb, std::string_view sense,
                                            std::string_view case_id) const;
};

/// p_sc * log(p_sc / p_c); 0 when p_sc is 0.
double association(double p_sc, double p_c);

/// Association of every thesaurus node (all levels) with each (sense, case),
/// estimated from filler token counts. Classes with A >= theta are kept.
RuleSet induce_rules(const SenseDatabase& db, const Thesaurus& thesaurus, double theta);

/// The single sense whose restrictions dominate every input filler, or the
/// most frequent sense when zero or several senses qualify.
std::string rule_based_disambiguate(const RuleSet& rules, const SenseDatabase& db,
                                    const Thesaurus& thesaurus, const Example& x);

/// Picks theta from `grid` maximizing rule-based accuracy on `validation`
/// (lowest theta on ties).
double tune_theta(const SenseDatabase& train, const Thesaurus& thesaurus,
                  const ExampleSet& validation, const std::vector<double>& grid);

struct NbModel {
  struct CaseTable {
    std::map<std::string, double> counts;  // class -> (fractional) count
    double total = 0.0;
  };
  struct SenseModel {
    double prior = 0.0;
    std::int64_t freq = 0;
    std::map<std::string, CaseTable> cases;
  };
  struct VerbModel {
    std::map<std::string, SenseModel> senses;               // sense id order
    std::map<std::string, std::set<std::string>> vocabulary;  // case -> classes seen with any sense
  };

  int level = 5;
  double pseudo = 1.0;
  std::map<std::string, VerbModel> verbs;
  const Thesaurus* thesaurus = nullptr;

  /// Smoothed P(class | sense, case) over the case vocabulary plus one bucket
  /// for unseen classes; sums to 1 over that support.
  double likelihood(std::string_view verb, std::string_view sense, std::string_view case_id,
                    std::string_view cls) const;
};

/// Priors from sense frequencies (uniform when all are 0); likelihoods over
/// classes at `level`. A noun under several leaves contributes fractional counts.
NbModel nb_train(const SenseDatabase& db, const Thesaurus* thesaurus, int level = 5,
                 double pseudo = 1.0);
/// Normalized posterior over the verb's senses.
std::map<std::string, double> nb_posterior(const NbModel& m, const Example& x);
/// argmax posterior; ties go to the most frequent sense, then the lowest id.
std::string nb_disambiguate(const NbModel& m, const Example& x);

std::string to_json(const RuleSet& r);
std::string to_json(const NbModel& m);

}  // namespace wsd
