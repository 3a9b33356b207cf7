#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/thesaurus.hpp"

namespace wsd {

/// Parameters of the synthetic corpus generator.
struct SyntheticConfig {
  int branching = 3;
  int depth = 6;
  int num_verbs = 1;
  int num_senses = 2;
  std::vector<std::string> cases = {"ga", "wo"};
  int examples_per_sense = 50;
  int concept_level = 2;       // tree level of the sense concept subtrees
  int concepts_per_sense = 1;  // concept subtrees per (verb, case, sense)
  double confusion = 0.0;      // chance an example's nouns come from another sense
  bool confuse_per_noun = false;  // draw the confusion per slot instead of per example
  std::uint64_t seed = 0;

  /// Throws wsd::Error for out-of-range fields or too few concept subtrees.
  void validate() const;
};

struct SyntheticCorpus {
  Thesaurus thesaurus;
  ExampleSet examples;
};

/// Complete tree of `branching` children per node down to `depth`, one word per
/// leaf (`w<code>`). Verbs are `v0..`, senses `s0..`. Each (verb, case, sense)
/// owns `concepts_per_sense` subtrees at `concept_level`, disjoint from the
/// other senses of that verb and case. Every example fills all cases with
/// uniform leaves of its sense's concepts, or, with probability `confusion`,
/// of one other sense chosen uniformly (once per example, or per slot with
/// `confuse_per_noun`). Example order is shuffled.
SyntheticCorpus generate_synthetic(const SyntheticConfig& cfg);

/// JSON object with any subset of the config fields; absent fields keep defaults.
SyntheticConfig parse_synthetic_config(std::istream& in);
std::string to_json(const SyntheticConfig& cfg);

}  // namespace wsd
