#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wsd/corpus.hpp"

namespace wsd {

/// One verb sense: its case frame and the stored case-filler examples.
struct SenseEntry {
  std::string id;
  std::set<std::string> frame;                                // subcategorized cases
  std::map<std::string, std::vector<std::string>> fillers;    // case -> noun multiset
  std::int64_t freq = 0;                                      // supervised examples stored

  bool allows(std::string_view case_id) const { return frame.find(std::string(case_id)) != frame.end(); }
  const std::vector<std::string>& fillers_for(std::string_view case_id) const;
};

struct VerbEntry {
  std::map<std::string, SenseEntry> senses;  // ordered by sense id
};

/// The supervised example store: verb -> sense -> case -> nouns.
class SenseDatabase {
 public:
  /// Registers a sense with an empty frame (no-op when it exists).
  void declare_sense(std::string_view verb, std::string_view sense);
  /// Seed entry: declares `case_id` in the sense's frame and appends nouns.
  /// Does not touch the sense frequency.
  void add_fillers(std::string_view verb, std::string_view sense, std::string_view case_id,
                   const std::vector<std::string>& nouns);
  /// Stores a supervised example: appends its fillers under `sense`, extends the
  /// frame with its cases and increments the sense frequency. The sense must be
  /// declared for the example's verb.
  void commit(const Example& e, std::string_view sense);
  /// Adds `case_id` to a declared sense's frame without fillers.
  void declare_case(std::string_view verb, std::string_view sense, std::string_view case_id);
  void set_frequency(std::string_view verb, std::string_view sense, std::int64_t freq);

  bool has_verb(std::string_view verb) const;
  bool has_sense(std::string_view verb, std::string_view sense) const;
  const VerbEntry& verb(std::string_view verb) const;  // throws on unknown verb
  const VerbEntry* find_verb(std::string_view verb) const;
  const SenseEntry& sense(std::string_view verb, std::string_view sense) const;
  std::vector<std::string> verbs() const;
  std::vector<std::string> senses(std::string_view verb) const;
  /// Total stored supervised examples (sum of sense frequencies).
  std::int64_t supervised_count() const;

  const std::map<std::string, VerbEntry, std::less<>>& entries() const noexcept { return verbs_; }

  friend bool operator==(const SenseDatabase& a, const SenseDatabase& b);

 private:
  std::map<std::string, VerbEntry, std::less<>> verbs_;
};

/// Reads `{"verb","sense","case","nouns":[...]}` records, one per line.
/// An empty noun list is an error; cases never mentioned for a sense are not in
/// its frame.
SenseDatabase parse_seed_database(std::istream& in);
void write_seed_database(std::ostream& out, const SenseDatabase& db);

/// Database holding every example of `set` under its gold sense.
SenseDatabase database_from_labeled(const ExampleSet& set);

/// Gold sense inventory of `set`, per verb. Throws when an example has no gold.
std::map<std::string, std::set<std::string>> sense_inventory(const ExampleSet& set);

}  // namespace wsd
