#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wsd {

/// One case slot of a simple sentence: the case marker and the noun filling it.
struct Slot {
  std::string case_id;
  std::string noun;

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// A simple sentence: a verb plus its case-marked noun complements.
struct Example {
  std::string id;
  std::string verb;
  std::vector<Slot> slots;
  std::optional<std::string> gold_sense;

  const Slot* find(std::string_view case_id) const;

  friend bool operator==(const Example&, const Example&) = default;
};

/// Ordered collection of examples with unique ids.
class ExampleSet {
 public:
  ExampleSet() = default;

  /// Throws wsd::Error on a duplicate id, an empty slot list, or a repeated case.
  void add(Example e);

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Example& operator[](std::size_t i) const { return items_[i]; }
  const Example* find(std::string_view id) const;

  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  const std::vector<Example>& items() const noexcept { return items_; }

  friend bool operator==(const ExampleSet& a, const ExampleSet& b) { return a.items_ == b.items_; }

 private:
  std::vector<Example> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Checks the per-example invariants (non-empty slots, one slot per case).
void validate_example(const Example& e);

/// Reads one JSON object per line: {"id","verb","slots":[{"case","noun"}],"gold_sense"?}.
/// Blank lines are skipped. Errors carry the offending line number.
ExampleSet parse_corpus(std::istream& in);
void write_corpus(std::ostream& out, const ExampleSet& set);
std::string example_to_json(const Example& e);

struct Tuple {
  std::string noun;
  std::string case_id;
  std::string verb;

  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

/// (noun, case, verb) -> frequency; every stored frequency is >= 1.
using TupleCounts = std::map<Tuple, std::int64_t>;

struct CooccurrenceResult {
  TupleCounts counts;
  std::size_t pairs = 0;    // (noun, case) pairs seen
  std::size_t skipped = 0;  // pairs with no following verb
};

/// Attaches each noun+case pair to the nearest following verb. Tokens are
/// whitespace separated `N:surface`, `C:marker`, `V:lemma`.
CooccurrenceResult extract_cooccurrence(std::istream& tagged);
CooccurrenceResult extract_cooccurrence(std::string_view tagged);

/// `noun<TAB>case<TAB>verb<TAB>freq` lines. Repeated tuples are summed.
TupleCounts read_tuples(std::istream& in);
void write_tuples(std::ostream& out, const TupleCounts& counts);

/// Deterministic shuffled partition into k folds whose sizes differ by at most one.
std::vector<ExampleSet> split_folds(const ExampleSet& s, int k, std::uint64_t seed);

/// Everything outside `held_out` of `folds`, in fold order.
ExampleSet merge_folds_except(const std::vector<ExampleSet>& folds, std::size_t held_out);

}  // namespace wsd
