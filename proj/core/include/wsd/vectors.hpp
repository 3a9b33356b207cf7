#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wsd/corpus.hpp"

namespace wsd {

/// Per-noun TF·IDF vectors over (case, verb) contexts:
///   weight(n, <c,v>) = f(n,c,v) * ln(N / nf(c,v))
/// with N the number of distinct nouns and nf the number of distinct nouns
/// seen in the context.
class VectorTable {
 public:
  using Entry = std::pair<std::uint32_t, double>;  // (context id, weight), sorted by id

  /// Throws wsd::Error on empty input.
  static VectorTable build(const TupleCounts& counts);

  std::size_t noun_types() const noexcept { return noun_types_; }
  std::size_t context_count() const noexcept { return contexts_.size(); }
  /// Context key as `case:verb`.
  const std::string& context_name(std::uint32_t id) const { return contexts_[id]; }
  std::int64_t noun_frequency(std::string_view case_id, std::string_view verb) const;

  bool contains(std::string_view noun) const;
  double weight(std::string_view noun, std::string_view case_id, std::string_view verb) const;
  double norm(std::string_view noun) const;

  /// Cosine of the angle between two noun vectors, in [0, 1]. Unknown or
  /// zero-norm vectors give 0.
  double cosine(std::string_view a, std::string_view b) const;

  /// `noun<TAB>case:verb<TAB>weight` lines, nouns and contexts sorted.
  void write(std::ostream& out) const;

 private:
  struct Vec {
    std::vector<Entry> entries;
    double norm = 0.0;
  };

  const Vec* find(std::string_view noun) const;

  std::size_t noun_types_ = 0;
  std::vector<std::string> contexts_;
  std::unordered_map<std::string, std::uint32_t> context_ids_;
  std::vector<std::int64_t> nf_;
  std::unordered_map<std::string, Vec> vectors_;
};

std::string context_key(std::string_view case_id, std::string_view verb);

}  // namespace wsd
