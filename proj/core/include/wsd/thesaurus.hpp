#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wsd {

/// Path-length -> similarity map over a uniform-depth code tree.
/// Keys are the even lengths 0..12; values strictly decrease.
struct SimTable {
  static constexpr int kMax = 11;
  static constexpr std::array<int, 7> kValues = {11, 10, 9, 8, 7, 5, 0};

  /// Similarity for an even path length. Lengths beyond 12 (only possible in
  /// trees deeper than six levels below the root) map to 0.
  static int lookup(int path_length);
};

/// Fixed-depth coded tree. A node's code is its parent's code plus one digit;
/// words live at leaves, and a word may sit under several leaves.
class Thesaurus {
 public:
  Thesaurus() = default;

  /// Adds `word` under leaf `code`. The first insertion fixes the depth; codes
  /// of a different length, or containing non-digits, are rejected.
  void add(std::string code, std::string word);

  int depth() const noexcept { return depth_; }
  bool contains(std::string_view word) const;
  /// Sorted, unique leaf codes of `word`; empty when unknown.
  const std::vector<std::string>& codes(std::string_view word) const;
  std::size_t word_count() const noexcept { return index_.size(); }
  std::size_t leaf_count() const noexcept { return leaves_.size(); }
  /// Words stored under `code`'s subtree (code may be any prefix).
  std::vector<std::string> words_under(std::string_view prefix) const;

  /// Minimum over code pairs of 2 * (depth - common prefix); nullopt when
  /// either word is unknown.
  std::optional<int> path_length(std::string_view a, std::string_view b) const;
  /// Table lookup on path_length, 0 for unknown words. Range {0,5,7,...,11}.
  int similarity(std::string_view a, std::string_view b) const;
  /// Code prefixes of length `level`; `UNK:<word>` for unknown words.
  std::set<std::string> generalize(std::string_view word, int level) const;

  void write(std::ostream& out) const;

 private:
  int depth_ = 0;
  std::unordered_map<std::string, std::vector<std::string>> index_;
  std::set<std::pair<std::string, std::string>> leaves_;  // (code, word), sorted for output
};

/// Reads `code<TAB>word` lines. Mixed code lengths are a ParseError.
Thesaurus load_thesaurus(std::istream& in);

std::string unknown_class(std::string_view word);

}  // namespace wsd
