#include "wsd/thesaurus.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>

#include "wsd/error.hpp"

namespace wsd {

int SimTable::lookup(int path_length) {
  if (path_length < 0 || path_length % 2 != 0)
    throw Error("path length must be even and non-negative, got " + std::to_string(path_length));
  std::size_t slot = static_cast<std::size_t>(path_length / 2);
  return slot < kValues.size() ? kValues[slot] : 0;
}

std::string unknown_class(std::string_view word) { return "UNK:" + std::string(word); }

void Thesaurus::add(std::string code, std::string word) {
  if (code.empty()) throw Error("empty thesaurus code");
  if (word.empty()) throw Error("empty thesaurus word");
  if (!std::all_of(code.begin(), code.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error("thesaurus code '" + code + "' is not a digit string");
  if (depth_ == 0) {
    depth_ = static_cast<int>(code.size());
  } else if (static_cast<int>(code.size()) != depth_) {
    throw Error("thesaurus code '" + code + "' has length " + std::to_string(code.size()) +
                ", expected " + std::to_string(depth_));
  }
  auto& codes = index_[word];
  auto pos = std::lower_bound(codes.begin(), codes.end(), code);
  if (pos == codes.end() || *pos != code) codes.insert(pos, code);
  leaves_.emplace(std::move(code), std::move(word));
}

bool Thesaurus::contains(std::string_view word) const {
  return index_.find(std::string(word)) != index_.end();
}

const std::vector<std::string>& Thesaurus::codes(std::string_view word) const {
  static const std::vector<std::string> kNone;
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kNone : it->second;
}

std::vector<std::string> Thesaurus::words_under(std::string_view prefix) const {
  std::vector<std::string> out;
  for (auto it = leaves_.lower_bound({std::string(prefix), std::string()}); it != leaves_.end();
       ++it) {
    if (it->first.compare(0, prefix.size(), prefix) != 0) break;
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> Thesaurus::path_length(std::string_view a, std::string_view b) const {
  const auto& ca = codes(a);
  const auto& cb = codes(b);
  if (ca.empty() || cb.empty()) return std::nullopt;
  int best = std::numeric_limits<int>::max();
  for (const auto& x : ca) {
    for (const auto& y : cb) {
      auto mm = std::mismatch(x.begin(), x.end(), y.begin());
      int common = static_cast<int>(mm.first - x.begin());
      best = std::min(best, 2 * (depth_ - common));
    }
  }
  return best;
}

int Thesaurus::similarity(std::string_view a, std::string_view b) const {
  auto len = path_length(a, b);
  return len ? SimTable::lookup(*len) : 0;
}

std::set<std::string> Thesaurus::generalize(std::string_view word, int level) const {
  if (level < 1 || (depth_ > 0 && level > depth_))
    throw Error("generalization level " + std::to_string(level) + " outside [1, " +
                std::to_string(depth_) + "]");
  const auto& cs = codes(word);
  if (cs.empty()) return {unknown_class(word)};
  std::set<std::string> out;
  for (const auto& c : cs) out.insert(c.substr(0, static_cast<std::size_t>(level)));
  return out;
}

void Thesaurus::write(std::ostream& out) const {
  for (const auto& [code, word] : leaves_) out << code << '\t' << word << '\n';
}

Thesaurus load_thesaurus(std::istream& in) {
  Thesaurus t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw ParseError(lineno, "expected code<TAB>word");
    try {
      t.add(line.substr(0, tab), line.substr(tab + 1));
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return t;
}

}  // namespace wsd
