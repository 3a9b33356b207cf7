#include "wsd/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wsd/error.hpp"
#include "wsd/random.hpp"

namespace wsd {

using nlohmann::json;

const Slot* Example::find(std::string_view case_id) const {
  for (const auto& s : slots)
    if (s.case_id == case_id) return &s;
  return nullptr;
}

void validate_example(const Example& e) {
  if (e.id.empty()) throw Error("example with empty id");
  if (e.verb.empty()) throw Error("example '" + e.id + "' has an empty verb");
  if (e.slots.empty()) throw Error("example '" + e.id + "' has no slots");
  std::set<std::string_view> seen;
  for (const auto& s : e.slots) {
    if (s.case_id.empty() || s.noun.empty())
      throw Error("example '" + e.id + "' has an empty case or noun");
    if (!seen.insert(s.case_id).second)
      throw Error("example '" + e.id + "' repeats case '" + s.case_id + "'");
  }
}

void ExampleSet::add(Example e) {
  validate_example(e);
  if (index_.contains(e.id)) throw Error("duplicate example id '" + e.id + "'");
  index_.emplace(e.id, items_.size());
  items_.push_back(std::move(e));
}

const Example* ExampleSet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

namespace {

std::string required_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw Error(std::string("missing or non-string field '") + key + "'");
  return it->get<std::string>();
}

Example example_from_json(const json& j) {
  if (!j.is_object()) throw Error("record is not a JSON object");
  Example e;
  e.id = required_string(j, "id");
  e.verb = required_string(j, "verb");
  auto slots = j.find("slots");
  if (slots == j.end() || !slots->is_array()) throw Error("missing 'slots' array");
  for (const auto& s : *slots) {
    if (!s.is_object()) throw Error("slot is not an object");
    e.slots.push_back({required_string(s, "case"), required_string(s, "noun")});
  }
  if (auto g = j.find("gold_sense"); g != j.end() && !g->is_null()) {
    if (!g->is_string()) throw Error("'gold_sense' must be a string");
    e.gold_sense = g->get<std::string>();
  }
  return e;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

ExampleSet parse_corpus(std::istream& in) {
  ExampleSet out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    try {
      out.add(example_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(lineno, std::string("malformed JSON: ") + e.what());
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return out;
}

std::string example_to_json(const Example& e) {
  json j;
  j["id"] = e.id;
  j["verb"] = e.verb;
  j["slots"] = json::array();
  for (const auto& s : e.slots) j["slots"].push_back({{"case", s.case_id}, {"noun", s.noun}});
  if (e.gold_sense) j["gold_sense"] = *e.gold_sense;
  return j.dump();
}

void write_corpus(std::ostream& out, const ExampleSet& set) {
  for (const auto& e : set) out << example_to_json(e) << '\n';
}

CooccurrenceResult extract_cooccurrence(std::istream& tagged) {
  CooccurrenceResult r;
  std::vector<std::pair<std::string, std::string>> pending;  // (noun, case) awaiting a verb
  std::optional<std::string> noun;                          // noun awaiting its marker
  std::string tok;
  std::size_t index = 0;
  while (tagged >> tok) {
    ++index;
    if (tok.size() < 3 || tok[1] != ':')
      throw ParseError(0, "malformed token #" + std::to_string(index) + " '" + tok + "'");
    std::string body = tok.substr(2);
    switch (tok[0]) {
      case 'N':
        noun = std::move(body);
        break;
      case 'C':
        if (noun) {
          pending.emplace_back(std::move(*noun), std::move(body));
          ++r.pairs;
        }
        noun.reset();
        break;
      case 'V':
        for (auto& [n, c] : pending) ++r.counts[Tuple{n, c, body}];
        pending.clear();
        noun.reset();
        break;
      default:
        throw ParseError(0, "unknown tag in token #" + std::to_string(index) + " '" + tok + "'");
    }
  }
  r.skipped = pending.size();
  return r;
}

CooccurrenceResult extract_cooccurrence(std::string_view tagged) {
  std::istringstream in{std::string(tagged)};
  return extract_cooccurrence(in);
}

TupleCounts read_tuples(std::istream& in) {
  TupleCounts counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 4) throw ParseError(lineno, "expected 4 tab-separated fields");
    std::int64_t freq = 0;
    try {
      std::size_t used = 0;
      freq = std::stoll(fields[3], &used);
      if (used != fields[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad frequency '" + fields[3] + "'");
    }
    if (freq < 1) throw ParseError(lineno, "frequency must be >= 1");
    if (fields[0].empty() || fields[1].empty() || fields[2].empty())
      throw ParseError(lineno, "empty noun, case or verb");
    counts[Tuple{fields[0], fields[1], fields[2]}] += freq;
  }
  return counts;
}

void write_tuples(std::ostream& out, const TupleCounts& counts) {
  for (const auto& [t, f] : counts)
    out << t.noun << '\t' << t.case_id << '\t' << t.verb << '\t' << f << '\n';
}

std::vector<ExampleSet> split_folds(const ExampleSet& s, int k, std::uint64_t seed) {
  if (k < 2) throw Error("fold count must be >= 2");
  if (static_cast<std::size_t>(k) > s.size())
    throw Error("cannot split " + std::to_string(s.size()) + " examples into " +
                std::to_string(k) + " folds");
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  shuffle_in_place(order, rng);
  // Fold f receives shuffled positions f, f+k, ...; each fold keeps input order.
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < order.size(); ++i) members[i % k].push_back(order[i]);
  std::vector<ExampleSet> folds(static_cast<std::size_t>(k));
  for (std::size_t f = 0; f < members.size(); ++f) {
    std::sort(members[f].begin(), members[f].end());
    for (auto idx : members[f]) folds[f].add(s[idx]);
  }
  return folds;
}

ExampleSet merge_folds_except(const std::vector<ExampleSet>& folds, std::size_t held_out) {
  ExampleSet out;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (f == held_out) continue;
    for (const auto& e : folds[f]) out.add(e);
  }
  return out;
}

}  // namespace wsd
