#include "wsd/database.hpp"

#include <cctype>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "wsd/error.hpp"

namespace wsd {

using nlohmann::json;

const std::vector<std::string>& SenseEntry::fillers_for(std::string_view case_id) const {
  static const std::vector<std::string> kNone;
  auto it = fillers.find(std::string(case_id));
  return it == fillers.end() ? kNone : it->second;
}

void SenseDatabase::declare_sense(std::string_view verb, std::string_view sense) {
  if (verb.empty() || sense.empty()) throw Error("empty verb or sense id");
  auto& v = verbs_[std::string(verb)];
  auto [it, inserted] = v.senses.try_emplace(std::string(sense));
  if (inserted) it->second.id = std::string(sense);
}

void SenseDatabase::add_fillers(std::string_view verb, std::string_view sense,
                                std::string_view case_id, const std::vector<std::string>& nouns) {
  if (nouns.empty())
    throw Error("empty noun list for " + std::string(verb) + "/" + std::string(sense) + "/" +
                std::string(case_id));
  if (case_id.empty()) throw Error("empty case id");
  declare_sense(verb, sense);
  auto& entry = verbs_.find(verb)->second.senses.find(std::string(sense))->second;
  entry.frame.insert(std::string(case_id));
  auto& dst = entry.fillers[std::string(case_id)];
  dst.insert(dst.end(), nouns.begin(), nouns.end());
}

void SenseDatabase::commit(const Example& e, std::string_view sense) {
  auto v = verbs_.find(e.verb);
  if (v == verbs_.end()) throw Error("unknown verb '" + e.verb + "'");
  auto s = v->second.senses.find(std::string(sense));
  if (s == v->second.senses.end())
    throw Error("'" + std::string(sense) + "' is not a sense of '" + e.verb + "'");
  for (const auto& slot : e.slots) {
    s->second.frame.insert(slot.case_id);
    s->second.fillers[slot.case_id].push_back(slot.noun);
  }
  ++s->second.freq;
}

void SenseDatabase::declare_case(std::string_view verb, std::string_view sense,
                                 std::string_view case_id) {
  if (case_id.empty()) throw Error("empty case id");
  declare_sense(verb, sense);
  verbs_.find(verb)->second.senses.find(std::string(sense))->second.frame.insert(std::string(case_id));
}

void SenseDatabase::set_frequency(std::string_view verb, std::string_view sense, std::int64_t freq) {
  if (freq < 0) throw Error("negative sense frequency");
  declare_sense(verb, sense);
  verbs_.find(verb)->second.senses.find(std::string(sense))->second.freq = freq;
}

bool SenseDatabase::has_verb(std::string_view verb) const { return verbs_.find(verb) != verbs_.end(); }

bool SenseDatabase::has_sense(std::string_view verb, std::string_view sense) const {
  auto v = verbs_.find(verb);
  return v != verbs_.end() && v->second.senses.contains(std::string(sense));
}

const VerbEntry* SenseDatabase::find_verb(std::string_view verb) const {
  auto it = verbs_.find(verb);
  return it == verbs_.end() ? nullptr : &it->second;
}

const VerbEntry& SenseDatabase::verb(std::string_view verb) const {
  const VerbEntry* v = find_verb(verb);
  if (v == nullptr) throw Error("unknown verb '" + std::string(verb) + "'");
  return *v;
}

const SenseEntry& SenseDatabase::sense(std::string_view verb, std::string_view sense) const {
  const auto& v = this->verb(verb);
  auto it = v.senses.find(std::string(sense));
  if (it == v.senses.end())
    throw Error("'" + std::string(sense) + "' is not a sense of '" + std::string(verb) + "'");
  return it->second;
}

std::vector<std::string> SenseDatabase::verbs() const {
  std::vector<std::string> out;
  for (const auto& [v, _] : verbs_) out.push_back(v);
  return out;
}

std::vector<std::string> SenseDatabase::senses(std::string_view verb) const {
  std::vector<std::string> out;
  for (const auto& [s, _] : this->verb(verb).senses) out.push_back(s);
  return out;
}

std::int64_t SenseDatabase::supervised_count() const {
  std::int64_t n = 0;
  for (const auto& [_, v] : verbs_)
    for (const auto& [__, s] : v.senses) n += s.freq;
  return n;
}

bool operator==(const SenseDatabase& a, const SenseDatabase& b) {
  if (a.verbs_.size() != b.verbs_.size()) return false;
  for (auto i = a.verbs_.begin(), j = b.verbs_.begin(); i != a.verbs_.end(); ++i, ++j) {
    if (i->first != j->first || i->second.senses.size() != j->second.senses.size()) return false;
    for (auto p = i->second.senses.begin(), q = j->second.senses.begin();
         p != i->second.senses.end(); ++p, ++q) {
      if (p->first != q->first || p->second.frame != q->second.frame ||
          p->second.fillers != q->second.fillers || p->second.freq != q->second.freq)
        return false;
    }
  }
  return true;
}

SenseDatabase parse_seed_database(std::istream& in) {
  SenseDatabase db;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool blank = true;
    for (unsigned char c : line) blank = blank && std::isspace(c);
    if (blank) continue;
    try {
      json j = json::parse(line);
      if (!j.is_object()) throw Error("record is not a JSON object");
      auto nouns = j.at("nouns");
      if (!nouns.is_array()) throw Error("'nouns' must be an array");
      std::vector<std::string> list;
      for (const auto& n : nouns) list.push_back(n.get<std::string>());
      db.add_fillers(j.at("verb").get<std::string>(), j.at("sense").get<std::string>(),
                     j.at("case").get<std::string>(), list);
    } catch (const json::exception& e) {
      throw ParseError(lineno, std::string("malformed seed record: ") + e.what());
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return db;
}

void write_seed_database(std::ostream& out, const SenseDatabase& db) {
  for (const auto& [verb, v] : db.entries()) {
    for (const auto& [sense, s] : v.senses) {
      for (const auto& [case_id, nouns] : s.fillers) {
        if (nouns.empty()) continue;
        json j{{"verb", verb}, {"sense", sense}, {"case", case_id}, {"nouns", nouns}};
        out << j.dump() << '\n';
      }
    }
  }
}

std::map<std::string, std::set<std::string>> sense_inventory(const ExampleSet& set) {
  std::map<std::string, std::set<std::string>> inv;
  for (const auto& e : set) {
    if (!e.gold_sense) throw Error("example '" + e.id + "' has no gold sense");
    inv[e.verb].insert(*e.gold_sense);
  }
  return inv;
}

SenseDatabase database_from_labeled(const ExampleSet& set) {
  SenseDatabase db;
  for (const auto& [verb, senses] : sense_inventory(set))
    for (const auto& s : senses) db.declare_sense(verb, s);
  for (const auto& e : set) db.commit(e, *e.gold_sense);
  return db;
}

}  // namespace wsd
