#include "wsd/baselines.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "wsd/engine.hpp"
#include "wsd/error.hpp"

namespace wsd {

namespace {

// All node codes dominating some leaf of `noun`, levels 1..depth.
std::set<std::string> dominating_classes(const Thesaurus& t, std::string_view noun) {
  std::set<std::string> out;
  for (const auto& code : t.codes(noun))
    for (std::size_t len = 1; len <= code.size(); ++len) out.insert(code.substr(0, len));
  return out;
}

bool dominated(const Thesaurus& t, std::string_view noun, const std::map<std::string, double>& classes) {
  for (const auto& code : t.codes(noun))
    for (std::size_t len = 1; len <= code.size(); ++len)
      if (classes.contains(code.substr(0, len))) return true;
  return false;
}

}  // namespace

std::size_t RuleSet::class_count() const {
  std::size_t n = 0;
  for (const auto& [_, m] : rules) n += m.size();
  return n;
}

const std::map<std::string, double>* RuleSet::find(std::string_view verb, std::string_view sense,
                                                   std::string_view case_id) const {
  auto it = rules.find({std::string(verb), std::string(sense), std::string(case_id)});
  return it == rules.end() ? nullptr : &it->second;
}

double association(double p_sc, double p_c) {
  if (p_sc <= 0.0) return 0.0;
  return p_sc * std::log(p_sc / p_c);
}

RuleSet induce_rules(const SenseDatabase& db, const Thesaurus& thesaurus, double theta) {
  if (std::isnan(theta)) throw Error("theta must not be NaN");
  RuleSet out;
  out.theta = theta;
  for (const auto& [verb, v] : db.entries()) {
    // case -> class -> token count over all senses, and case -> total tokens
    std::map<std::string, std::map<std::string, double>> case_counts;
    std::map<std::string, double> case_totals;
    std::map<std::pair<std::string, std::string>, std::map<std::string, double>> sense_counts;
    std::map<std::pair<std::string, std::string>, double> sense_totals;
    for (const auto& [sid, s] : v.senses) {
      for (const auto& [c, nouns] : s.fillers) {
        for (const auto& n : nouns) {
          case_totals[c] += 1.0;
          sense_totals[{sid, c}] += 1.0;
          for (const auto& r : dominating_classes(thesaurus, n)) {
            case_counts[c][r] += 1.0;
            sense_counts[{sid, c}][r] += 1.0;
          }
        }
      }
    }
    for (const auto& [key, counts] : sense_counts) {
      const auto& [sid, c] = key;
      const double n_sc = sense_totals[key];
      const double n_c = case_totals[c];
      for (const auto& [r, k] : counts) {
        double a = association(k / n_sc, case_counts[c][r] / n_c);
        if (a >= theta) out.rules[{verb, sid, c}][r] = a;
      }
    }
  }
  return out;
}

std::string rule_based_disambiguate(const RuleSet& rules, const SenseDatabase& db,
                                    const Thesaurus& thesaurus, const Example& x) {
  const auto& v = db.verb(x.verb);
  const std::string* survivor = nullptr;
  int survivors = 0;
  for (const auto& [sid, _] : v.senses) {
    bool ok = true;
    for (const auto& slot : x.slots) {
      const auto* classes = rules.find(x.verb, sid, slot.case_id);
      if (classes == nullptr || !dominated(thesaurus, slot.noun, *classes)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      survivor = &sid;
      ++survivors;
    }
  }
  if (survivors == 1) return *survivor;
  return most_frequent_sense(db, x.verb);
}

double tune_theta(const SenseDatabase& train, const Thesaurus& thesaurus,
                  const ExampleSet& validation, const std::vector<double>& grid) {
  if (grid.empty()) throw Error("empty theta grid");
  double best_theta = grid.front();
  double best = -1.0;
  for (double theta : grid) {
    RuleSet rules = induce_rules(train, thesaurus, theta);
    std::size_t correct = 0;
    std::size_t total = 0;
    for (const auto& e : validation) {
      if (!e.gold_sense || !train.has_verb(e.verb) || train.verb(e.verb).senses.empty()) continue;
      ++total;
      correct += rule_based_disambiguate(rules, train, thesaurus, e) == *e.gold_sense;
    }
    double acc = total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
    if (acc > best || (acc == best && theta < best_theta)) {
      best = acc;
      best_theta = theta;
    }
  }
  return best_theta;
}

// ---------------------------------------------------------------------------

double NbModel::likelihood(std::string_view verb, std::string_view sense, std::string_view case_id,
                           std::string_view cls) const {
  auto v = verbs.find(std::string(verb));
  if (v == verbs.end()) throw Error("unknown verb '" + std::string(verb) + "'");
  auto s = v->second.senses.find(std::string(sense));
  if (s == v->second.senses.end())
    throw Error("'" + std::string(sense) + "' is not a sense of '" + std::string(verb) + "'");
  auto voc = v->second.vocabulary.find(std::string(case_id));
  const double vsize = voc == v->second.vocabulary.end() ? 0.0 : static_cast<double>(voc->second.size());
  double count = 0.0;
  double total = 0.0;
  auto t = s->second.cases.find(std::string(case_id));
  if (t != s->second.cases.end()) {
    total = t->second.total;
    auto c = t->second.counts.find(std::string(cls));
    if (c != t->second.counts.end()) count = c->second;
  }
  return (count + pseudo) / (total + pseudo * (vsize + 1.0));
}

NbModel nb_train(const SenseDatabase& db, const Thesaurus* thesaurus, int level, double pseudo) {
  if (level < 1) throw Error("level must be >= 1");
  if (!(pseudo > 0.0)) throw Error("pseudo count must be > 0");
  NbModel m;
  m.level = level;
  m.pseudo = pseudo;
  m.thesaurus = thesaurus;
  for (const auto& [verb, v] : db.entries()) {
    auto& vm = m.verbs[verb];
    std::int64_t total = 0;
    for (const auto& [sid, s] : v.senses) total += s.freq;
    for (const auto& [sid, s] : v.senses) {
      auto& sm = vm.senses[sid];
      sm.freq = s.freq;
      sm.prior = total > 0 ? static_cast<double>(s.freq) / static_cast<double>(total)
                           : 1.0 / static_cast<double>(v.senses.size());
      for (const auto& [c, nouns] : s.fillers) {
        auto& table = sm.cases[c];
        for (const auto& n : nouns) {
          auto classes = noun_classes(thesaurus, n, level);
          const double w = 1.0 / static_cast<double>(classes.size());
          for (const auto& cls : classes) {
            table.counts[cls] += w;
            vm.vocabulary[c].insert(cls);
          }
          table.total += 1.0;
        }
      }
    }
  }
  return m;
}

namespace {

std::vector<std::pair<std::string, double>> nb_log_scores(const NbModel& m, const Example& x) {
  auto v = m.verbs.find(x.verb);
  if (v == m.verbs.end() || v->second.senses.empty())
    throw Error("unknown verb '" + x.verb + "'");
  std::vector<std::pair<std::string, double>> out;
  for (const auto& [sid, sm] : v->second.senses) {
    double lp = sm.prior > 0.0 ? std::log(sm.prior) : -std::numeric_limits<double>::infinity();
    for (const auto& slot : x.slots) {
      auto classes = noun_classes(m.thesaurus, slot.noun, m.level);
      double p = 0.0;
      for (const auto& cls : classes) p += m.likelihood(x.verb, sid, slot.case_id, cls);
      lp += std::log(p / static_cast<double>(classes.size()));
    }
    out.emplace_back(sid, lp);
  }
  return out;
}

}  // namespace

std::map<std::string, double> nb_posterior(const NbModel& m, const Example& x) {
  auto scores = nb_log_scores(m, x);
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [_, lp] : scores) top = std::max(top, lp);
  std::map<std::string, double> out;
  double z = 0.0;
  for (const auto& [sid, lp] : scores) z += out[sid] = std::exp(lp - top);
  for (auto& [_, p] : out) p /= z;
  return out;
}

std::string nb_disambiguate(const NbModel& m, const Example& x) {
  auto scores = nb_log_scores(m, x);
  const auto& senses = m.verbs.at(x.verb).senses;
  const std::pair<std::string, double>* best = nullptr;
  for (const auto& s : scores) {
    if (best == nullptr || s.second > best->second ||
        (s.second == best->second && senses.at(s.first).freq > senses.at(best->first).freq))
      best = &s;
  }
  return best->first;
}

std::string to_json(const RuleSet& r) {
  nlohmann::json j;
  j["theta"] = r.theta;
  j["rules"] = nlohmann::json::array();
  for (const auto& [key, classes] : r.rules) {
    const auto& [verb, sense, c] = key;
    j["rules"].push_back({{"verb", verb}, {"sense", sense}, {"case", c}, {"classes", classes}});
  }
  return j.dump();
}

std::string to_json(const NbModel& m) {
  nlohmann::json j;
  j["level"] = m.level;
  j["pseudo"] = m.pseudo;
  j["verbs"] = nlohmann::json::object();
  for (const auto& [verb, vm] : m.verbs) {
    nlohmann::json senses = nlohmann::json::object();
    for (const auto& [sid, sm] : vm.senses) {
      nlohmann::json cases = nlohmann::json::object();
      for (const auto& [c, t] : sm.cases) cases[c] = {{"total", t.total}, {"counts", t.counts}};
      senses[sid] = {{"prior", sm.prior}, {"cases", cases}};
    }
    j["verbs"][verb] = {{"senses", senses}, {"vocabulary", vm.vocabulary}};
  }
  return j.dump();
}

}  // namespace wsd
