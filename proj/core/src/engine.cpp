#include "wsd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "wsd/error.hpp"

namespace wsd {

std::string_view to_string(Backend b) { return b == Backend::thesaurus ? "thesaurus" : "vsm"; }

std::string_view to_string(DecisionMode m) {
  return m == DecisionMode::weighted ? "weighted" : "lexicographic";
}

Backend parse_backend(std::string_view s) {
  if (s == "thesaurus") return Backend::thesaurus;
  if (s == "vsm") return Backend::vsm;
  throw Error("unknown similarity backend '" + std::string(s) + "'");
}

DecisionMode parse_decision(std::string_view s) {
  if (s == "weighted") return DecisionMode::weighted;
  if (s == "lexicographic") return DecisionMode::lexicographic;
  throw Error("unknown decision mode '" + std::string(s) + "'");
}

void EngineConfig::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error("alpha must be finite and >= 0");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("lambda must lie in [0, 1]");
  if (smoothing_level < 1) throw Error("smoothing level must be >= 1");
}

double certainty(double top, double second, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("lambda must lie in [0, 1]");
  return lambda * top + (1.0 - lambda) * (top - second);
}

double certainty(const ScoreReport& r, double lambda) {
  return certainty(r.top_score(), r.second_score(), lambda);
}

double weighted_score(std::span<const double> sims, std::span<const double> ccd, double alpha) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < sims.size(); ++i) {
    double w = alpha == 1.0 ? ccd[i] : std::pow(ccd[i], alpha);
    num += sims[i] * w;
    den += w;
  }
  return den > 0.0 ? num / den : 0.0;
}

std::set<std::string> noun_classes(const Thesaurus* classes, std::string_view noun, int level) {
  if (classes == nullptr || classes->depth() == 0) return {unknown_class(noun)};
  return classes->generalize(noun, std::min(level, classes->depth()));
}

double ccd_from_class_sets(std::span<const std::set<std::string>* const> sets, double alpha) {
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i] == nullptr) continue;
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[j] == nullptr) continue;
      const auto& a = *sets[i];
      const auto& b = *sets[j];
      double total = static_cast<double>(a.size() + b.size());
      if (total == 0.0) continue;
      std::size_t shared = 0;
      for (auto ia = a.begin(), ib = b.begin(); ia != a.end() && ib != b.end();) {
        if (*ia < *ib) {
          ++ia;
        } else if (*ib < *ia) {
          ++ib;
        } else {
          ++shared;
          ++ia;
          ++ib;
        }
      }
      sum += (total - 2.0 * static_cast<double>(shared)) / total;
      ++pairs;
    }
  }
  double base = pairs == 0 ? 1.0 : sum / static_cast<double>(pairs);
  return alpha == 1.0 ? base : std::pow(base, alpha);
}

double compute_ccd(const SenseDatabase& db, const Thesaurus* classes, std::string_view verb,
                   std::string_view case_id, double alpha, int smoothing_level) {
  const auto& v = db.verb(verb);
  std::vector<std::set<std::string>> owned;
  owned.reserve(v.senses.size());
  std::vector<const std::set<std::string>*> sets;
  for (const auto& [_, s] : v.senses) {
    if (!s.allows(case_id)) continue;
    auto& cls = owned.emplace_back();
    for (const auto& n : s.fillers_for(case_id)) {
      auto g = noun_classes(classes, n, smoothing_level);
      cls.insert(g.begin(), g.end());
    }
  }
  for (const auto& o : owned) sets.push_back(&o);
  return ccd_from_class_sets(sets, alpha);
}

Decision decide(const DecisionInput& in, const EngineConfig& cfg) {
  const auto& cands = in.candidates;
  if (cands.empty()) throw Error("decision requires at least one candidate sense");
  std::vector<std::size_t> alive(cands.size());
  std::iota(alive.begin(), alive.end(), 0);

  if (cfg.decision == DecisionMode::weighted) {
    std::vector<double> score(cands.size());
    double best = -1.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      score[i] = weighted_score(cands[i].sims, in.ccd, cfg.alpha);
      best = std::max(best, score[i]);
    }
    std::erase_if(alive, [&](std::size_t i) { return score[i] != best; });
  } else {
    std::vector<std::size_t> order(in.cases.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (in.ccd[a] != in.ccd[b]) return in.ccd[a] > in.ccd[b];
      return in.cases[a] < in.cases[b];
    });
    for (std::size_t c : order) {
      if (alive.size() <= 1) break;
      double best = -1.0;
      for (std::size_t i : alive) best = std::max(best, cands[i].sims[c]);
      std::erase_if(alive, [&](std::size_t i) { return cands[i].sims[c] != best; });
    }
  }

  if (alive.size() == 1) return {alive.front(), false};
  // Most frequent sense among the tied ones; candidates are in id order so the
  // first maximum is the lowest id.
  std::size_t pick = alive.front();
  for (std::size_t i : alive)
    if (cands[i].freq > cands[pick].freq) pick = i;
  return {pick, true};
}

std::string most_frequent_sense(const SenseDatabase& db, std::string_view verb) {
  const auto& v = db.verb(verb);
  if (v.senses.empty()) throw Error("verb '" + std::string(verb) + "' has no senses");
  const SenseEntry* best = nullptr;
  for (const auto& [_, s] : v.senses)
    if (best == nullptr || s.freq > best->freq) best = &s;
  return best->id;
}

Engine::Engine(const SenseDatabase& db, const NounSimilarity& sim, const Thesaurus* classes,
               EngineConfig cfg)
    : db_(&db), sim_(&sim), classes_(classes), cfg_(cfg) {
  cfg_.validate();
}

double Engine::case_sim(std::string_view verb, std::string_view sense, std::string_view case_id,
                        std::string_view noun) const {
  const auto& s = db_->sense(verb, sense);
  if (!s.allows(case_id))
    throw Error("case '" + std::string(case_id) + "' is not in the frame of " + std::string(verb) +
                "/" + std::string(sense));
  double best = 0.0;
  for (const auto& e : s.fillers_for(case_id)) best = std::max(best, (*sim_)(noun, e));
  return best;
}

double Engine::ccd(std::string_view verb, std::string_view case_id, double alpha) const {
  double base = 0.0;
  {
    std::lock_guard lock(ccd_mutex_);
    auto key = std::make_pair(std::string(verb), std::string(case_id));
    auto it = ccd_memo_.find(key);
    if (it == ccd_memo_.end())
      it = ccd_memo_.emplace(std::move(key),
                             compute_ccd(*db_, classes_, verb, case_id, 1.0, cfg_.smoothing_level))
               .first;
    base = it->second;
  }
  return alpha == 1.0 ? base : std::pow(base, alpha);
}

double Engine::score(const Example& x, std::string_view sense) const {
  const auto& s = db_->sense(x.verb, sense);
  std::vector<double> sims;
  std::vector<double> weights;
  for (const auto& slot : x.slots) {
    if (!s.allows(slot.case_id)) continue;
    sims.push_back(case_sim(x.verb, sense, slot.case_id, slot.noun));
    weights.push_back(ccd(x.verb, slot.case_id, 1.0));
  }
  return weighted_score(sims, weights);
}

ScoreReport Engine::disambiguate(const Example& x) const {
  const auto& v = db_->verb(x.verb);
  if (v.senses.empty()) throw Error("verb '" + x.verb + "' has no senses");

  ScoreReport r;
  r.verb = x.verb;
  for (const auto& slot : x.slots) {
    r.cases.push_back(slot.case_id);
    r.ccd.push_back(ccd(x.verb, slot.case_id, 1.0));
  }

  std::vector<SenseScore> cands;
  std::vector<std::int64_t> freqs;
  for (const auto& [id, s] : v.senses) {
    bool fits = std::all_of(x.slots.begin(), x.slots.end(),
                            [&](const Slot& slot) { return s.allows(slot.case_id); });
    if (!fits) {
      r.filtered.push_back(id);
      continue;
    }
    SenseScore ss;
    ss.sense = id;
    for (const auto& slot : x.slots) ss.case_sims.push_back(case_sim(x.verb, id, slot.case_id, slot.noun));
    ss.score = weighted_score(ss.case_sims, r.ccd);
    cands.push_back(std::move(ss));
    freqs.push_back(s.freq);
  }

  if (cands.empty()) {
    r.chosen = most_frequent_sense(*db_, x.verb);
    r.tie_broken = true;
  } else {
    std::vector<DecisionInput::Candidate> in;
    for (std::size_t i = 0; i < cands.size(); ++i)
      in.push_back({cands[i].sense, freqs[i], cands[i].case_sims});
    Decision d = decide({r.cases, r.ccd, in}, cfg_);
    r.chosen = cands[d.winner].sense;
    r.tie_broken = d.tie_broken;
  }

  std::stable_sort(cands.begin(), cands.end(),
                   [](const SenseScore& a, const SenseScore& b) { return a.score > b.score; });
  r.senses = std::move(cands);
  r.certainty = certainty(r, cfg_.lambda);
  return r;
}

std::string to_json(const ScoreReport& r) {
  nlohmann::json j;
  j["verb"] = r.verb;
  j["cases"] = r.cases;
  j["ccd"] = r.ccd;
  j["senses"] = nlohmann::json::array();
  for (const auto& s : r.senses)
    j["senses"].push_back({{"sense", s.sense}, {"score", s.score}, {"case_sims", s.case_sims}});
  j["filtered"] = r.filtered;
  j["chosen"] = r.chosen;
  j["tie_broken"] = r.tie_broken;
  j["certainty"] = r.certainty;
  return j.dump();
}

}  // namespace wsd
