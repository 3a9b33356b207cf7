#include "wsd/synthetic.hpp"

#include <cmath>
#include <istream>

#include "json.hpp"
#include "wsd/error.hpp"
#include "wsd/random.hpp"

namespace wsd {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Code of the i-th node (in lexicographic order) at `level`.
std::string node_code(std::size_t i, int branching, int level) {
  std::string code(static_cast<std::size_t>(level), '1');
  for (int p = level - 1; p >= 0; --p) {
    code[static_cast<std::size_t>(p)] = static_cast<char>('1' + i % static_cast<std::size_t>(branching));
    i /= static_cast<std::size_t>(branching);
  }
  return code;
}

}  // namespace

void SyntheticConfig::validate() const {
  if (branching < 2 || branching > 9) throw Error("branching must lie in [2, 9]");
  if (depth < 1 || depth > 12) throw Error("depth must lie in [1, 12]");
  if (num_verbs < 1) throw Error("num_verbs must be >= 1");
  if (num_senses < 2) throw Error("num_senses must be >= 2");
  if (cases.empty()) throw Error("at least one case is required");
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (cases[i].empty()) throw Error("empty case id");
    for (std::size_t j = 0; j < i; ++j)
      if (cases[i] == cases[j]) throw Error("repeated case '" + cases[i] + "'");
  }
  if (examples_per_sense < 1) throw Error("examples_per_sense must be >= 1");
  if (concept_level < 1 || concept_level > depth) throw Error("concept_level must lie in [1, depth]");
  if (concepts_per_sense < 1) throw Error("concepts_per_sense must be >= 1");
  if (!(confusion >= 0.0 && confusion <= 1.0)) throw Error("confusion must lie in [0, 1]");
  const auto available = ipow(static_cast<std::size_t>(branching), concept_level);
  const auto needed = static_cast<std::size_t>(num_senses) * static_cast<std::size_t>(concepts_per_sense);
  if (available < needed)
    throw Error("only " + std::to_string(available) + " owner subtrees at level " +
                std::to_string(concept_level) + ", need " + std::to_string(needed));
}

SyntheticCorpus generate_synthetic(const SyntheticConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  SyntheticCorpus out;

  const std::size_t leaves = ipow(static_cast<std::size_t>(cfg.branching), cfg.depth);
  for (std::size_t i = 0; i < leaves; ++i) {
    auto code = node_code(i, cfg.branching, cfg.depth);
    out.thesaurus.add(code, "w" + code);
  }

  const std::size_t subtrees = ipow(static_cast<std::size_t>(cfg.branching), cfg.concept_level);
  const std::size_t below = leaves / subtrees;
  const auto senses = static_cast<std::size_t>(cfg.num_senses);
  const auto per = static_cast<std::size_t>(cfg.concepts_per_sense);

  std::vector<Example> all;
  for (int v = 0; v < cfg.num_verbs; ++v) {
    // owner[case][sense] -> subtree indices
    std::vector<std::vector<std::vector<std::size_t>>> owner(cfg.cases.size());
    for (auto& per_case : owner) {
      std::vector<std::size_t> order(subtrees);
      for (std::size_t i = 0; i < subtrees; ++i) order[i] = i;
      shuffle_in_place(order, rng);
      per_case.resize(senses);
      for (std::size_t s = 0; s < senses; ++s)
        per_case[s].assign(order.begin() + static_cast<std::ptrdiff_t>(s * per),
                           order.begin() + static_cast<std::ptrdiff_t>((s + 1) * per));
    }

    const std::string verb = "v" + std::to_string(v);
    std::size_t n = 0;
    for (std::size_t s = 0; s < senses; ++s) {
      for (int e = 0; e < cfg.examples_per_sense; ++e) {
        auto draw_source = [&] {
          std::size_t src = s;
          if (cfg.confusion > 0.0 && uniform_unit(rng) < cfg.confusion) {
            src = uniform_index(rng, senses - 1);
            if (src >= s) ++src;
          }
          return src;
        };
        std::size_t src = cfg.confuse_per_noun ? s : draw_source();
        Example ex;
        ex.id = verb + "-" + std::to_string(n++);
        ex.verb = verb;
        ex.gold_sense = "s" + std::to_string(s);
        for (std::size_t c = 0; c < cfg.cases.size(); ++c) {
          const auto& owned = owner[c][cfg.confuse_per_noun ? draw_source() : src];
          std::size_t tree = owned[uniform_index(rng, owned.size())];
          std::size_t leaf = tree * below + uniform_index(rng, below);
          ex.slots.push_back({cfg.cases[c], "w" + node_code(leaf, cfg.branching, cfg.depth)});
        }
        all.push_back(std::move(ex));
      }
    }
  }
  shuffle_in_place(all, rng);
  for (auto& e : all) out.examples.add(std::move(e));
  return out;
}

SyntheticConfig parse_synthetic_config(std::istream& in) {
  SyntheticConfig cfg;
  nlohmann::json j;
  try {
    in >> j;
    if (!j.is_object()) throw Error("synthetic config must be a JSON object");
    cfg.branching = j.value("branching", cfg.branching);
    cfg.depth = j.value("depth", cfg.depth);
    cfg.num_verbs = j.value("num_verbs", cfg.num_verbs);
    cfg.num_senses = j.value("num_senses", cfg.num_senses);
    cfg.cases = j.value("cases", cfg.cases);
    cfg.examples_per_sense = j.value("examples_per_sense", cfg.examples_per_sense);
    cfg.concept_level = j.value("concept_level", cfg.concept_level);
    cfg.concepts_per_sense = j.value("concepts_per_sense", cfg.concepts_per_sense);
    cfg.confusion = j.value("confusion", cfg.confusion);
    cfg.confuse_per_noun = j.value("confuse_per_noun", cfg.confuse_per_noun);
    cfg.seed = j.value("seed", cfg.seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed synthetic config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string to_json(const SyntheticConfig& cfg) {
  nlohmann::json j{{"branching", cfg.branching},
                   {"depth", cfg.depth},
                   {"num_verbs", cfg.num_verbs},
                   {"num_senses", cfg.num_senses},
                   {"cases", cfg.cases},
                   {"examples_per_sense", cfg.examples_per_sense},
                   {"concept_level", cfg.concept_level},
                   {"concepts_per_sense", cfg.concepts_per_sense},
                   {"confusion", cfg.confusion},
                   {"confuse_per_noun", cfg.confuse_per_noun},
                   {"seed", cfg.seed}};
  return j.dump();
}

}  // namespace wsd
