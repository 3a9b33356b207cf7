#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "wsd/engine.hpp"
#include "wsd/error.hpp"
#include "wsd/random.hpp"
#include "wsd/similarity.hpp"

using namespace wsd;

namespace {

// The toru entry: four senses with HUMAN nominatives and disparate accusatives.
struct Toru {
  Thesaurus t;
  SenseDatabase db;
  Toru() {
    const std::vector<std::pair<const char*, const char*>> words = {
        {"111111", "suri"},    {"111112", "kanojo"},     {"111113", "ani"},
        {"111121", "kare"},    {"111122", "gakusei"},    {"111123", "chichi"},
        {"111131", "kyaku"},   {"111132", "ryokoukyaku"}, {"111141", "joshu"},
        {"111142", "hisho"},   {"112111", "dantai"},     {"111151", "otoko"},
        {"211111", "kane"},    {"211112", "saifu"},      {"311111", "uma"},
        {"411111", "aidea"},   {"221111", "menkyoshou"}, {"221112", "shikaku"},
        {"221113", "biza"},    {"231111", "shinbun"},    {"231112", "zasshi"},
        {"241111", "kippu"},   {"251111", "heya"},       {"261111", "hikouki"},
        {"261112", "shindaisha"}};
    for (const auto& [c, w] : words) t.add(c, w);
    db.add_fillers("toru", "take", "ga", {"suri", "kanojo", "ani"});
    db.add_fillers("toru", "take", "wo", {"kane", "saifu", "otoko", "uma", "aidea"});
    db.add_fillers("toru", "attain", "ga", {"kare", "kanojo", "gakusei"});
    db.add_fillers("toru", "attain", "wo", {"menkyoshou", "shikaku", "biza"});
    db.add_fillers("toru", "subscribe", "ga", {"kare", "chichi", "kyaku"});
    db.add_fillers("toru", "subscribe", "wo", {"shinbun", "zasshi"});
    db.add_fillers("toru", "reserve", "ga", {"kare", "dantai", "ryokoukyaku", "joshu"});
    db.add_fillers("toru", "reserve", "wo", {"kippu", "heya", "hikouki"});
  }
};

Example ex(std::string verb, std::vector<Slot> slots) {
  Example e;
  e.id = "q";
  e.verb = std::move(verb);
  e.slots = std::move(slots);
  return e;
}

}  // namespace

TEST(CaseSim, VerbatimFillerIsOne) {
  Toru f;
  ThesaurusSimilarity sim(f.t);
  Engine eng(f.db, sim, &f.t, {});
  EXPECT_DOUBLE_EQ(eng.case_sim("toru", "reserve", "wo", "kippu"), 1.0);
}

TEST(CaseSim, MaxOverTableValues) {
  Thesaurus t;
  t.add("123456", "n");
  t.add("123457", "p2");   // path 2
  t.add("124111", "p6");   // path 6
  SenseDatabase db;
  db.add_fillers("v", "s", "ga", {"p6", "p2"});
  ThesaurusSimilarity sim(t);
  Engine eng(db, sim, &t, {});
  EXPECT_DOUBLE_EQ(eng.case_sim("v", "s", "ga", "n"), 10.0 / 11.0);
}

TEST(CaseSim, EmptyFillersGiveZeroAndMissingCaseThrows) {
  Thesaurus t;
  t.add("123456", "n");
  SenseDatabase db;
  db.declare_case("v", "s", "ga");
  ThesaurusSimilarity sim(t);
  Engine eng(db, sim, &t, {});
  EXPECT_EQ(eng.case_sim("v", "s", "ga", "n"), 0.0);
  EXPECT_THROW(eng.case_sim("v", "s", "wo", "n"), Error);
}

TEST(Ccd, DisjointIsOneIdenticalIsZero) {
  Thesaurus t;
  t.add("111111", "a");
  t.add("222222", "b");
  t.add("111112", "a2");
  SenseDatabase db;
  db.add_fillers("v", "s1", "ga", {"a"});
  db.add_fillers("v", "s2", "ga", {"b"});
  db.add_fillers("v", "s1", "wo", {"a"});
  db.add_fillers("v", "s2", "wo", {"a2"});  // same level-5 class as a
  EXPECT_DOUBLE_EQ(compute_ccd(db, &t, "v", "ga", 1.0, 5), 1.0);
  EXPECT_DOUBLE_EQ(compute_ccd(db, &t, "v", "wo", 1.0, 5), 0.0);
}

TEST(Ccd, OneSharedOfTwoIsHalf) {
  Thesaurus t;
  t.add("111111", "a");
  t.add("222221", "b");
  t.add("333331", "c");
  SenseDatabase db;
  db.add_fillers("v", "s1", "ga", {"a", "b"});
  db.add_fillers("v", "s2", "ga", {"b", "c"});
  EXPECT_DOUBLE_EQ(compute_ccd(db, &t, "v", "ga", 1.0, 5), 0.5);
  EXPECT_DOUBLE_EQ(compute_ccd(db, &t, "v", "ga", 2.0, 5), 0.25);
}

TEST(Ccd, FewerThanTwoSensesIsOne) {
  Thesaurus t;
  t.add("111111", "a");
  SenseDatabase db;
  db.add_fillers("v", "s1", "ga", {"a"});
  db.add_fillers("v", "s2", "wo", {"a"});
  EXPECT_DOUBLE_EQ(compute_ccd(db, &t, "v", "ga", 1.0, 5), 1.0);
}

TEST(Ccd, SetsNotMultisets) {
  Thesaurus t;
  t.add("111111", "a");
  t.add("111112", "a2");
  t.add("222221", "b");
  SenseDatabase db;
  db.add_fillers("v", "s1", "ga", {"a", "a2", "a"});  // one class
  db.add_fillers("v", "s2", "ga", {"b"});
  EXPECT_DOUBLE_EQ(compute_ccd(db, &t, "v", "ga", 1.0, 5), 1.0);
}

TEST(Score, HandEvaluated) {
  const double sims[] = {1.0, 0.5};
  const double ccd[] = {0.8, 0.2};
  EXPECT_NEAR(weighted_score(sims, ccd), 0.9, 1e-15);
}

TEST(Score, SingleCaseEqualsSim) {
  const double sims[] = {0.37};
  const double ccd[] = {0.2};
  EXPECT_DOUBLE_EQ(weighted_score(sims, ccd), 0.37);
}

TEST(Score, AllZeroWeightsGiveZero) {
  const double sims[] = {1.0, 0.5};
  const double ccd[] = {0.0, 0.0};
  EXPECT_EQ(weighted_score(sims, ccd), 0.0);
}

TEST(Score, InvariantUnderPositiveCcdScaling) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 4);
    std::vector<double> s(n), w(n), w2(n);
    const double k = 1e-3 + 1e3 * uniform_unit(rng);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = uniform_unit(rng);
      w[i] = 0.01 + uniform_unit(rng);
      w2[i] = w[i] * k;
    }
    EXPECT_NEAR(weighted_score(s, w), weighted_score(s, w2), 1e-12);
    const double v = weighted_score(s, w);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Certainty, HandEvaluatedAndEndpoints) {
  EXPECT_NEAR(certainty(0.9, 0.3, 0.5), 0.75, 1e-15);
  EXPECT_DOUBLE_EQ(certainty(0.9, 0.3, 1.0), 0.9);
  EXPECT_DOUBLE_EQ(certainty(0.6, 0.6, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(certainty(0.9, 0.3, 0.0), 0.9 - 0.3);
  EXPECT_THROW(certainty(0.9, 0.3, 1.5), Error);
  EXPECT_THROW(certainty(0.9, 0.3, -0.1), Error);
}

TEST(Certainty, BoundedAndMonotone) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    double a = uniform_unit(rng), b = uniform_unit(rng);
    double top = std::max(a, b), second = std::min(a, b);
    double l = uniform_unit(rng);
    double c = certainty(top, second, l);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    EXPECT_GE(certainty(std::min(1.0, top + 0.01), second, l), c);
    EXPECT_LE(certainty(top, std::min(top, second + 0.01), l), c);
  }
}

TEST(Disambiguate, ToruSecretarySleepingCarIsReserve) {
  Toru f;
  ThesaurusSimilarity sim(f.t);
  Engine eng(f.db, sim, &f.t, {});
  auto r = eng.disambiguate(ex("toru", {{"ga", "hisho"}, {"wo", "shindaisha"}}));
  EXPECT_EQ(r.chosen, "reserve");
  EXPECT_FALSE(r.tie_broken);
  // The accusative separates the senses better than the nominative.
  EXPECT_GT(r.ccd[1], r.ccd[0]);
  EXPECT_EQ(r.senses.front().sense, "reserve");
  EngineConfig w;
  w.decision = DecisionMode::weighted;
  Engine weng(f.db, sim, &f.t, w);
  EXPECT_EQ(weng.disambiguate(ex("toru", {{"ga", "hisho"}, {"wo", "shindaisha"}})).chosen, "reserve");
}

TEST(Disambiguate, ExactStoredExampleWins) {
  Toru f;
  ThesaurusSimilarity sim(f.t);
  Engine eng(f.db, sim, &f.t, {});
  auto r = eng.disambiguate(ex("toru", {{"ga", "gakusei"}, {"wo", "biza"}}));
  EXPECT_EQ(r.chosen, "attain");
  EXPECT_FALSE(r.tie_broken);
}

TEST(Disambiguate, SenseLackingCaseIsFiltered) {
  Thesaurus t;
  t.add("111111", "a");
  t.add("222222", "b");
  SenseDatabase db;
  db.add_fillers("v", "s1", "c1", {"a"});
  db.add_fillers("v", "s2", "c1", {"b"});
  db.add_fillers("v", "s3", "c2", {"a"});
  ThesaurusSimilarity sim(t);
  Engine eng(db, sim, &t, {});
  auto r = eng.disambiguate(ex("v", {{"c1", "a"}}));
  EXPECT_EQ(r.filtered, std::vector<std::string>{"s3"});
  EXPECT_EQ(r.senses.size(), 2u);
  EXPECT_EQ(r.chosen, "s1");
}

TEST(Disambiguate, ResidualTieGoesToMostFrequentThenLowestId) {
  Thesaurus t;
  t.add("111111", "a");
  t.add("222222", "b");
  SenseDatabase db;
  db.add_fillers("v", "s1", "ga", {"a"});
  db.add_fillers("v", "s2", "ga", {"a"});
  db.add_fillers("v", "s3", "ga", {"b"});
  db.set_frequency("v", "s1", 1);
  db.set_frequency("v", "s2", 4);
  db.set_frequency("v", "s3", 9);
  ThesaurusSimilarity sim(t);
  for (auto mode : {DecisionMode::weighted, DecisionMode::lexicographic}) {
    EngineConfig c;
    c.decision = mode;
    Engine eng(db, sim, &t, c);
    auto r = eng.disambiguate(ex("v", {{"ga", "a"}}));
    EXPECT_EQ(r.chosen, "s2");  // s3 is most frequent overall but not tied
    EXPECT_TRUE(r.tie_broken);
    EXPECT_DOUBLE_EQ(r.certainty, 0.5 * 1.0 + 0.5 * 0.0);
  }
  db.set_frequency("v", "s1", 4);
  Engine eng(db, sim, &t, {});
  EXPECT_EQ(eng.disambiguate(ex("v", {{"ga", "a"}})).chosen, "s1");
}

TEST(Disambiguate, NoCandidateFallsBackToMostFrequent) {
  Thesaurus t;
  t.add("111111", "a");
  SenseDatabase db;
  db.add_fillers("v", "s1", "ga", {"a"});
  db.add_fillers("v", "s2", "ga", {"a"});
  db.set_frequency("v", "s2", 3);
  ThesaurusSimilarity sim(t);
  Engine eng(db, sim, &t, {});
  auto r = eng.disambiguate(ex("v", {{"ni", "a"}}));
  EXPECT_EQ(r.chosen, "s2");
  EXPECT_TRUE(r.tie_broken);
  EXPECT_TRUE(r.senses.empty());
  EXPECT_EQ(r.certainty, 0.0);
}

TEST(Disambiguate, UnknownVerbOrNoSensesThrows) {
  Toru f;
  ThesaurusSimilarity sim(f.t);
  Engine eng(f.db, sim, &f.t, {});
  EXPECT_THROW(eng.disambiguate(ex("nomu", {{"ga", "kare"}})), Error);
}

TEST(Disambiguate, ReportAgreesWithReferenceScorer) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = oracle::random_instance(seed, 30);
    ThesaurusSimilarity sim(inst.thesaurus);
    oracle::CodeSim ref(inst.thesaurus);
    Engine eng(inst.db, sim, &inst.thesaurus, {});
    for (const auto& x : inst.pool) {
      auto r = eng.disambiguate(x);
      auto o = oracle::score(inst.db, ref, x, oracle::ccd_map(inst.db, inst.thesaurus, x), 0.5);
      ASSERT_EQ(r.senses.size(), o.scores.size());
      for (const auto& s : r.senses) {
        EXPECT_NEAR(s.score, o.scores.at(s.sense), 1e-12);
        for (std::size_t j = 0; j < s.case_sims.size(); ++j)
          EXPECT_NEAR(s.case_sims[j], o.sims.at(s.sense)[j], 1e-12);
      }
      EXPECT_NEAR(r.certainty, o.certainty, 1e-12);
      for (std::size_t j = 0; j < r.cases.size(); ++j)
        EXPECT_NEAR(r.ccd[j], oracle::ccd(inst.db, inst.thesaurus, x.verb, r.cases[j]), 1e-12);
    }
  }
}

TEST(Decide, LexicographicFollowsTopCcdCase) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t ncases = 1 + uniform_index(rng, 3);
    const std::size_t nsenses = 2 + uniform_index(rng, 3);
    std::vector<std::string> cases;
    std::vector<double> ccd;
    for (std::size_t c = 0; c < ncases; ++c) {
      cases.push_back("c" + std::to_string(c));
      ccd.push_back(0.05 + 0.9 * uniform_unit(rng) + 1e-3 * static_cast<double>(c));
    }
    std::vector<std::vector<double>> sims(nsenses, std::vector<double>(ncases));
    std::vector<std::string> ids;
    std::vector<DecisionInput::Candidate> cands;
    for (std::size_t s = 0; s < nsenses; ++s) ids.push_back("s" + std::to_string(s));
    for (std::size_t s = 0; s < nsenses; ++s) {
      for (auto& v : sims[s]) v = uniform_unit(rng);  // distinct with probability 1
      cands.push_back({ids[s], 0, sims[s]});
    }
    std::size_t top = static_cast<std::size_t>(std::max_element(ccd.begin(), ccd.end()) - ccd.begin());
    std::size_t want = 0;
    for (std::size_t s = 1; s < nsenses; ++s)
      if (sims[s][top] > sims[want][top]) want = s;
    EngineConfig cfg;
    auto d = decide({cases, ccd, cands}, cfg);
    EXPECT_EQ(d.winner, want);
    EXPECT_FALSE(d.tie_broken);
  }
}

TEST(EngineConfig, Validation) {
  EngineConfig c;
  c.lambda = 2;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.alpha = -1;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_EQ(parse_backend("vsm"), Backend::vsm);
  EXPECT_THROW(parse_decision("fancy"), Error);
}

TEST(ScoreReport, JsonHasFields) {
  Toru f;
  ThesaurusSimilarity sim(f.t);
  Engine eng(f.db, sim, &f.t, {});
  auto j = to_json(eng.disambiguate(ex("toru", {{"ga", "hisho"}, {"wo", "shindaisha"}})));
  for (const char* k : {"\"chosen\"", "\"certainty\"", "\"senses\"", "\"ccd\"", "\"case_sims\""})
    EXPECT_NE(j.find(k), std::string::npos) << k;
}
