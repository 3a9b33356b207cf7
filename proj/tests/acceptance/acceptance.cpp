// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracle.hpp"
#include "wsd/baselines.hpp"
#include "wsd/engine.hpp"
#include "wsd/error.hpp"
#include "wsd/evaluation.hpp"
#include "wsd/sampler.hpp"
#include "wsd/synthetic.hpp"

using namespace wsd;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.ok = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
  }
  failures += !o.ok;
  std::printf("%s %-22s %6.2fs  %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

// Largest deviation between the sampler caches and a from-scratch recomputation.
double cache_deviation(const SamplerState& st, const Thesaurus& t, const oracle::CodeSim& ref) {
  double worst = 0.0;
  for (const auto* x : st.pool()) {
    auto o = oracle::score(st.database(), ref, *x, oracle::ccd_map(st.database(), t, *x), st.config().engine.lambda);
    auto got = st.scores(x->id);
    if (got.size() != o.scores.size()) return INFINITY;
    for (const auto& [sense, sc] : got) {
      auto it = o.scores.find(sense);
      if (it == o.scores.end()) return INFINITY;
      worst = std::max(worst, std::abs(sc - it->second));
      for (std::size_t j = 0; j < x->slots.size(); ++j)
        worst = std::max(worst, std::abs(st.best_sim(x->id, sense, x->slots[j].case_id) - o.sims.at(sense)[j]));
    }
    worst = std::max(worst, std::abs(st.certainty(x->id) - o.certainty));
  }
  return worst;
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = oracle::random_instance(seed, 200, 4, 3);
    ThesaurusSimilarity sim(inst.thesaurus);
    oracle::CodeSim ref(inst.thesaurus);
    SamplerState st(inst.db, inst.pool, sim, &inst.thesaurus, {});
    worst = std::max(worst, cache_deviation(st, inst.thesaurus, ref));
    Selector sel({StrategyKind::tu});
    run_loop(st, sel, gold_oracle(), 50, [&](const SamplerState& s, const HistoryRecord&) {
      worst = std::max(worst, cache_deviation(s, inst.thesaurus, ref));
      ++checks;
    });
  }
  return {worst <= 1e-9 && checks == 20 * 50, "max deviation " + fmt(worst) + " over " + std::to_string(checks) + " commits"};
}

Outcome tu_brute_force() {
  double worst = 0.0;
  std::size_t pairs = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = oracle::random_instance(1000 + seed, 30, 4, 3);
    ThesaurusSimilarity sim(inst.thesaurus);
    oracle::CodeSim ref(inst.thesaurus);
    SamplerState st(inst.db, inst.pool, sim, &inst.thesaurus, {});
    std::vector<Example> pool;
    for (const auto* e : st.pool()) pool.push_back(*e);
    for (const auto& x : pool)
      for (const auto& s : st.database().senses(x.verb)) {
        double got = st.training_utility_for_sense(x.id, s);
        double want = oracle::brute_force_tu(st.database(), inst.thesaurus, ref, pool, x, s, st.config().engine.lambda);
        worst = std::max(worst, std::abs(got - want));
        ++pairs;
      }
  }
  return {worst <= 1e-9, "max deviation " + fmt(worst) + " over " + std::to_string(pairs) + " (example, sense) pairs"};
}

Outcome complexity() {
  const std::vector<std::size_t> sizes = {100, 200, 400, 800};
  std::vector<double> per_commit;
  for (auto n : sizes) {
    // Same generator settings at every size: two senses, two cases.
    auto inst = oracle::random_instance(77, n, 2, 2);
    ThesaurusSimilarity sim(inst.thesaurus);
    SamplerState st(inst.db, inst.pool, sim, &inst.thesaurus, {});
    const int commits = 20;
    double total = 0.0;
    for (int i = 0; i < commits; ++i) {
      const Example* x = st.pool().front();
      st.commit(x->id, *x->gold_sense);
      total += static_cast<double>(st.last_commit_evaluations());
    }
    per_commit.push_back(total / commits);
  }
  double c = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) c = std::max(c, per_commit[i] / static_cast<double>(sizes[i]));
  bool ok = true;
  std::string detail = "evals/commit";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    detail += " " + std::to_string(sizes[i]) + ":" + fmt(per_commit[i], 5);
    if (i > 0) {
      double ratio = per_commit[i] / per_commit[i - 1];
      ok = ok && ratio <= 2.3;
      detail += "(x" + fmt(ratio) + ")";
    }
  }
  detail += " c=" + fmt(c);
  return {ok, detail};
}

struct TrendSetup {
  SyntheticConfig synth;
  std::vector<std::uint64_t> seeds;
  int folds = 6;
  InitMode init = InitMode::from_scratch;
  double target = 0.9;
};

TrendSetup load_trend() {
  const std::string path = std::string(WSD_SOURCE_DIR) + "/configs/trend.json";
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  TrendSetup t;
  std::istringstream again(buf.str());
  t.synth = parse_synthetic_config(again);
  auto j = nlohmann::json::parse(buf.str());
  t.seeds = j.at("trend_seeds").get<std::vector<std::uint64_t>>();
  t.folds = j.value("folds", 6);
  t.init = parse_init_mode(j.value("init", std::string("from-scratch")));
  t.target = j.value("target_fraction", 0.9);
  return t;
}

Outcome trend() {
  auto t = load_trend();
  std::map<StrategyKind, std::vector<double>> labels;
  for (auto seed : t.seeds) {
    SyntheticConfig sc = t.synth;
    sc.seed = seed;
    auto corpus = generate_synthetic(sc);
    ThesaurusSimilarity sim(corpus.thesaurus);
    for (auto k : {StrategyKind::tu, StrategyKind::random, StrategyKind::committee}) {
      CurveConfig cfg;
      cfg.strategy.kind = k;
      cfg.init = t.init;
      cfg.folds = t.folds;
      cfg.stop_fraction = t.target;
      auto curve = run_learning_curve(corpus.examples, &corpus.thesaurus, sim, cfg, seed);
      auto n = labels_to_reach(curve, t.target * curve.exhaustive_accuracy);
      if (!n) throw Error("curve never reached the target");
      labels[k].push_back(static_cast<double>(*n));
    }
  }
  double tu = median(labels[StrategyKind::tu]);
  double rnd = median(labels[StrategyKind::random]);
  double cbs = median(labels[StrategyKind::committee]);
  return {tu <= 0.7 * rnd && tu <= cbs,
          "median labels tu " + fmt(tu) + " random " + fmt(rnd) + " cbs " + fmt(cbs) + " (tu/random " +
              fmt(tu / rnd) + ")"};
}

Outcome exhaustion() {
  auto t = load_trend();
  SyntheticConfig sc = t.synth;
  sc.seed = t.seeds.front();
  auto corpus = generate_synthetic(sc);
  ThesaurusSimilarity sim(corpus.thesaurus);
  std::vector<double> finals;
  double exhaustive = 0.0;
  std::string detail;
  for (auto k : {StrategyKind::tu, StrategyKind::uncertainty, StrategyKind::committee, StrategyKind::random}) {
    CurveConfig cfg;
    cfg.strategy.kind = k;
    cfg.init = t.init;
    cfg.folds = t.folds;
    auto curve = run_learning_curve(corpus.examples, &corpus.thesaurus, sim, cfg, sc.seed);
    finals.push_back(curve.points.back().accuracy);
    exhaustive = curve.exhaustive_accuracy;
    detail += std::string(to_string(k)) + " " + fmt(finals.back(), 6) + " ";
  }
  bool ok = std::all_of(finals.begin(), finals.end(), [&](double a) { return a == finals.front(); }) &&
            finals.front() == exhaustive;
  return {ok, detail + "exhaustive " + fmt(exhaustive, 6)};
}

Outcome table_lookups() {
  const int want[][2] = {{0, 11}, {2, 10}, {4, 9}, {6, 8}, {8, 7}, {10, 5}, {12, 0}};
  bool ok = true;
  for (const auto& [len, v] : want) ok = ok && SimTable::lookup(len) == v;
  // and through a depth-6 tree: one word per path length from "111111"
  Thesaurus th;
  const char* codes[] = {"111111", "111112", "111121", "111211", "112111", "121111", "211111"};
  for (const char* c : codes) th.add(c, std::string("n") + c);
  for (int i = 0; i < 7; ++i) ok = ok && th.similarity("n111111", std::string("n") + codes[i]) == want[i][1];
  return {ok, "7 path lengths"};
}

Outcome equation_suites() {
  std::vector<std::string> bad;
  // CCD: disjoint -> 1, identical -> 0
  {
    Thesaurus t;
    t.add("111111", "a");
    t.add("222222", "b");
    SenseDatabase db;
    db.add_fillers("v", "s1", "ga", {"a"});
    db.add_fillers("v", "s2", "ga", {"b"});
    db.add_fillers("v", "s1", "wo", {"a"});
    db.add_fillers("v", "s2", "wo", {"a"});
    if (compute_ccd(db, &t, "v", "ga", 1.0, 5) != 1.0) bad.push_back("ccd-disjoint");
    if (compute_ccd(db, &t, "v", "wo", 1.0, 5) != 0.0) bad.push_back("ccd-identical");
  }
  Rng rng(2024);
  // Score invariance under positive CCD scaling
  for (int i = 0; i < 2000; ++i) {
    std::size_t n = 1 + uniform_index(rng, 4);
    std::vector<double> s(n), w(n), w2(n);
    double k = 1e-3 + 1e3 * uniform_unit(rng);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = uniform_unit(rng);
      w[j] = 1e-3 + uniform_unit(rng);
      w2[j] = k * w[j];
    }
    if (std::abs(weighted_score(s, w) - weighted_score(s, w2)) > 1e-12) {
      bad.push_back("score-scaling");
      break;
    }
  }
  // certainty endpoints
  for (int i = 0; i < 2000; ++i) {
    double a = uniform_unit(rng), b = uniform_unit(rng);
    double top = std::max(a, b), second = std::min(a, b);
    if (certainty(top, second, 1.0) != top || certainty(top, second, 0.0) != top - second) {
      bad.push_back("certainty-endpoints");
      break;
    }
  }
  // NB posterior normalization
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = oracle::random_instance(300 + seed, 30);
    auto m = nb_train(inst.db, &inst.thesaurus);
    for (const auto& x : inst.pool) {
      double sum = 0.0;
      for (const auto& [_, p] : nb_posterior(m, x)) sum += p;
      if (std::abs(sum - 1.0) > 1e-9) bad.push_back("nb-normalization " + x.id);
    }
  }
  // A = 0 when P(r|s,c) = P(r|c)
  {
    Thesaurus t;
    t.add("111111", "a");
    t.add("111112", "a2");
    SenseDatabase db;
    db.add_fillers("v", "s1", "wo", {"a"});
    db.add_fillers("v", "s2", "wo", {"a2"});
    auto r = induce_rules(db, t, -INFINITY);
    if (association(0.3, 0.3) != 0.0 || r.find("v", "s1", "wo")->at("1") != 0.0) bad.push_back("association-zero");
  }
  // coverage monotone over random threshold grids
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 1 + uniform_index(rng, 50);
    std::vector<double> c(n);
    std::vector<bool> ok(n);
    for (std::size_t j = 0; j < n; ++j) {
      c[j] = uniform_unit(rng);
      ok[j] = uniform_unit(rng) < 0.5;
    }
    std::vector<double> grid(1 + uniform_index(rng, 30));
    for (auto& g : grid) g = uniform_unit(rng) * 1.2 - 0.1;
    std::sort(grid.begin(), grid.end());
    auto rows = coverage_accuracy_sweep(c, ok, grid);
    for (std::size_t j = 1; j < rows.size(); ++j)
      if (rows[j].coverage > rows[j - 1].coverage) {
        bad.push_back("coverage-monotone");
        i = 200;
        break;
      }
  }
  std::string detail = bad.empty() ? "ccd, score scaling, certainty, nb, association, coverage" : "";
  for (const auto& b : bad) detail += b + " ";
  return {bad.empty(), detail};
}

Outcome sweep_harness() {
  auto t = load_trend();
  SyntheticConfig sc = t.synth;
  sc.seed = t.seeds.front();
  auto corpus = generate_synthetic(sc);
  const std::vector<double> lambdas = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto grid = threshold_grid(0.05);
  auto rows = lambda_sweep(corpus.examples, corpus.thesaurus, lambdas, grid, {}, t.folds, sc.seed);
  bool ok = rows.size() == lambdas.size() * grid.size();
  for (std::size_t i = 0; ok && i < rows.size(); ++i) {
    const auto& r = rows[i];
    ok = r.lambda == lambdas[i / grid.size()] && r.threshold == grid[i % grid.size()] && r.coverage >= 0 &&
         r.coverage <= 1 && (r.accuracy.has_value() == (r.coverage > 0)) &&
         (!r.accuracy || (*r.accuracy >= 0 && *r.accuracy <= 1));
    if (ok && i % grid.size() != 0) ok = r.coverage <= rows[i - 1].coverage;
  }
  std::ostringstream out;
  write_sweep(out, rows);
  std::size_t lines = 0;
  std::istringstream in(out.str());
  for (std::string l; std::getline(in, l);) {
    ++lines;
    ok = ok && std::count(l.begin(), l.end(), '\t') == 3;
  }
  ok = ok && lines == rows.size() + 1;
  return {ok, std::to_string(lambdas.size()) + " lambdas x " + std::to_string(grid.size()) + " thresholds"};
}

}  // namespace

int main() {
  report("oracle-equivalence", 60, oracle_equivalence);
  report("tu-brute-force", 10, tu_brute_force);
  report("complexity", 60, complexity);
  report("trend", 300, trend);
  report("exhaustion-equality", 0, exhaustion);
  report("table-lookups", 0, table_lookups);
  report("equation-suites", 0, equation_suites);
  report("lambda-sweep", 0, sweep_harness);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
