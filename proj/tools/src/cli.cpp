#include "wsd/cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "httplib.h"
#include "wsd/baselines.hpp"
#include "wsd/error.hpp"
#include "wsd/evaluation.hpp"
#include "wsd/http.hpp"
#include "wsd/sampler.hpp"
#include "wsd/session.hpp"
#include "wsd/synthetic.hpp"

namespace wsd {

namespace {

const std::vector<std::string> kStrategies = {"tu", "uncertainty", "committee", "random"};

struct Inputs {
  std::string corpus;
  std::string thesaurus;
  std::string seed_db;
  std::string tuples;
  std::string config;
};

struct EngineOpts {
  std::string similarity = "thesaurus";
  std::string decision = "lexicographic";
  double alpha = 1.0;
  double lambda = 0.5;
  int level = 5;

  EngineConfig build() const {
    EngineConfig c;
    c.backend = parse_backend(similarity);
    c.decision = parse_decision(decision);
    c.alpha = alpha;
    c.lambda = lambda;
    c.smoothing_level = level;
    c.validate();
    return c;
  }
};

struct StrategyOpts {
  std::string kind = "tu";
  int k = 1;
  int committee = 2;
  double fraction = 0.5;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

// Everything a pipeline needs, resolved from the flags.
struct Loaded {
  Thesaurus thesaurus;
  ExampleSet corpus;
  std::optional<VectorTable> vectors;
  std::optional<SenseDatabase> seed_db;
  std::unique_ptr<NounSimilarity> sim;
};

Loaded load(const Inputs& in, const EngineConfig& engine) {
  Loaded l;
  if (!in.config.empty()) {
    auto f = open_in(in.config);
    auto syn = generate_synthetic(parse_synthetic_config(f));
    l.thesaurus = std::move(syn.thesaurus);
    l.corpus = std::move(syn.examples);
  }
  if (!in.corpus.empty()) {
    auto f = open_in(in.corpus);
    l.corpus = parse_corpus(f);
  }
  if (!in.thesaurus.empty()) {
    auto f = open_in(in.thesaurus);
    l.thesaurus = load_thesaurus(f);
  }
  if (in.config.empty() && in.corpus.empty()) throw Error("either --corpus or --config is required");
  if (!in.tuples.empty()) {
    auto f = open_in(in.tuples);
    l.vectors = VectorTable::build(read_tuples(f));
  }
  if (!in.seed_db.empty()) {
    auto f = open_in(in.seed_db);
    l.seed_db = parse_seed_database(f);
  }
  if (engine.backend == Backend::vsm) {
    if (!l.vectors) throw Error("--similarity vsm needs --tuples");
    l.sim = std::make_unique<CosineSimilarity>(*l.vectors);
  } else {
    if (l.thesaurus.leaf_count() == 0) throw Error("--similarity thesaurus needs --thesaurus or --config");
    l.sim = std::make_unique<ThesaurusSimilarity>(l.thesaurus);
  }
  return l;
}

const Thesaurus* classes_of(const Loaded& l) {
  return l.thesaurus.leaf_count() == 0 ? nullptr : &l.thesaurus;
}

void add_inputs(CLI::App* app, Inputs& in) {
  app->add_option("--corpus", in.corpus, "Corpus JSONL");
  app->add_option("--thesaurus", in.thesaurus, "Thesaurus TSV (code, word)");
  app->add_option("--seed-db", in.seed_db, "Seed database JSONL");
  app->add_option("--tuples", in.tuples, "Co-occurrence tuples TSV (vsm backend)");
  app->add_option("--config", in.config, "Synthetic corpus config JSON (replaces --corpus/--thesaurus)");
}

void add_engine(CLI::App* app, EngineOpts& e) {
  app->add_option("--similarity", e.similarity)->check(CLI::IsMember({"thesaurus", "vsm"}));
  app->add_option("--decision", e.decision)->check(CLI::IsMember({"weighted", "lexicographic"}));
  app->add_option("--alpha", e.alpha)->check(CLI::NonNegativeNumber);
  app->add_option("--lambda", e.lambda)->check(CLI::Range(0.0, 1.0));
  app->add_option("--level", e.level, "Class smoothing level")->check(CLI::PositiveNumber);
}

void add_strategy(CLI::App* app, StrategyOpts& s, bool allow_all) {
  auto names = kStrategies;
  if (allow_all) names.push_back("all");
  app->add_option("--strategy", s.kind)->check(CLI::IsMember(names));
  app->add_option("--k", s.k, "k-best senses for training utility")->check(CLI::PositiveNumber);
  app->add_option("--committee-size", s.committee)->check(CLI::Range(2, 64));
  app->add_option("--member-fraction", s.fraction)->check(CLI::Range(0.0, 1.0));
}

Strategy make_strategy(const StrategyOpts& o, const std::string& kind, std::uint64_t seed) {
  Strategy s;
  s.kind = parse_strategy(kind);
  s.k = o.k;
  s.committee_size = o.committee;
  s.member_fraction = o.fraction;
  s.seed = seed;
  s.validate();
  return s;
}

// Initial database: the seed database, or the gold inventory plus one random
// example per sense (labelled by gold) taken out of the pool.
SamplerState initial_state(const Loaded& l, const SamplerConfig& cfg, std::uint64_t seed) {
  if (l.seed_db) {
    SenseDatabase db = *l.seed_db;
    return SamplerState(std::move(db), l.corpus, *l.sim, classes_of(l), cfg);
  }
  SenseDatabase db;
  for (const auto& [verb, senses] : sense_inventory(l.corpus))
    for (const auto& s : senses) db.declare_sense(verb, s);
  SamplerState st(std::move(db), l.corpus, *l.sim, classes_of(l), cfg);
  Rng rng(seed);
  for (const auto& [verb, senses] : sense_inventory(l.corpus)) {
    for (const auto& s : senses) {
      std::vector<std::string> ids;
      for (const Example* e : st.pool())
        if (e->verb == verb && *e->gold_sense == s) ids.push_back(e->id);
      if (!ids.empty()) st.commit(ids[uniform_index(rng, ids.size())], s, "init");
    }
  }
  return st;
}

void write_db(const std::string& path, const SenseDatabase& db) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  write_seed_database(f, db);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selective sampling for example-based verb sense disambiguation", "wsdsel"};
  app.require_subcommand(1);

  Inputs in;
  EngineOpts eng;
  StrategyOpts strat;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  bool budget_set = false;
  int folds = 6;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string oracle = "gold";
  std::string out_path;
  std::string thesaurus_out;
  std::string vectors_out;
  std::string tagged;
  std::string train;
  std::string db_out;
  std::string init = "from-scratch";
  int seeds = 10;
  std::vector<double> lambdas;
  double step = 0.05;

  auto* ingest = app.add_subcommand("ingest", "Extract co-occurrence tuples from a tagged stream");
  ingest->add_option("--tagged", tagged, "Tagged token file (N:, C:, V:)")->required();
  ingest->add_option("--out", out_path, "Tuple TSV output (default stdout)");
  ingest->add_option("--vectors", vectors_out, "Also write the weighted vector dump");

  auto* dis = app.add_subcommand("disambiguate", "Disambiguate every corpus example");
  add_inputs(dis, in);
  add_engine(dis, eng);
  dis->add_option("--train", train, "Labelled corpus used as the database");

  auto* sample = app.add_subcommand("sample", "Run the selective sampling loop");
  add_inputs(sample, in);
  add_engine(sample, eng);
  add_strategy(sample, strat, false);
  auto* budget_opt = sample->add_option("--budget", budget, "Labels to acquire (default: whole pool)");
  sample->add_option("--seed", seed);
  sample->add_option("--oracle", oracle)->check(CLI::IsMember({"gold", "http"}));
  sample->add_option("--port", port)->check(CLI::Range(0, 65535));
  sample->add_option("--host", host);
  sample->add_option("--db-out", db_out, "Write the final database here");

  auto* eval = app.add_subcommand("eval", "Cross-validated comparison of all methods");
  add_inputs(eval, in);
  add_engine(eval, eng);
  eval->add_option("--folds", folds)->check(CLI::Range(2, 1000));
  eval->add_option("--seed", seed);

  auto* curve = app.add_subcommand("curve", "Learning curves averaged over seeds");
  add_inputs(curve, in);
  add_engine(curve, eng);
  add_strategy(curve, strat, true);
  curve->add_option("--seeds", seeds, "Seeds 1..N")->check(CLI::Range(1, 1000));
  curve->add_option("--init", init)->check(CLI::IsMember({"from-scratch", "seed-db"}));
  auto* curve_budget = curve->add_option("--budget", budget);
  curve->add_option("--folds", folds)->check(CLI::Range(2, 1000));

  auto* sweep = app.add_subcommand("sweep", "Coverage and accuracy against certainty thresholds");
  add_inputs(sweep, in);
  sweep->add_option("--similarity", eng.similarity)->check(CLI::IsMember({"thesaurus"}));
  sweep->add_option("--decision", eng.decision)->check(CLI::IsMember({"weighted", "lexicographic"}));
  sweep->add_option("--alpha", eng.alpha)->check(CLI::NonNegativeNumber);
  sweep->add_option("--lambda", lambdas, "Lambda values (default 0 .25 .5 .75 1)")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--step", step, "Threshold grid step")->check(CLI::Range(0.001, 1.0));
  sweep->add_option("--folds", folds)->check(CLI::Range(2, 1000));
  sweep->add_option("--seed", seed);

  auto* srv = app.add_subcommand("serve", "Serve the annotation API");
  add_inputs(srv, in);
  add_engine(srv, eng);
  add_strategy(srv, strat, false);
  srv->add_option("--seed", seed);
  srv->add_option("--port", port)->check(CLI::Range(0, 65535));
  srv->add_option("--host", host);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus and thesaurus");
  synth->add_option("--config", in.config)->required();
  synth->add_option("--out", out_path, "Corpus output (default stdout)");
  synth->add_option("--thesaurus-out", thesaurus_out);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  budget_set = budget_opt->count() > 0 || curve_budget->count() > 0;

  try {
    if (ingest->parsed()) {
      auto f = open_in(tagged);
      auto res = extract_cooccurrence(f);
      if (out_path.empty()) {
        write_tuples(out, res.counts);
      } else {
        std::ofstream o(out_path);
        write_tuples(o, res.counts);
      }
      if (!vectors_out.empty()) {
        std::ofstream o(vectors_out);
        VectorTable::build(res.counts).write(o);
      }
      err << "pairs " << res.pairs << " skipped " << res.skipped << " tuples " << res.counts.size() << "\n";
      return 0;
    }

    if (synth->parsed()) {
      auto f = open_in(in.config);
      auto syn = generate_synthetic(parse_synthetic_config(f));
      if (out_path.empty()) {
        write_corpus(out, syn.examples);
      } else {
        std::ofstream o(out_path);
        write_corpus(o, syn.examples);
      }
      if (!thesaurus_out.empty()) {
        std::ofstream o(thesaurus_out);
        syn.thesaurus.write(o);
      }
      return 0;
    }

    const EngineConfig ec = eng.build();
    Loaded l = load(in, ec);

    if (dis->parsed()) {
      SenseDatabase db;
      if (l.seed_db) db = *l.seed_db;
      if (!train.empty()) {
        auto f = open_in(train);
        ExampleSet t = parse_corpus(f);
        for (const auto& [verb, senses] : sense_inventory(t))
          for (const auto& s : senses) db.declare_sense(verb, s);
        for (const auto& e : t) db.commit(e, *e.gold_sense);
      }
      if (db.entries().empty()) throw Error("disambiguate needs --seed-db or --train");
      Engine engine(db, *l.sim, classes_of(l), ec);
      for (const auto& e : l.corpus) {
        auto j = to_json(engine.disambiguate(e));
        out << "{\"id\":\"" << e.id << "\",\"report\":" << j << "}\n";
      }
      return 0;
    }

    if (eval->parsed()) {
      CrossValidationConfig cv;
      cv.folds = folds;
      cv.seed = seed;
      cv.engine = ec;
      if (l.thesaurus.leaf_count() == 0) throw Error("eval needs a thesaurus");
      write_cross_validation(out, cross_validate(l.corpus, l.thesaurus, l.vectors ? &*l.vectors : nullptr, cv));
      return 0;
    }

    if (sweep->parsed()) {
      if (lambdas.empty()) lambdas = {0.0, 0.25, 0.5, 0.75, 1.0};
      write_sweep(out, lambda_sweep(l.corpus, l.thesaurus, lambdas, threshold_grid(step), ec, folds, seed));
      return 0;
    }

    if (curve->parsed()) {
      std::vector<std::string> kinds = strat.kind == "all" ? kStrategies : std::vector<std::string>{strat.kind};
      out << "strategy\tlabels\tmean_acc\tstddev\n";
      for (const auto& kind : kinds) {
        CurveConfig cc;
        cc.strategy = make_strategy(strat, kind, 0);
        cc.sampler.engine = ec;
        cc.init = parse_init_mode(init);
        cc.seed_db = l.seed_db ? &*l.seed_db : nullptr;
        cc.folds = folds;
        if (budget_set) cc.budget = budget;
        std::vector<SeedCurve> curves;
        for (int s = 1; s <= seeds; ++s)
          curves.push_back(run_learning_curve(l.corpus, classes_of(l), *l.sim, cc, static_cast<std::uint64_t>(s)));
        write_curve(out, average_curves(curves), false);
      }
      return 0;
    }

    SamplerConfig sc;
    sc.engine = ec;

    if (sample->parsed() && oracle == "gold") {
      SamplerState st = initial_state(l, sc, seed);
      Selector sel(make_strategy(strat, strat.kind, seed));
      run_loop(st, sel, gold_oracle(), budget_set ? budget : st.pool_size(),
               [&](const SamplerState&, const HistoryRecord& r) { out << to_json(r) << "\n"; });
      write_db(db_out, st.database());
      return 0;
    }

    // http oracle (sample) or plain serve: answers come from the annotation API.
    Session session(initial_state(l, sc, seed), make_strategy(strat, strat.kind, seed));
    const std::size_t start = session.labels();
    httplib::Server server;
    register_routes(server, session);
    std::atomic<bool> done{false};
    std::thread watcher;
    if (sample->parsed()) {
      const std::size_t target = budget_set ? budget : session.inspect([](const SamplerState& s) { return s.pool_size(); });
      watcher = std::thread([&] {
        while (!done) {
          bool finished = session.labels() - start >= target ||
                          session.inspect([](const SamplerState& s) { return s.pool_empty(); });
          if (finished) {
            server.stop();
            break;
          }
          std::this_thread::sleep_for(std::chrono::milliseconds(50));
        }
      });
    }
    err << "listening on " << host << ":" << port << "\n";
    bool ok = server.listen(host, port);
    done = true;
    if (watcher.joinable()) watcher.join();
    if (!ok && session.labels() == start) throw Error("cannot listen on " + host + ":" + std::to_string(port));
    session.inspect([&](const SamplerState& s) {
      for (const auto& r : s.history())
        if (r.strategy != "init") out << to_json(r) << "\n";
      write_db(db_out, s.database());
      return 0;
    });
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wsd
