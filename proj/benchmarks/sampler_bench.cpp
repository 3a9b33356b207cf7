#include <benchmark/benchmark.h>

#include "oracle.hpp"
#include "wsd/sampler.hpp"

using namespace wsd;

// One commit against a pool of the given size; the state is rebuilt outside
// the timed region every time the pool runs low.
static void BM_Commit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto inst = oracle::random_instance(5, n, 3, 2);
  ThesaurusSimilarity sim(inst.thesaurus);
  auto fresh = [&] { return SamplerState(inst.db, inst.pool, sim, &inst.thesaurus, {}); };
  SamplerState st = fresh();
  for (auto _ : state) {
    if (st.pool_size() < n / 2) {
      state.PauseTiming();
      st = fresh();
      state.ResumeTiming();
    }
    const Example* x = st.pool().front();
    st.commit(x->id, *x->gold_sense);
  }
  state.counters["evals/commit"] = static_cast<double>(st.last_commit_evaluations());
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_Commit)->RangeMultiplier(2)->Range(100, 1600)->Complexity(benchmark::oN);

// Fresh training utility of every pool example.
static void BM_TrainingUtilityAll(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto inst = oracle::random_instance(6, n, 3, 2);
  ThesaurusSimilarity sim(inst.thesaurus);
  SamplerState st(inst.db, inst.pool, sim, &inst.thesaurus, {});
  for (auto _ : state)
    for (const auto* x : st.pool()) benchmark::DoNotOptimize(st.training_utility(x->id, 1));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_TrainingUtilityAll)->RangeMultiplier(2)->Range(100, 800)->Complexity(benchmark::oNSquared);

// One select + commit step of the tu strategy with cached utilities.
static void BM_TuStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto inst = oracle::random_instance(7, n, 3, 2);
  ThesaurusSimilarity sim(inst.thesaurus);
  auto fresh = [&] { return SamplerState(inst.db, inst.pool, sim, &inst.thesaurus, {}); };
  SamplerState st = fresh();
  Selector sel({StrategyKind::tu});
  for (auto _ : state) {
    if (st.pool_size() < n / 2) {
      state.PauseTiming();
      st = fresh();
      state.ResumeTiming();
    }
    auto id = sel.select(st);
    st.commit(id, *st.find_example(id)->gold_sense);
  }
}
BENCHMARK(BM_TuStep)->Arg(200)->Arg(400);
BENCHMARK_MAIN();
