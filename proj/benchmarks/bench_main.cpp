#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "csync/commutative.hpp"
#include "csync/generators.hpp"
#include "csync/regex.hpp"
#include "csync/simple_idempotent.hpp"
#include "csync/sync.hpp"

using namespace csync;

static void BM_PairCollapseDecision(benchmark::State& state) {
  const Dcsa a = cerny(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_synchronizing(a, Witness::kSkip).synchronizing);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PairCollapseDecision)->RangeMultiplier(2)->Range(64, 2048)->Complexity(benchmark::oNSquared);

static void BM_PairCollapseWitness(benchmark::State& state) {
  const Dcsa a = cerny(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_synchronizing(a).witness);
}
BENCHMARK(BM_PairCollapseWitness)->RangeMultiplier(2)->Range(16, 256);

static void BM_ShortestSyncCerny(benchmark::State& state) {
  const Dcsa a = cerny(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_sync_word(a));
}
BENCHMARK(BM_ShortestSyncCerny)->DenseRange(4, 14, 2);

static void BM_ConstrainedOracle(benchmark::State& state) {
  const Dcsa a = sink_cycle_automaton(static_cast<std::size_t>(state.range(0)));
  const Pdfa b = compile_regex("b(a+bb)*", binary_alphabet());
  for (auto _ : state) benchmark::DoNotOptimize(constrained_sync_oracle(a, b));
}
BENCHMARK(BM_ConstrainedOracle)->DenseRange(6, 16, 2);

static void BM_SimpleIdempotentDecision(benchmark::State& state) {
  const Dcsa a = sink_cycle_automaton(static_cast<std::size_t>(state.range(0)));
  const Pdfa b = compile_regex("b(a+bb)*", binary_alphabet());
  for (auto _ : state) benchmark::DoNotOptimize(decide_constrained(a, b).yes);
}
BENCHMARK(BM_SimpleIdempotentDecision)->DenseRange(6, 16, 2);

// Commutative, weakly acyclic and synchronizing: letter j adds j + 1 to the
// state and saturates at n - 1, so the quotient keeps all n states.
static Dcsa saturating_counter(std::size_t n, std::size_t k) {
  std::vector<State> table(n * k);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t j = 0; j < k; ++j) table[q * k + j] = static_cast<State>(std::min(q + j + 1, n - 1));
  }
  return Dcsa(first_letters(k), n, std::move(table));
}

static void BM_CommutativePipeline(benchmark::State& state) {
  const Dcsa a = saturating_counter(static_cast<std::size_t>(state.range(0)), 2);
  const Pdfa b = compile_regex("b(aa+ba)*", binary_alphabet());
  for (auto _ : state) benchmark::DoNotOptimize(constrained_sync_commutative(a, b));
}
BENCHMARK(BM_CommutativePipeline)->RangeMultiplier(2)->Range(8, 128);

static void BM_CommutativeRandomSample(benchmark::State& state) {
  std::vector<Dcsa> sample;
  for (std::uint64_t s = 0; s < 64; ++s) sample.push_back(random_commutative(6, 2, Seed{s}));
  const Pdfa b = compile_regex("ab*a", binary_alphabet());
  for (auto _ : state) {
    for (const Dcsa& a : sample) benchmark::DoNotOptimize(constrained_sync_commutative(a, b));
  }
}
BENCHMARK(BM_CommutativeRandomSample);

static void BM_SyncLanguageThreaded(benchmark::State& state) {
  const Dcsa a = saturating_counter(40, 3);
  const SyncLanguageOptions opts{.minimal_states_only = false, .jobs = static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(sync_language_automaton(a, opts).size());
}
BENCHMARK(BM_SyncLanguageThreaded)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_SyncLanguageMinimalStates(benchmark::State& state) {
  const Dcsa a = saturating_counter(40, 3);
  const SyncLanguageOptions opts{.minimal_states_only = state.range(0) != 0, .jobs = 1};
  for (auto _ : state) benchmark::DoNotOptimize(sync_language_automaton(a, opts).size());
}
BENCHMARK(BM_SyncLanguageMinimalStates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
