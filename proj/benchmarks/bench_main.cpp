#include <benchmark/benchmark.h>

#include <random>

#include "rscensus/census.hpp"
#include "rscensus/dynamics.hpp"
#include "rscensus/spectral.hpp"
#include "rscensus/word.hpp"

namespace {

using namespace rsc;

std::vector<Word> sample_words(std::uint32_t k, Exponent m, std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Exponent> edge(0, m), inner(1, m);
  std::vector<Word> out;
  std::vector<Exponent> t(2 * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < t.size(); ++p) t[p] = (p == 0 || p + 1 == t.size()) ? edge(rng) : inner(rng);
    out.push_back(Word::from_tuple(t));
  }
  return out;
}

void BM_WordEval(benchmark::State& state) {
  const auto words = sample_words(static_cast<std::uint32_t>(state.range(0)), 20, 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(word_eval(words[i++ % words.size()]));
}
BENCHMARK(BM_WordEval)->Arg(2)->Arg(4)->Arg(8);

void BM_TraceFast(benchmark::State& state) {
  const auto words = sample_words(static_cast<std::uint32_t>(state.range(0)), 5, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(trace_fast(words[i++ % words.size()]));
}
BENCHMARK(BM_TraceFast)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

void BM_TraceSubsetPair(benchmark::State& state) {
  const auto words = sample_words(static_cast<std::uint32_t>(state.range(0)), 5, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(trace_subsetpair(words[i++ % words.size()]));
}
BENCHMARK(BM_TraceSubsetPair)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

void BM_IntegerEigenvalues(benchmark::State& state) {
  const auto words = sample_words(2, 30, 256);
  std::vector<Mat2> mats;
  for (const auto& w : words) mats.push_back(word_eval(w));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(integer_eigenvalues(mats[i++ % mats.size()]));
}
BENCHMARK(BM_IntegerEigenvalues);

void BM_CensusKTwo(benchmark::State& state) {
  CensusOptions opts;
  opts.use_prefilter = state.range(1) != 0;
  const auto m = static_cast<Exponent>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(census(2, m, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(LambdaBox(2, m).size()));
}
BENCHMARK(BM_CensusKTwo)->Args({8, 0})->Args({8, 1})->Args({16, 1})->Unit(benchmark::kMillisecond);

void BM_ThetaSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(conjecture1_sweep(static_cast<std::uint64_t>(state.range(0)), 10'000));
}
BENCHMARK(BM_ThetaSweep)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
