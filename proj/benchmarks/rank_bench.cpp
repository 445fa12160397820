#include <random>

#include <benchmark/benchmark.h>

#include "mbtr/rank_engine.hpp"

namespace {

mbtr::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  mbtr::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = unit(rng);
  return m;
}

void BM_Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sentences = random_matrix(n, 384, 1);
  const auto biases = random_matrix(3, n, 2);
  const auto guide = random_matrix(4, 384, 3);
  mbtr::RankConfig config;
  config.beta = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(mbtr::rank(sentences, biases, &guide, config));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(16, 512)->Complexity();

void BM_BuildAdjacency(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sentences = random_matrix(n, 384, 4);
  for (auto _ : state) benchmark::DoNotOptimize(mbtr::build_adjacency(sentences, 0.65));
}
BENCHMARK(BM_BuildAdjacency)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();
