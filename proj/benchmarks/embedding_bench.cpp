#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "mbtr/numerics.hpp"
#include "mbtr/stub_provider.hpp"

namespace {

std::vector<std::string> sentences(std::size_t count) {
  std::mt19937_64 rng(9);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string s;
    for (int w = 0; w < 20; ++w) s += "tok" + std::to_string(rng() % 500) + " ";
    out.push_back(s);
  }
  return out;
}

void BM_StubEmbed(benchmark::State& state) {
  const auto texts = sentences(static_cast<std::size_t>(state.range(0)));
  mbtr::StubEmbedder embedder;
  for (auto _ : state) benchmark::DoNotOptimize(embedder.embed(texts, mbtr::EmbeddingModel::kSymmetric));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StubEmbed)->RangeMultiplier(4)->Range(4, 256);

void BM_CosineSimilarity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  mbtr::StubOptions options;
  options.dimension = 768;
  mbtr::StubEmbedder embedder(options);
  const auto m = embedder.embed(sentences(n), mbtr::EmbeddingModel::kSymmetric);
  for (auto _ : state) benchmark::DoNotOptimize(mbtr::cosine_similarity(m, m));
}
BENCHMARK(BM_CosineSimilarity)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
