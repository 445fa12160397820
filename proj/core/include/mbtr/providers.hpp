#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbtr/numerics.hpp"
#include "mbtr/text_types.hpp"

namespace mbtr {

// Symmetric models embed sentences and queries into one space; asymmetric
// models are trained for short-query to passage retrieval.
enum class EmbeddingModel { kSymmetric, kAsymmetric };

std::string_view to_string(EmbeddingModel model);
EmbeddingModel parse_embedding_model(std::string_view name);

struct SentimentScore {
  double positive = 0.5;
  double negative = 0.5;

  double of(Sentiment s) const { return s == Sentiment::kPositive ? positive : negative; }
};

struct MaskPrediction {
  std::string token;
  double score = 0.0;
};

inline constexpr std::string_view kMaskToken = "[MASK]";

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // Row i encodes texts[i]. Every row of every call shares one dimension.
  virtual Matrix embed(std::span<const std::string> texts, EmbeddingModel model) = 0;
};

class SentimentProvider {
 public:
  virtual ~SentimentProvider() = default;
  virtual std::vector<SentimentScore> sentiment(std::span<const std::string> texts) = 0;
};

class MaskFillProvider {
 public:
  virtual ~MaskFillProvider() = default;
  // `text` must contain exactly one kMaskToken. Predictions are ordered by
  // descending score, at most top_k of them.
  virtual std::vector<MaskPrediction> fill_mask(const std::string& text, std::size_t top_k) = 0;
};

class AnnotationProvider {
 public:
  virtual ~AnnotationProvider() = default;
  virtual std::vector<Annotation> annotate(std::span<const std::string> texts) = 0;
};

// Throws kInvalidArgument unless `text` holds exactly one mask token.
void require_single_mask(std::string_view text);

enum class ProviderKind { kStub, kHttp };

struct StubOptions {
  std::size_t dimension = 4096;
  std::uint64_t seed = 17;
  // When false, sentence vectors keep norm sqrt(distinct token count), which
  // serves as an information-content proxy.
  bool normalize = true;
};

struct ProviderConfig {
  ProviderKind kind = ProviderKind::kStub;
  std::optional<std::string> base_url;
  int timeout_ms = 30000;
  int max_in_flight = 4;
  std::optional<std::string> cache_path;
  StubOptions stub;

  void validate() const;
};

// Bundle of the four provider roles used by the pipeline.
struct ProviderSet {
  std::shared_ptr<EmbeddingProvider> embedder;
  std::shared_ptr<SentimentProvider> sentiment;
  std::shared_ptr<MaskFillProvider> mask_fill;
  std::shared_ptr<AnnotationProvider> annotator;
};

// Builds the stub or HTTP providers and wraps the embedder with the on-disk
// cache when cache_path is set.
ProviderSet make_providers(const ProviderConfig& config);

}  // namespace mbtr
