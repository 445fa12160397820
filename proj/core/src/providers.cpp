#include <algorithm>
#include <cmath>

#include "mbtr/embedding_cache.hpp"
#include "mbtr/error.hpp"
#include "mbtr/http_provider.hpp"
#include "mbtr/stub_provider.hpp"

namespace mbtr {

std::string_view to_string(EmbeddingModel model) {
  return model == EmbeddingModel::kSymmetric ? "symmetric" : "asymmetric";
}

EmbeddingModel parse_embedding_model(std::string_view name) {
  if (name == "symmetric") return EmbeddingModel::kSymmetric;
  if (name == "asymmetric") return EmbeddingModel::kAsymmetric;
  throw Error(ErrorCode::kInvalidArgument, "unknown embedding model '" + std::string(name) + "'");
}

void require_single_mask(std::string_view text) {
  std::size_t count = 0;
  for (auto pos = text.find(kMaskToken); pos != std::string_view::npos;
       pos = text.find(kMaskToken, pos + kMaskToken.size())) {
    ++count;
  }
  if (count != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "fill-mask input must contain exactly one " + std::string(kMaskToken) + ", found " +
                    std::to_string(count));
  }
}

void ProviderConfig::validate() const {
  if (kind == ProviderKind::kHttp && (!base_url || base_url->empty())) {
    throw Error(ErrorCode::kInvalidArgument, "http provider requires base_url");
  }
  if (timeout_ms <= 0) throw Error(ErrorCode::kInvalidArgument, "timeout_ms must be > 0");
  if (max_in_flight <= 0) throw Error(ErrorCode::kInvalidArgument, "max_in_flight must be > 0");
}

ProviderSet make_providers(const ProviderConfig& config) {
  config.validate();
  ProviderSet set;
  if (config.kind == ProviderKind::kStub) {
    auto stub = std::make_shared<StubProvider>(config.stub);
    set.embedder = stub;
    set.sentiment = stub;
    set.mask_fill = stub;
    set.annotator = stub;
  } else {
    auto http = std::make_shared<HttpProvider>(config);
    set.embedder = http;
    set.sentiment = http;
    set.mask_fill = http;
    set.annotator = http;
  }
  if (config.cache_path) {
    set.embedder = std::make_shared<CachedEmbedder>(
        set.embedder, std::make_shared<EmbeddingCache>(*config.cache_path));
  }
  return set;
}

}  // namespace mbtr
