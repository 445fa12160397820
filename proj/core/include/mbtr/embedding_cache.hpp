#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>

#include "mbtr/providers.hpp"

namespace mbtr {

std::string sha256_hex(std::string_view text);

// Persistent JSON-lines store of {model, text_sha256, dim, vector} records,
// keyed by (model, sha256 of the exact text). Entries are write-once; readers
// may run concurrently with a single writer.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(std::filesystem::path path);

  std::optional<Vector> lookup(EmbeddingModel model, std::string_view text) const;
  // Returns false when the key already existed (the stored vector wins).
  bool store(EmbeddingModel model, std::string_view text, std::span<const double> vector);

  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  using Key = std::pair<EmbeddingModel, std::string>;

  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  std::map<Key, Vector> entries_;
  std::ofstream out_;
};

// Consults the cache before delegating the misses, in one batch, to `inner`.
class CachedEmbedder final : public EmbeddingProvider {
 public:
  CachedEmbedder(std::shared_ptr<EmbeddingProvider> inner, std::shared_ptr<EmbeddingCache> cache);

  Matrix embed(std::span<const std::string> texts, EmbeddingModel model) override;

  const EmbeddingCache& cache() const { return *cache_; }

 private:
  std::shared_ptr<EmbeddingProvider> inner_;
  std::shared_ptr<EmbeddingCache> cache_;
};

}  // namespace mbtr
