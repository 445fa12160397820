#include "mbtr/embedding_cache.hpp"

#include <array>
#include <cstdio>

#include <json.hpp>
#include <openssl/evp.h>

#include "mbtr/error.hpp"

namespace mbtr {

using nlohmann::json;

std::string sha256_hex(std::string_view text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

EmbeddingCache::EmbeddingCache(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(path_)) {
    std::ifstream in(path_);
    if (!in) throw Error(ErrorCode::kIo, "cannot read embedding cache " + path_.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        const json j = json::parse(line);
        const auto model = parse_embedding_model(j.at("model").get<std::string>());
        auto vec = j.at("vector").get<Vector>();
        if (vec.size() != j.at("dim").get<std::size_t>()) {
          throw Error(ErrorCode::kParse, "dim does not match vector length");
        }
        entries_.try_emplace(Key{model, j.at("text_sha256").get<std::string>()}, std::move(vec));
      } catch (const std::exception& e) {
        throw Error(ErrorCode::kParse, path_.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
  } else if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  out_.open(path_, std::ios::app);
  if (!out_) throw Error(ErrorCode::kIo, "cannot open embedding cache " + path_.string());
}

std::optional<Vector> EmbeddingCache::lookup(EmbeddingModel model, std::string_view text) const {
  const Key key{model, sha256_hex(text)};
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool EmbeddingCache::store(EmbeddingModel model, std::string_view text,
                           std::span<const double> vector) {
  Key key{model, sha256_hex(text)};
  std::unique_lock lock(mutex_);
  if (entries_.contains(key)) return false;
  const json record = {{"model", std::string(to_string(model))},
                       {"text_sha256", key.second},
                       {"dim", vector.size()},
                       {"vector", Vector(vector.begin(), vector.end())}};
  out_ << record.dump() << '\n';
  out_.flush();
  entries_.emplace(std::move(key), Vector(vector.begin(), vector.end()));
  return true;
}

std::size_t EmbeddingCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

CachedEmbedder::CachedEmbedder(std::shared_ptr<EmbeddingProvider> inner,
                               std::shared_ptr<EmbeddingCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

Matrix CachedEmbedder::embed(std::span<const std::string> texts, EmbeddingModel model) {
  if (texts.empty()) throw Error(ErrorCode::kEmptyInput, "embed needs at least one text");
  std::vector<std::optional<Vector>> rows(texts.size());
  std::vector<std::string> misses;
  std::map<std::string, std::size_t, std::less<>> miss_index;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    rows[i] = cache_->lookup(model, texts[i]);
    if (!rows[i] && !miss_index.contains(texts[i])) {
      miss_index.emplace(texts[i], misses.size());
      misses.push_back(texts[i]);
    }
  }
  Matrix fetched;
  if (!misses.empty()) {
    fetched = inner_->embed(misses, model);
    for (std::size_t i = 0; i < misses.size(); ++i) cache_->store(model, misses[i], fetched.row(i));
  }

  std::size_t dim = 0;
  for (const auto& r : rows) {
    if (r) {
      dim = r->size();
      break;
    }
  }
  if (dim == 0) dim = fetched.cols();
  if (!misses.empty() && fetched.cols() != dim) {
    throw Error(ErrorCode::kDimensionDrift, "cached and freshly computed embeddings differ in dimension");
  }
  Matrix out(texts.size(), dim);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    std::span<const double> src;
    if (rows[i]) {
      src = *rows[i];
    } else {
      src = fetched.row(miss_index.find(texts[i])->second);
    }
    if (src.size() != dim) {
      throw Error(ErrorCode::kDimensionDrift, "embedding cache holds vectors of differing dimension");
    }
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace mbtr
