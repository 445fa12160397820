#include "mbtr/http_provider.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "mbtr/error.hpp"
#include "wire_format.hpp"

namespace mbtr {

using nlohmann::json;

HttpProvider::HttpProvider(const ProviderConfig& config, int retry_backoff_ms)
    : timeout_ms_(config.timeout_ms), retry_backoff_ms_(retry_backoff_ms) {
  if (!config.base_url || config.base_url->empty()) {
    throw Error(ErrorCode::kInvalidArgument, "http provider requires base_url");
  }
  std::string url = *config.base_url;
  const auto scheme_end = url.find("://");
  const auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  host_ = url.substr(0, path_start);
  if (path_start != std::string::npos) {
    path_prefix_ = url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
  const int slots = std::clamp(config.max_in_flight, 1, 1024);
  in_flight_ = std::make_unique<std::counting_semaphore<1024>>(slots);
}

HttpProvider::~HttpProvider() = default;

std::string HttpProvider::post(const std::string& path, const std::string& body) {
  in_flight_->acquire();
  struct Release {
    std::counting_semaphore<1024>* s;
    ~Release() { s->release(); }
  } release{in_flight_.get()};

  std::string last_error;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(retry_backoff_ms_ << (attempt - 1)));
    }
    httplib::Client client(host_);
    const auto timeout = std::chrono::milliseconds(timeout_ms_);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    auto res = client.Post(path_prefix_ + path, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kProviderModel,
                  path + " returned HTTP " + std::to_string(res->status) + ": " + res->body);
    }
    return res->body;
  }
  throw Error(ErrorCode::kProviderTransport,
              path + " failed after " + std::to_string(kMaxAttempts) + " attempts: " + last_error);
}

void HttpProvider::check_dimension(EmbeddingModel model, std::size_t dim) {
  std::lock_guard lock(dim_mutex_);
  auto [it, inserted] = dims_.emplace(model, dim);
  if (!inserted && it->second != dim) {
    throw Error(ErrorCode::kDimensionDrift,
                std::string(to_string(model)) + " embedding dimension changed from " +
                    std::to_string(it->second) + " to " + std::to_string(dim));
  }
}

Matrix HttpProvider::embed(std::span<const std::string> texts, EmbeddingModel model) {
  if (texts.empty()) throw Error(ErrorCode::kEmptyInput, "embed needs at least one text");
  const auto body = post("/v1/embed", wire::embed_request(texts, model).dump());
  Matrix out = wire::parse_embed_response(body, texts.size());
  check_dimension(model, out.cols());
  return out;
}

std::vector<SentimentScore> HttpProvider::sentiment(std::span<const std::string> texts) {
  if (texts.empty()) return {};
  const auto body = post("/v1/sentiment", wire::texts_request(texts).dump());
  return wire::parse_sentiment_response(body, texts.size());
}

std::vector<MaskPrediction> HttpProvider::fill_mask(const std::string& text, std::size_t top_k) {
  require_single_mask(text);
  const auto body = post("/v1/fill-mask", wire::fill_mask_request(text, top_k).dump());
  return wire::parse_fill_mask_response(body, top_k);
}

std::vector<Annotation> HttpProvider::annotate(std::span<const std::string> texts) {
  if (texts.empty()) return {};
  const auto body = post("/v1/annotate", wire::texts_request(texts).dump());
  return wire::parse_annotate_response(body, texts.size());
}

}  // namespace mbtr
