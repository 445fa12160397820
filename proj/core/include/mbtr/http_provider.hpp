#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>

#include "mbtr/providers.hpp"

namespace mbtr {

// Client for the sidecar wire protocol:
//   POST /v1/embed      {"model","texts"}       -> {"dim","vectors"}
//   POST /v1/sentiment  {"texts"}               -> {"scores":[{"positive","negative"}]}
//   POST /v1/fill-mask  {"text","top_k"}        -> {"predictions":[{"token","score"}]}
//   POST /v1/annotate   {"texts"}               -> {"annotations":[{"tokens","noun_chunks"}]}
// Transport failures are retried (3 attempts, exponential backoff); HTTP
// error statuses are terminal. Safe to share across threads; at most
// max_in_flight requests run at once.
class HttpProvider final : public EmbeddingProvider,
                           public SentimentProvider,
                           public MaskFillProvider,
                           public AnnotationProvider {
 public:
  explicit HttpProvider(const ProviderConfig& config, int retry_backoff_ms = 100);
  ~HttpProvider() override;

  Matrix embed(std::span<const std::string> texts, EmbeddingModel model) override;
  std::vector<SentimentScore> sentiment(std::span<const std::string> texts) override;
  std::vector<MaskPrediction> fill_mask(const std::string& text, std::size_t top_k) override;
  std::vector<Annotation> annotate(std::span<const std::string> texts) override;

  static constexpr int kMaxAttempts = 3;

 private:
  std::string post(const std::string& path, const std::string& body);
  void check_dimension(EmbeddingModel model, std::size_t dim);

  std::string host_;         // scheme://host:port
  std::string path_prefix_;  // optional path component of base_url
  int timeout_ms_;
  int retry_backoff_ms_;
  std::unique_ptr<std::counting_semaphore<1024>> in_flight_;
  std::mutex dim_mutex_;
  std::map<EmbeddingModel, std::size_t> dims_;
};

}  // namespace mbtr
