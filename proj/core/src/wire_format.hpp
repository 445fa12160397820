#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbtr/providers.hpp"

namespace mbtr::wire {

nlohmann::json embed_request(std::span<const std::string> texts, EmbeddingModel model);
nlohmann::json texts_request(std::span<const std::string> texts);
nlohmann::json fill_mask_request(const std::string& text, std::size_t top_k);

// Each parser validates shape and count and throws kProviderModel on a
// malformed body.
Matrix parse_embed_response(const std::string& body, std::size_t expected);
std::vector<SentimentScore> parse_sentiment_response(const std::string& body, std::size_t expected);
std::vector<MaskPrediction> parse_fill_mask_response(const std::string& body, std::size_t top_k);
std::vector<Annotation> parse_annotate_response(const std::string& body, std::size_t expected);

}  // namespace mbtr::wire
