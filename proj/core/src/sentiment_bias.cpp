#include "mbtr/sentiment_bias.hpp"

#include <cmath>

#include "mbtr/error.hpp"

namespace mbtr {

Vector sentiment_bias_vector(const std::vector<SentenceRecord>& sentences, Sentiment sentiment,
                             SentimentProvider* classifier) {
  if (classifier == nullptr) {
    throw Error(ErrorCode::kProviderUnavailable, "sentiment bias needs a sentiment provider");
  }
  if (sentences.empty()) return {};
  std::vector<std::string> texts;
  texts.reserve(sentences.size());
  for (const auto& s : sentences) texts.push_back(s.text);
  const auto scores = classifier->sentiment(texts);
  if (scores.size() != sentences.size()) {
    throw Error(ErrorCode::kProviderModel, "sentiment provider returned " + std::to_string(scores.size()) +
                                               " scores for " + std::to_string(sentences.size()) +
                                               " sentences");
  }
  Vector out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double p = scores[i].of(sentiment);
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kProviderModel, "sentiment probability outside [0, 1]");
    }
    out[i] = p;
  }
  return out;
}

}  // namespace mbtr
