#pragma once

#include <vector>

#include "mbtr/numerics.hpp"
#include "mbtr/providers.hpp"
#include "mbtr/text_types.hpp"

namespace mbtr {

// Classifier probability of the queried sentiment for every sentence. The
// row joins a BiasSet unscaled; the compound normalization handles it.
Vector sentiment_bias_vector(const std::vector<SentenceRecord>& sentences, Sentiment sentiment,
                             SentimentProvider* classifier);

}  // namespace mbtr
