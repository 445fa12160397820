#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mbtr/providers.hpp"

namespace mbtr {

// Bag-of-tokens embedder: every distinct word token maps to a standard basis
// direction chosen by a seeded hash, and a text is the sum of its distinct
// token directions (optionally unit-normalized). Absent hash collisions,
// cosine(s1, s2) = |T1 ∩ T2| / sqrt(|T1| |T2|) and the unnormalized norm is
// sqrt(|T|). The asymmetric model uses a different hash salt.
class StubEmbedder final : public EmbeddingProvider {
 public:
  explicit StubEmbedder(StubOptions options = {});

  Matrix embed(std::span<const std::string> texts, EmbeddingModel model) override;

  std::size_t basis_index(std::string_view token, EmbeddingModel model) const;
  // True when two distinct tokens of `vocabulary` share a basis direction.
  bool has_collision(const std::vector<std::string>& vocabulary, EmbeddingModel model) const;
  const StubOptions& options() const { return options_; }

 private:
  StubOptions options_;
};

// Keyword rule: each negative cue counts against each positive cue;
// negative = 0.5 + 0.4 * (neg - pos) / (neg + pos). No cue gives {0.5, 0.5}.
class StubSentimentClassifier final : public SentimentProvider {
 public:
  StubSentimentClassifier();

  std::vector<SentimentScore> sentiment(std::span<const std::string> texts) override;
  SentimentScore score(std::string_view text) const;

  void add_cue(std::string word, Sentiment polarity);

 private:
  std::map<std::string, Sentiment, std::less<>> cues_;
};

// Scripted mask filler. Lookup order: the exact masked text, then the word
// immediately left of the mask. Unknown contexts predict nothing.
class StubMaskFiller final : public MaskFillProvider {
 public:
  std::vector<MaskPrediction> fill_mask(const std::string& text, std::size_t top_k) override;

  void add_exact(std::string masked_text, std::vector<MaskPrediction> predictions);
  void add_left_context(std::string word, std::vector<MaskPrediction> predictions);

 private:
  std::map<std::string, std::vector<MaskPrediction>, std::less<>> exact_;
  std::map<std::string, std::vector<MaskPrediction>, std::less<>> left_;
};

// Lexicon-and-suffix tagger with a rule chunker:
//  - noun chunk = optional determiner, modifiers, ending at the last NOUN/PROPN
//  - two or more adjacent capitalized non-function words -> ORG entity
//  - month names and four-digit years -> DATE
// Scripted overrides take precedence over the rules.
class StubAnnotator final : public AnnotationProvider {
 public:
  std::vector<Annotation> annotate(std::span<const std::string> texts) override;
  Annotation annotate_one(std::string_view text) const;

  void set_pos(std::string word, std::string pos);
  // `phrase` is matched case-insensitively on token boundaries.
  void add_entity(std::string phrase, std::string label);

 private:
  std::string tag(const std::string& lower, bool capitalized, bool sentence_start) const;

  std::map<std::string, std::string, std::less<>> pos_overrides_;
  std::vector<std::pair<std::vector<std::string>, std::string>> entities_;
};

class StubProvider final : public EmbeddingProvider,
                           public SentimentProvider,
                           public MaskFillProvider,
                           public AnnotationProvider {
 public:
  explicit StubProvider(StubOptions options = {}) : embedder_(options) {}

  Matrix embed(std::span<const std::string> texts, EmbeddingModel model) override {
    return embedder_.embed(texts, model);
  }
  std::vector<SentimentScore> sentiment(std::span<const std::string> texts) override {
    return classifier_.sentiment(texts);
  }
  std::vector<MaskPrediction> fill_mask(const std::string& text, std::size_t top_k) override {
    return mask_filler_.fill_mask(text, top_k);
  }
  std::vector<Annotation> annotate(std::span<const std::string> texts) override {
    return annotator_.annotate(texts);
  }

  StubEmbedder& embedder() { return embedder_; }
  StubSentimentClassifier& classifier() { return classifier_; }
  StubMaskFiller& mask_filler() { return mask_filler_; }
  StubAnnotator& annotator() { return annotator_; }

 private:
  StubEmbedder embedder_;
  StubSentimentClassifier classifier_;
  StubMaskFiller mask_filler_;
  StubAnnotator annotator_;
};

}  // namespace mbtr
