#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbtr/numerics.hpp"
#include "mbtr/providers.hpp"
#include "mbtr/rank_engine.hpp"
#include "mbtr/text_types.hpp"

namespace mbtr {

struct Query {
  std::string label;  // frw, frp, frp-btr, frw-mpb2, frp-mpb2, sentiment-qe, bq, user
  std::vector<std::string> terms;
  bool entity_prepended = false;
  // The phrase a sentiment query was grown from.
  std::optional<std::string> seed_text;

  // Space-joined terms; the text that gets embedded.
  std::string text() const;
};

// JSON-lines record {"label", "terms", "entity_prepended"[, "seed"]}.
std::string serialize_query(const Query& query);
Query parse_query(std::string_view json_line);

enum class BiasSource { kEmbeddingSimilarity, kSentimentClassifier };
std::string_view to_string(BiasSource source);

struct BiasSet {
  std::vector<Query> queries;
  Matrix bias_vectors;  // one row per bias, one column per sentence
  std::vector<BiasSource> provenance;

  void add_row(std::span<const double> row, BiasSource source);
};

// Frequent reference words: the n_terms most frequent non-stopwords of the
// references (ties by first occurrence), then filter_terms.
Query frw_query(const std::vector<std::string>& references, std::size_t n_terms = 20,
                AnnotationProvider* annotator = nullptr);

// Frequent reference phrases: as frw_query over provider noun chunks.
Query frp_query(const std::vector<std::string>& references, AnnotationProvider& annotator,
                std::size_t n_terms = 20);

// Ranks the phrase pool with single-bias TextRank (beta = 0) biased by the
// seed, keeps the `candidates` best (default n_out), re-sorts them by corpus
// frequency (ties by rank) and returns at most n_out filtered phrases.
Query frp_btr_expand(const Query& seed, const std::vector<Phrase>& corpus_phrases,
                     EmbeddingProvider& embedder, const RankConfig& config, std::size_t n_out = 20,
                     AnnotationProvider* annotator = nullptr,
                     std::optional<std::size_t> candidates = std::nullopt);

struct Mpb2Options {
  std::size_t per_term_k = 3;
  std::size_t patterns_per_term = 10;
};

// Masks each seed term in up to patterns_per_term corpus sentences that
// contain it. Where the filler's top prediction recovers the term, its next
// predictions (up to per_term_k) are elected. Output = seed terms followed by
// elected terms, filtered. The prepended entity is neither masked nor
// filtered.
Query mpb2_expand(const Query& seed, const std::vector<std::string>& corpus_sentences,
                  MaskFillProvider* mask_filler, const Mpb2Options& options = {},
                  AnnotationProvider* annotator = nullptr);

struct SentimentPhrasePair {
  std::string positive = "excellent service";
  std::string negative = "poor experience";

  const std::string& select(Sentiment s) const { return s == Sentiment::kPositive ? positive : negative; }
};

// The K pool phrases closest (cosine, asymmetric encoder) to the sentiment's
// phrase; ties by pool order. The pool is filtered first, so the result has
// min(K, filtered pool size) terms.
Query sentiment_qe(Sentiment sentiment, const SentimentPhrasePair& pair,
                   const std::vector<Phrase>& corpus_phrases, EmbeddingProvider& asymmetric_embedder,
                   std::size_t k = 30, AnnotationProvider* annotator = nullptr);

// Entity as term 0; other copies of it (also behind a determiner) are removed.
// Idempotent; an empty entity leaves the query unchanged.
Query prepend_entity(Query query, const std::string& entity);

// "Why did {entity} receive {positive, negative} feedback"
Query baseline_query(const std::string& entity, Sentiment sentiment);

// One cosine bias row per query (or per term with per_term_bias) against the
// sentence encodings, all from the symmetric model.
BiasSet build_bias_set(const std::vector<Query>& queries, const Matrix& sentence_encodings,
                       EmbeddingProvider& embedder, bool per_term_bias = false);

}  // namespace mbtr
