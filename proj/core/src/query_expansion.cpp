#include "mbtr/query_expansion.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "mbtr/error.hpp"
#include "mbtr/text_pipeline.hpp"
#include "mbtr/tokenize.hpp"

namespace mbtr {

using nlohmann::json;

std::string Query::text() const { return join(terms, " "); }

std::string serialize_query(const Query& query) {
  json j = {{"label", query.label}, {"terms", query.terms}, {"entity_prepended", query.entity_prepended}};
  if (query.seed_text) j["seed"] = *query.seed_text;
  return j.dump();
}

Query parse_query(std::string_view json_line) {
  try {
    const json j = json::parse(json_line);
    Query q;
    q.label = j.at("label").get<std::string>();
    q.terms = j.at("terms").get<std::vector<std::string>>();
    q.entity_prepended = j.value("entity_prepended", false);
    if (j.contains("seed") && j["seed"].is_string()) q.seed_text = j["seed"].get<std::string>();
    return q;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad query record: ") + e.what());
  }
}

std::string_view to_string(BiasSource source) {
  return source == BiasSource::kEmbeddingSimilarity ? "embedding-similarity" : "sentiment-classifier";
}

void BiasSet::add_row(std::span<const double> row, BiasSource source) {
  bias_vectors.append_row(row);
  provenance.push_back(source);
}

namespace {

Query top_terms_query(std::string label, std::vector<TermCount> counts, std::size_t n_terms,
                      AnnotationProvider* annotator) {
  // Stable sort keeps first-occurrence order among equal counts.
  std::stable_sort(counts.begin(), counts.end(),
                   [](const TermCount& a, const TermCount& b) { return a.count > b.count; });
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < counts.size() && i < n_terms; ++i) terms.push_back(counts[i].term);
  Query q;
  q.label = std::move(label);
  q.terms = filter_terms(terms, annotator);
  if (q.terms.empty()) {
    throw Error(ErrorCode::kEmptyInput, q.label + " query: no terms survive filtering");
  }
  return q;
}

std::vector<std::size_t> find_term(std::string_view lower_sentence, std::string_view lower_term) {
  std::vector<std::size_t> hits;
  if (lower_term.empty()) return hits;
  for (auto pos = lower_sentence.find(lower_term); pos != std::string_view::npos;
       pos = lower_sentence.find(lower_term, pos + 1)) {
    const bool left_ok = pos == 0 || !is_word_char(lower_sentence[pos - 1]);
    const std::size_t end = pos + lower_term.size();
    const bool right_ok = end == lower_sentence.size() || !is_word_char(lower_sentence[end]);
    if (left_ok && right_ok) hits.push_back(pos);
  }
  return hits;
}

}  // namespace

Query frw_query(const std::vector<std::string>& references, std::size_t n_terms,
                AnnotationProvider* annotator) {
  if (references.empty()) throw Error(ErrorCode::kEmptyInput, "frw query needs at least one reference");
  return top_terms_query("frw", term_frequencies(references, TermUnit::kWord), n_terms, annotator);
}

Query frp_query(const std::vector<std::string>& references, AnnotationProvider& annotator,
                std::size_t n_terms) {
  if (references.empty()) throw Error(ErrorCode::kEmptyInput, "frp query needs at least one reference");
  return top_terms_query("frp", term_frequencies(references, TermUnit::kNounPhrase, &annotator), n_terms,
                         &annotator);
}

Query frp_btr_expand(const Query& seed, const std::vector<Phrase>& corpus_phrases,
                     EmbeddingProvider& embedder, const RankConfig& config, std::size_t n_out,
                     AnnotationProvider* annotator, std::optional<std::size_t> candidates) {
  if (corpus_phrases.empty()) throw Error(ErrorCode::kEmptyInput, "frp-btr expansion needs a phrase pool");
  if (seed.terms.empty()) throw Error(ErrorCode::kEmptyInput, "frp-btr expansion needs seed terms");

  std::vector<std::string> texts;
  texts.reserve(corpus_phrases.size());
  for (const auto& p : corpus_phrases) texts.push_back(p.core_text);
  const Matrix phrase_encodings = embedder.embed(texts, EmbeddingModel::kSymmetric);
  const std::string seed_text = seed.text();
  const Matrix seed_encoding = embedder.embed(std::span(&seed_text, 1), EmbeddingModel::kSymmetric);
  const Matrix bias = cosine_similarity(seed_encoding, phrase_encodings);

  RankConfig btr = config;
  btr.beta = 0.0;
  const RankResult ranked = rank(phrase_encodings, bias, nullptr, btr);

  std::vector<std::size_t> order = rank_order(ranked.scores);
  order.resize(std::min(order.size(), candidates.value_or(n_out)));
  // Position in `order` is the rank tie-breaker.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus_phrases[a].frequency > corpus_phrases[b].frequency;
  });

  std::vector<std::string> terms;
  for (std::size_t idx : order) terms.push_back(corpus_phrases[idx].core_text);
  terms = filter_terms(terms, annotator);
  if (terms.size() > n_out) terms.resize(n_out);

  Query q;
  q.label = "frp-btr";
  q.terms = std::move(terms);
  if (q.terms.empty()) throw Error(ErrorCode::kEmptyInput, "frp-btr: no phrases survive filtering");
  return q;
}

Query mpb2_expand(const Query& seed, const std::vector<std::string>& corpus_sentences,
                  MaskFillProvider* mask_filler, const Mpb2Options& options,
                  AnnotationProvider* annotator) {
  if (mask_filler == nullptr) {
    throw Error(ErrorCode::kProviderUnavailable, "mpb2 expansion needs a mask-fill provider");
  }
  const std::size_t first = seed.entity_prepended && !seed.terms.empty() ? 1 : 0;

  std::vector<std::string> lowered;
  lowered.reserve(corpus_sentences.size());
  for (const auto& s : corpus_sentences) lowered.push_back(to_lower(s));

  std::vector<std::string> terms(seed.terms.begin() + static_cast<std::ptrdiff_t>(first), seed.terms.end());
  std::vector<std::string> elected;
  for (std::size_t t = first; t < seed.terms.size(); ++t) {
    const std::string term = normalize_phrase(seed.terms[t]);
    std::size_t patterns = 0;
    for (std::size_t s = 0; s < corpus_sentences.size() && patterns < options.patterns_per_term; ++s) {
      for (std::size_t pos : find_term(lowered[s], term)) {
        if (patterns >= options.patterns_per_term) break;
        ++patterns;
        std::string masked = corpus_sentences[s];
        masked.replace(pos, term.size(), kMaskToken);
        const auto predictions = mask_filler->fill_mask(masked, options.per_term_k + 1);
        if (predictions.empty() || normalize_phrase(predictions.front().token) != term) continue;
        std::size_t taken = 0;
        for (std::size_t k = 1; k < predictions.size() && taken < options.per_term_k; ++k) {
          const std::string candidate = normalize_phrase(predictions[k].token);
          if (candidate.empty() || candidate == term) continue;
          elected.push_back(candidate);
          ++taken;
        }
      }
    }
    if (patterns == 0) spdlog::debug("mpb2: seed term '{}' does not occur in the corpus", term);
  }
  terms.insert(terms.end(), elected.begin(), elected.end());

  Query q;
  q.label = seed.label.empty() ? "mpb2" : seed.label + "-mpb2";
  q.terms = filter_terms(terms, annotator);
  if (first == 1) {
    q.terms.insert(q.terms.begin(), seed.terms.front());
    q.entity_prepended = true;
  }
  if (q.terms.empty()) throw Error(ErrorCode::kEmptyInput, "mpb2: no terms survive filtering");
  return q;
}

Query sentiment_qe(Sentiment sentiment, const SentimentPhrasePair& pair,
                   const std::vector<Phrase>& corpus_phrases, EmbeddingProvider& asymmetric_embedder,
                   std::size_t k, AnnotationProvider* annotator) {
  std::vector<std::string> pool;
  pool.reserve(corpus_phrases.size());
  for (const auto& p : corpus_phrases) pool.push_back(p.core_text);
  pool = filter_terms(pool, annotator);
  if (pool.empty()) throw Error(ErrorCode::kEmptyInput, "sentiment query expansion needs a phrase pool");

  const std::string& phrase = pair.select(sentiment);
  const Matrix pool_encodings = asymmetric_embedder.embed(pool, EmbeddingModel::kAsymmetric);
  const Matrix phrase_encoding = asymmetric_embedder.embed(std::span(&phrase, 1), EmbeddingModel::kAsymmetric);
  const Matrix sims = cosine_similarity(phrase_encoding, pool_encodings);

  std::vector<std::size_t> order = rank_order(sims.row(0));
  order.resize(std::min(order.size(), k));
  Query q;
  q.label = "sentiment-qe";
  q.seed_text = phrase;
  for (std::size_t idx : order) q.terms.push_back(pool[idx]);
  return q;
}

Query prepend_entity(Query query, const std::string& entity) {
  if (entity.empty()) {
    spdlog::warn("empty entity name; query '{}' left unchanged", query.label);
    return query;
  }
  if (query.entity_prepended && !query.terms.empty() && query.terms.front() == entity) return query;
  // A noun chunk such as "the acme router" duplicates the entity too.
  const auto strip_determiner = [](std::string t) {
    for (std::string_view det : {"the ", "a ", "an ", "this ", "that ", "my ", "our ", "your "}) {
      if (t.starts_with(det)) return t.substr(det.size());
    }
    return t;
  };
  const std::string key = strip_determiner(normalize_phrase(entity));
  std::erase_if(query.terms,
                [&](const std::string& t) { return strip_determiner(normalize_phrase(t)) == key; });
  query.terms.insert(query.terms.begin(), entity);
  query.entity_prepended = true;
  return query;
}

Query baseline_query(const std::string& entity, Sentiment sentiment) {
  Query q;
  q.label = "bq";
  q.terms = {"Why did " + entity + " receive " + std::string(to_string(sentiment)) + " feedback"};
  return q;
}

BiasSet build_bias_set(const std::vector<Query>& queries, const Matrix& sentence_encodings,
                       EmbeddingProvider& embedder, bool per_term_bias) {
  BiasSet set;
  set.queries = queries;
  std::vector<std::string> texts;
  for (const auto& q : queries) {
    if (q.terms.empty()) throw Error(ErrorCode::kEmptyInput, "query '" + q.label + "' has no terms");
    if (per_term_bias) {
      texts.insert(texts.end(), q.terms.begin(), q.terms.end());
    } else {
      texts.push_back(q.text());
    }
  }
  if (texts.empty()) return set;
  const Matrix encodings = embedder.embed(texts, EmbeddingModel::kSymmetric);
  const Matrix sims = cosine_similarity(encodings, sentence_encodings);
  for (std::size_t i = 0; i < sims.rows(); ++i) set.add_row(sims.row(i), BiasSource::kEmbeddingSimilarity);
  return set;
}

}  // namespace mbtr
