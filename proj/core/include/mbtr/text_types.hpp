#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mbtr {

enum class Sentiment { kPositive, kNegative };

Sentiment parse_sentiment(std::string_view name);
std::string_view to_string(Sentiment sentiment);

// One dataset record: documents about an entity plus the sentiment to explain.
struct EssUnit {
  std::string id;
  std::string entity;
  Sentiment sentiment = Sentiment::kNegative;
  std::vector<std::string> documents;
  std::optional<std::string> reference;  // absent for inference-only units
};

// Universal POS tags (coarse), dependency label, and NER label as produced by
// an annotation provider.
struct AnnotatedToken {
  std::string text;
  std::string lemma;
  std::string pos;
  std::string dep;
  bool is_stopword = false;
  std::optional<std::string> entity_label;
};

// Half-open token range [start, end).
struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct Annotation {
  std::vector<AnnotatedToken> tokens;
  std::vector<TokenSpan> noun_chunks;
};

struct SentenceRecord {
  std::string unit_id;
  int doc_index = 0;
  int sent_index = 0;
  std::string text;
  std::vector<AnnotatedToken> tokens;    // empty until annotated
  std::vector<TokenSpan> noun_chunks;    // provider chunker output
  bool annotated = false;
};

enum class PhraseKind { kNoun, kVerb };

struct Phrase {
  // Lowercased, whitespace-normalized matched text.
  std::string text;
  // Text used for embedding and as a query term. For verb phrases this drops
  // the leading wildcard token of the match; for noun phrases it equals text.
  std::string core_text;
  PhraseKind kind = PhraseKind::kNoun;
  int doc_index = 0;
  int sent_index = 0;
  int frequency = 1;
};

}  // namespace mbtr
