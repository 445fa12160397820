#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mbtr/providers.hpp"
#include "mbtr/text_types.hpp"

namespace mbtr {

// Rule-based splitter: a sentence ends at a run of . ! ? (plus closing quotes
// or brackets) followed by whitespace or end of text, or at a blank line. A
// lone period after a known abbreviation ("Dr", "e.g", ...) does not end a
// sentence. Sentence texts are trimmed substrings, so
// every non-whitespace character of the document lands in exactly one
// sentence, in order.
std::vector<SentenceRecord> segment_sentences(std::string_view document, const std::string& unit_id = {},
                                              int doc_index = 0);

// Segments every document of a unit; sent_index restarts per document.
std::vector<SentenceRecord> segment_unit(const EssUnit& unit);

// Fills tokens and noun chunks from the provider, one batched call.
void annotate_sentences(std::vector<SentenceRecord>& sentences, AnnotationProvider& annotator);

// Provider noun chunks, lowercased, in sentence order. Throws
// kMissingAnnotation for an unannotated sentence.
std::vector<Phrase> extract_noun_phrases(const SentenceRecord& sentence);

// Matches of the verb-phrase pattern, leftmost-longest and non-overlapping.
// text keeps the leading wildcard token; core_text drops it.
std::vector<Phrase> extract_verb_phrases(const SentenceRecord& sentence);

// Noun and verb phrases of all sentences, merged by core_text with summed
// frequencies, first occurrence order. Unannotated sentences are skipped.
std::vector<Phrase> collect_phrases(const std::vector<SentenceRecord>& sentences);

enum class TermUnit { kWord, kNounPhrase };

struct TermCount {
  std::string term;
  int count = 0;
};

// Case-folded counts in first-occurrence order. Word mode drops stopwords.
// Noun-phrase mode needs an annotator; without one it returns nothing and
// logs a warning.
std::vector<TermCount> term_frequencies(const std::vector<std::string>& corpus, TermUnit unit,
                                        AnnotationProvider* annotator = nullptr);

// Labels whose mentions filter_terms removes.
const std::set<std::string, std::less<>>& default_filtered_entity_labels();

// Order-preserving, case-insensitive dedup; drops empty and stopword-only
// terms and, given an annotator, terms containing an entity mention with a
// filtered label.
std::vector<std::string> filter_terms(const std::vector<std::string>& terms,
                                      AnnotationProvider* annotator = nullptr,
                                      const std::set<std::string, std::less<>>& entity_labels =
                                          default_filtered_entity_labels());

}  // namespace mbtr
