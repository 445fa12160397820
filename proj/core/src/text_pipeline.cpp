#include "mbtr/text_pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "mbtr/error.hpp"
#include "mbtr/stopwords.hpp"
#include "mbtr/tokenize.hpp"
#include "mbtr/vp_matcher.hpp"

namespace mbtr {
namespace {

// v1 abbreviation list; common sentence-final abbreviations ("etc", "inc",
// "corp") are deliberately absent.
const std::set<std::string, std::less<>> kAbbreviations = {
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "e.g", "i.e", "fig", "no",
    "approx", "dept", "mt", "gen", "gov", "sen", "rep", "ave", "capt", "lt", "col", "sgt"};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}'; }

// The word that a period at `dot` terminates, without leading punctuation.
std::string word_before(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  std::string word(text.substr(begin, dot - begin));
  while (!word.empty() && !std::isalnum(static_cast<unsigned char>(word.front()))) word.erase(word.begin());
  return to_lower(word);
}

void warn_once(std::once_flag& flag, const char* message) {
  std::call_once(flag, [&] { spdlog::warn("{}", message); });
}

std::once_flag g_np_warning;
std::once_flag g_ner_warning;

std::string span_text(const std::vector<AnnotatedToken>& tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += tokens[i].text;
  }
  return normalize_phrase(out);
}

void require_annotations(const SentenceRecord& s) {
  if (!s.annotated) {
    throw Error(ErrorCode::kMissingAnnotation,
                "sentence " + std::to_string(s.doc_index) + ":" + std::to_string(s.sent_index) +
                    " has no token annotations");
  }
}

}  // namespace

std::vector<SentenceRecord> segment_sentences(std::string_view document, const std::string& unit_id,
                                              int doc_index) {
  std::vector<SentenceRecord> out;
  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && is_space(document[begin])) ++begin;
    while (end > begin && is_space(document[end - 1])) --end;
    if (begin == end) return;
    SentenceRecord rec;
    rec.unit_id = unit_id;
    rec.doc_index = doc_index;
    rec.sent_index = static_cast<int>(out.size());
    rec.text = std::string(document.substr(begin, end - begin));
    out.push_back(std::move(rec));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  const std::size_t n = document.size();
  while (i < n) {
    const char c = document[i];
    if (c == '\n') {
      // Blank line: a newline followed by optional spaces and another newline.
      std::size_t j = i + 1;
      while (j < n && is_space(document[j]) && document[j] != '\n') ++j;
      if (j < n && document[j] == '\n') {
        emit(start, i);
        while (j < n && is_space(document[j])) ++j;
        start = i = j;
        continue;
      }
      ++i;
      continue;
    }
    if (!is_terminator(c)) {
      ++i;
      continue;
    }
    std::size_t term_end = i;
    while (term_end < n && is_terminator(document[term_end])) ++term_end;
    std::size_t j = term_end;
    while (j < n && is_closer(document[j])) ++j;
    if (j < n && !is_space(document[j])) {
      i = j;
      continue;
    }
    if (c == '.' && term_end == i + 1 && j < n && kAbbreviations.contains(word_before(document, i))) {
      i = j;
      continue;
    }
    emit(start, j);
    start = i = j;
  }
  emit(start, n);
  return out;
}

std::vector<SentenceRecord> segment_unit(const EssUnit& unit) {
  std::vector<SentenceRecord> out;
  for (std::size_t d = 0; d < unit.documents.size(); ++d) {
    auto sents = segment_sentences(unit.documents[d], unit.id, static_cast<int>(d));
    std::move(sents.begin(), sents.end(), std::back_inserter(out));
  }
  return out;
}

void annotate_sentences(std::vector<SentenceRecord>& sentences, AnnotationProvider& annotator) {
  if (sentences.empty()) return;
  std::vector<std::string> texts;
  texts.reserve(sentences.size());
  for (const auto& s : sentences) texts.push_back(s.text);
  auto annotations = annotator.annotate(texts);
  if (annotations.size() != sentences.size()) {
    throw Error(ErrorCode::kProviderModel, "annotator returned a different number of annotations");
  }
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    sentences[i].tokens = std::move(annotations[i].tokens);
    sentences[i].noun_chunks = std::move(annotations[i].noun_chunks);
    sentences[i].annotated = true;
  }
}

std::vector<Phrase> extract_noun_phrases(const SentenceRecord& sentence) {
  require_annotations(sentence);
  std::vector<Phrase> out;
  for (const auto& chunk : sentence.noun_chunks) {
    if (chunk.start >= chunk.end || chunk.end > sentence.tokens.size()) {
      throw Error(ErrorCode::kMissingAnnotation, "noun chunk outside the sentence's tokens");
    }
    Phrase p;
    p.text = span_text(sentence.tokens, chunk.start, chunk.end);
    if (p.text.empty()) continue;
    p.core_text = p.text;
    p.kind = PhraseKind::kNoun;
    p.doc_index = sentence.doc_index;
    p.sent_index = sentence.sent_index;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Phrase> extract_verb_phrases(const SentenceRecord& sentence) {
  require_annotations(sentence);
  std::vector<Phrase> out;
  for (const auto& span : find_matches(sentence.tokens, verb_phrase_pattern())) {
    Phrase p;
    p.text = span_text(sentence.tokens, span.start, span.end);
    p.core_text = span_text(sentence.tokens, span.start + 1, span.end);
    p.kind = PhraseKind::kVerb;
    p.doc_index = sentence.doc_index;
    p.sent_index = sentence.sent_index;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Phrase> collect_phrases(const std::vector<SentenceRecord>& sentences) {
  std::vector<Phrase> out;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&](Phrase p) {
    if (p.core_text.empty()) return;
    auto [it, inserted] = index.emplace(p.core_text, out.size());
    if (inserted) {
      out.push_back(std::move(p));
    } else {
      out[it->second].frequency += 1;
    }
  };
  for (const auto& s : sentences) {
    if (!s.annotated) continue;
    for (auto& p : extract_noun_phrases(s)) add(std::move(p));
    for (auto& p : extract_verb_phrases(s)) add(std::move(p));
  }
  return out;
}

std::vector<TermCount> term_frequencies(const std::vector<std::string>& corpus, TermUnit unit,
                                        AnnotationProvider* annotator) {
  std::vector<TermCount> out;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&](std::string term) {
    auto [it, inserted] = index.emplace(term, out.size());
    if (inserted) {
      out.push_back({std::move(term), 1});
    } else {
      out[it->second].count += 1;
    }
  };

  if (unit == TermUnit::kWord) {
    for (const auto& text : corpus) {
      for (auto& w : word_tokens(text)) {
        if (!is_stopword(w)) add(std::move(w));
      }
    }
    return out;
  }

  if (annotator == nullptr) {
    warn_once(g_np_warning, "no annotation provider configured; noun-phrase terms are unavailable");
    return out;
  }
  if (corpus.empty()) return out;
  const auto annotations = annotator->annotate(corpus);
  for (const auto& ann : annotations) {
    for (const auto& chunk : ann.noun_chunks) {
      auto text = span_text(ann.tokens, chunk.start, chunk.end);
      if (!text.empty()) add(std::move(text));
    }
  }
  return out;
}

const std::set<std::string, std::less<>>& default_filtered_entity_labels() {
  static const std::set<std::string, std::less<>> labels = {"DATE", "ORG", "PERSON"};
  return labels;
}

std::vector<std::string> filter_terms(const std::vector<std::string>& terms,
                                      AnnotationProvider* annotator,
                                      const std::set<std::string, std::less<>>& entity_labels) {
  std::vector<std::string> kept;
  std::set<std::string, std::less<>> seen;
  for (const auto& term : terms) {
    const std::string key = normalize_phrase(term);
    if (key.empty() || is_stopword_only(key)) continue;
    if (!seen.insert(key).second) continue;
    kept.push_back(term);
  }
  if (kept.empty()) return kept;
  if (annotator == nullptr) {
    warn_once(g_ner_warning, "no annotation provider configured; entity filtering skipped");
    return kept;
  }
  const auto annotations = annotator->annotate(kept);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto& tokens = annotations.at(i).tokens;
    const bool mentions_entity = std::any_of(tokens.begin(), tokens.end(), [&](const AnnotatedToken& t) {
      return t.entity_label && entity_labels.contains(*t.entity_label);
    });
    if (!mentions_entity) out.push_back(kept[i]);
  }
  return out;
}

}  // namespace mbtr
