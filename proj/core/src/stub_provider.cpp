#include "mbtr/stub_provider.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_set>

#include "mbtr/error.hpp"
#include "mbtr/stopwords.hpp"
#include "mbtr/tokenize.hpp"

namespace mbtr {
namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------- embedder

StubEmbedder::StubEmbedder(StubOptions options) : options_(options) {
  if (options_.dimension == 0) {
    throw Error(ErrorCode::kInvalidArgument, "stub embedding dimension must be positive");
  }
}

std::size_t StubEmbedder::basis_index(std::string_view token, EmbeddingModel model) const {
  const std::uint64_t salt = model == EmbeddingModel::kSymmetric ? 0x5359ULL : 0x4153ULL;
  const std::uint64_t h = mix(fnv1a(token, 0xcbf29ce484222325ULL ^ mix(options_.seed ^ salt)));
  return static_cast<std::size_t>(h % options_.dimension);
}

bool StubEmbedder::has_collision(const std::vector<std::string>& vocabulary,
                                 EmbeddingModel model) const {
  std::set<std::string> distinct(vocabulary.begin(), vocabulary.end());
  std::unordered_set<std::size_t> used;
  for (const auto& token : distinct) {
    if (!used.insert(basis_index(token, model)).second) return true;
  }
  return false;
}

Matrix StubEmbedder::embed(std::span<const std::string> texts, EmbeddingModel model) {
  if (texts.empty()) throw Error(ErrorCode::kEmptyInput, "embed needs at least one text");
  Matrix out(texts.size(), options_.dimension);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto tokens = word_tokens(texts[i]);
    const std::set<std::string> distinct(tokens.begin(), tokens.end());
    auto row = out.row(i);
    for (const auto& token : distinct) row[basis_index(token, model)] += 1.0;
    if (options_.normalize && !distinct.empty()) {
      const double norm = l2_norm(row);
      for (double& x : row) x /= norm;
    }
  }
  return out;
}

// ---------------------------------------------------------------- sentiment

StubSentimentClassifier::StubSentimentClassifier() {
  for (const char* w : {"bad", "terrible", "awful", "poor", "worst", "worse", "horrible", "broken",
                        "slow", "rude", "hate", "disappointing", "disappointed", "useless",
                        "expensive", "late", "crash", "crashed", "fail", "failed", "problem"}) {
    cues_.emplace(w, Sentiment::kNegative);
  }
  for (const char* w : {"good", "great", "excellent", "love", "loved", "best", "better", "amazing",
                        "fast", "friendly", "helpful", "reliable", "happy", "cheap", "perfect",
                        "nice", "recommend"}) {
    cues_.emplace(w, Sentiment::kPositive);
  }
}

void StubSentimentClassifier::add_cue(std::string word, Sentiment polarity) {
  cues_[to_lower(word)] = polarity;
}

SentimentScore StubSentimentClassifier::score(std::string_view text) const {
  int neg = 0;
  int pos = 0;
  for (const auto& token : word_tokens(text)) {
    auto it = cues_.find(token);
    if (it == cues_.end()) continue;
    (it->second == Sentiment::kNegative ? neg : pos) += 1;
  }
  if (neg + pos == 0) return {};
  const double negative = 0.5 + 0.4 * static_cast<double>(neg - pos) / static_cast<double>(neg + pos);
  return {1.0 - negative, negative};
}

std::vector<SentimentScore> StubSentimentClassifier::sentiment(std::span<const std::string> texts) {
  std::vector<SentimentScore> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(score(t));
  return out;
}

// ---------------------------------------------------------------- mask fill

void StubMaskFiller::add_exact(std::string masked_text, std::vector<MaskPrediction> predictions) {
  exact_[std::move(masked_text)] = std::move(predictions);
}

void StubMaskFiller::add_left_context(std::string word, std::vector<MaskPrediction> predictions) {
  left_[to_lower(word)] = std::move(predictions);
}

std::vector<MaskPrediction> StubMaskFiller::fill_mask(const std::string& text, std::size_t top_k) {
  require_single_mask(text);
  std::vector<MaskPrediction> out;
  if (auto it = exact_.find(text); it != exact_.end()) {
    out = it->second;
  } else {
    const auto left = word_tokens(std::string_view(text).substr(0, text.find(kMaskToken)));
    if (!left.empty()) {
      if (auto lt = left_.find(left.back()); lt != left_.end()) out = lt->second;
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const MaskPrediction& a, const MaskPrediction& b) { return a.score > b.score; });
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

// ---------------------------------------------------------------- annotator

namespace {

const std::set<std::string, std::less<>> kDeterminers = {
    "the", "a", "an", "this", "that", "these", "those", "each", "every", "some", "any", "no",
    "all", "both", "another"};
const std::set<std::string, std::less<>> kPronouns = {
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them", "my", "your",
    "his", "its", "our", "their", "mine", "yours", "myself", "itself", "themselves", "who",
    "whom", "which", "what"};
const std::set<std::string, std::less<>> kAuxiliaries = {
    "is", "am", "are", "was", "were", "be", "been", "being", "has", "have", "had", "do", "does",
    "did", "could", "should", "would", "will", "shall", "can", "may", "might", "must", "ca", "wo"};
const std::set<std::string, std::less<>> kNegations = {"not", "n't", "never"};
const std::set<std::string, std::less<>> kAdpositions = {
    "in", "on", "at", "by", "for", "with", "about", "against", "between", "into", "through",
    "during", "before", "after", "above", "below", "to", "from", "up", "down", "of", "off",
    "over", "under", "than"};
const std::set<std::string, std::less<>> kConjunctions = {"and", "or", "but", "nor", "yet"};
const std::set<std::string, std::less<>> kSubordinators = {"because", "although", "though",
                                                           "while", "if", "when", "whereas",
                                                           "since", "unless"};
const std::set<std::string, std::less<>> kAdverbs = {
    "very", "really", "quite", "too", "so", "rather", "extremely", "always", "often", "also",
    "just", "still", "even", "here", "there", "now", "then", "again", "ever", "almost", "much",
    "well", "fast", "soon", "badly"};
const std::set<std::string, std::less<>> kAdjectives = {
    "good", "bad", "great", "poor", "excellent", "terrible", "awful", "worse", "better", "best",
    "worst", "slow", "cheap", "expensive", "new", "old", "red", "blue", "green", "big", "small",
    "high", "low", "long", "short", "nice", "happy", "sad", "broken", "easy", "hard", "rude",
    "friendly", "late", "early", "quick", "quiet", "loud", "clean", "dirty", "strong", "weak",
    "amazing", "perfect", "fine", "bright", "dark", "hot", "cold", "unstable", "stable", "simple",
    "clear", "deep", "fair", "plain", "solid", "flimsy", "noisy", "sturdy", "reliable"};
const std::set<std::string, std::less<>> kVerbs = {
    "stop", "stopped", "drain", "drains", "go", "goes", "went", "left", "leave", "return",
    "returned", "trend", "trends", "react", "reacts", "perform", "performs", "seem", "seems",
    "feel", "feels", "felt", "become", "became", "get", "gets", "got", "make", "makes", "made",
    "love", "loves", "hate", "hates", "work", "works", "crash", "crashes", "broke", "sit", "sat",
    "kill", "kills", "receive", "receives", "look", "looks", "run", "runs", "ran", "arrive",
    "arrives", "take", "takes", "took", "keep", "keeps", "kept", "sound", "sounds", "turn",
    "turns", "charge", "charges", "fail", "fails"};
const std::set<std::string, std::less<>> kMonths = {
    "january", "february", "march", "april", "may", "june", "july", "august", "september",
    "october", "november", "december"};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_number(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
           return std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.' || c == ',';
         }) && std::isdigit(static_cast<unsigned char>(s.front())) != 0;
}

// Word runs (with internal apostrophes) and single punctuation characters;
// "isn't" splits into "is" + "n't".
std::vector<std::string> surface_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
      continue;
    }
    if (!is_word_char(c)) {
      out.emplace_back(1, c);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() &&
           (is_word_char(text[j]) ||
            (text[j] == '\'' && j + 1 < text.size() && is_word_char(text[j + 1]) && j > i))) {
      ++j;
    }
    std::string word(text.substr(i, j - i));
    const std::string lower = to_lower(word);
    if (ends_with(lower, "n't") && word.size() > 3) {
      out.push_back(word.substr(0, word.size() - 3));
      out.push_back(word.substr(word.size() - 3));
    } else {
      out.push_back(std::move(word));
    }
    i = j;
  }
  return out;
}

bool is_function_pos(std::string_view pos) {
  return pos == "DET" || pos == "PRON" || pos == "AUX" || pos == "PART" || pos == "ADP" ||
         pos == "CCONJ" || pos == "SCONJ" || pos == "PUNCT";
}

}  // namespace

void StubAnnotator::set_pos(std::string word, std::string pos) {
  pos_overrides_[to_lower(word)] = std::move(pos);
}

void StubAnnotator::add_entity(std::string phrase, std::string label) {
  auto tokens = word_tokens(phrase);
  if (!tokens.empty()) entities_.emplace_back(std::move(tokens), std::move(label));
}

std::string StubAnnotator::tag(const std::string& lower, bool capitalized, bool sentence_start) const {
  if (auto it = pos_overrides_.find(lower); it != pos_overrides_.end()) return it->second;
  if (lower.empty() || !is_word_char(lower.front())) return "PUNCT";
  if (is_number(lower)) return "NUM";
  if (kNegations.contains(lower)) return lower == "never" ? "ADV" : "PART";
  if (kDeterminers.contains(lower)) return "DET";
  if (kPronouns.contains(lower)) return "PRON";
  if (kAuxiliaries.contains(lower)) return "AUX";
  if (kAdpositions.contains(lower)) return "ADP";
  if (kConjunctions.contains(lower)) return "CCONJ";
  if (kSubordinators.contains(lower)) return "SCONJ";
  if (kAdjectives.contains(lower)) return "ADJ";
  if (kAdverbs.contains(lower)) return "ADV";
  if (kVerbs.contains(lower)) return "VERB";
  if (capitalized && !sentence_start) return "PROPN";
  if (lower.size() >= 5 && ends_with(lower, "ly")) return "ADV";
  if (lower.size() >= 5 && ends_with(lower, "ing")) return "VERB";
  if (lower.size() >= 4 && ends_with(lower, "ed")) return "VERB";
  for (std::string_view suffix : {"ful", "ous", "ive", "able", "ible", "less"}) {
    if (lower.size() >= suffix.size() + 3 && ends_with(lower, suffix)) return "ADJ";
  }
  return "NOUN";
}

Annotation StubAnnotator::annotate_one(std::string_view text) const {
  Annotation out;
  const auto surface = surface_tokens(text);
  bool sentence_start = true;
  for (const auto& word : surface) {
    AnnotatedToken tok;
    tok.text = word;
    tok.lemma = to_lower(word);
    const bool capitalized = std::isupper(static_cast<unsigned char>(word.front())) != 0;
    tok.pos = tag(tok.lemma, capitalized, sentence_start);
    tok.dep = kNegations.contains(tok.lemma) ? "neg" : "dep";
    tok.is_stopword = is_stopword(tok.lemma);
    out.tokens.push_back(std::move(tok));
    if (out.tokens.back().pos != "PUNCT") sentence_start = false;
  }

  auto& tokens = out.tokens;
  const std::size_t n = tokens.size();

  // Capitalized runs of two or more content words.
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && std::isupper(static_cast<unsigned char>(tokens[j].text.front())) != 0 &&
           !is_function_pos(tokens[j].pos)) {
      ++j;
    }
    if (j - i >= 2) {
      for (std::size_t k = i; k < j; ++k) tokens[k].entity_label = "ORG";
    }
    i = std::max(j, i + 1);
  }
  for (auto& tok : tokens) {
    if (kMonths.contains(tok.lemma) && tok.lemma != "may") tok.entity_label = "DATE";
    if (tok.lemma.size() == 4 && is_number(tok.lemma) &&
        (tok.lemma.starts_with("19") || tok.lemma.starts_with("20"))) {
      tok.entity_label = "DATE";
      tok.pos = "NUM";
    }
  }
  // Scripted entities.
  for (const auto& [phrase, label] : entities_) {
    for (std::size_t i = 0; i + phrase.size() <= n; ++i) {
      bool match = true;
      for (std::size_t k = 0; k < phrase.size() && match; ++k) {
        match = tokens[i + k].lemma == phrase[k];
      }
      if (match) {
        for (std::size_t k = 0; k < phrase.size(); ++k) tokens[i + k].entity_label = label;
      }
    }
  }

  // Noun chunks.
  auto is_modifier = [&](std::size_t k) {
    const auto& p = tokens[k].pos;
    return p == "ADJ" || p == "NUM" || p == "NOUN" || p == "PROPN";
  };
  auto is_head = [&](std::size_t k) {
    return tokens[k].pos == "NOUN" || tokens[k].pos == "PROPN";
  };
  for (std::size_t i = 0; i < n;) {
    if (tokens[i].pos != "DET" && !is_modifier(i)) {
      ++i;
      continue;
    }
    std::size_t j = tokens[i].pos == "DET" ? i + 1 : i;
    std::size_t last_head = n;
    while (j < n && is_modifier(j)) {
      if (is_head(j)) last_head = j;
      ++j;
    }
    if (last_head == n) {
      i = std::max(j, i + 1);
      continue;
    }
    out.noun_chunks.push_back({i, last_head + 1});
    i = last_head + 1;
  }
  return out;
}

std::vector<Annotation> StubAnnotator::annotate(std::span<const std::string> texts) {
  std::vector<Annotation> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(annotate_one(t));
  return out;
}

}  // namespace mbtr
