#include "wire_format.hpp"

#include <algorithm>
#include <cmath>

#include "mbtr/error.hpp"

namespace mbtr {

using nlohmann::json;

namespace wire {
namespace {

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kProviderModel, std::string("malformed provider response: ") + e.what());
  }
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kProviderModel, "malformed provider response: " + what);
}

}  // namespace

json embed_request(std::span<const std::string> texts, EmbeddingModel model) {
  return {{"model", std::string(to_string(model))},
          {"texts", std::vector<std::string>(texts.begin(), texts.end())}};
}

json texts_request(std::span<const std::string> texts) {
  return {{"texts", std::vector<std::string>(texts.begin(), texts.end())}};
}

json fill_mask_request(const std::string& text, std::size_t top_k) {
  return {{"text", text}, {"top_k", top_k}};
}

Matrix parse_embed_response(const std::string& body, std::size_t expected) {
  const json j = parse_body(body);
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    const auto& vectors = j.at("vectors");
    if (vectors.size() != expected) {
      malformed("expected " + std::to_string(expected) + " vectors, got " +
                std::to_string(vectors.size()));
    }
    Matrix out(expected, dim);
    for (std::size_t i = 0; i < expected; ++i) {
      const auto row = vectors[i].get<std::vector<double>>();
      if (row.size() != dim) malformed("vector length differs from declared dim");
      for (double x : row) {
        if (!std::isfinite(x)) malformed("non-finite embedding value");
      }
      std::copy(row.begin(), row.end(), out.row(i).begin());
    }
    return out;
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

std::vector<SentimentScore> parse_sentiment_response(const std::string& body, std::size_t expected) {
  const json j = parse_body(body);
  try {
    const auto& scores = j.at("scores");
    if (scores.size() != expected) malformed("sentiment score count mismatch");
    std::vector<SentimentScore> out;
    for (const auto& s : scores) {
      SentimentScore score{s.at("positive").get<double>(), s.at("negative").get<double>()};
      if (!(score.positive >= 0.0 && score.positive <= 1.0 && score.negative >= 0.0 &&
            score.negative <= 1.0)) {
        malformed("sentiment probability outside [0, 1]");
      }
      out.push_back(score);
    }
    return out;
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

std::vector<MaskPrediction> parse_fill_mask_response(const std::string& body, std::size_t top_k) {
  const json j = parse_body(body);
  try {
    std::vector<MaskPrediction> out;
    for (const auto& p : j.at("predictions")) {
      out.push_back({p.at("token").get<std::string>(), p.at("score").get<double>()});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const MaskPrediction& a, const MaskPrediction& b) { return a.score > b.score; });
    if (out.size() > top_k) out.resize(top_k);
    return out;
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

std::vector<Annotation> parse_annotate_response(const std::string& body, std::size_t expected) {
  const json j = parse_body(body);
  try {
    const auto& annotations = j.at("annotations");
    if (annotations.size() != expected) malformed("annotation count mismatch");
    std::vector<Annotation> out;
    for (const auto& a : annotations) {
      Annotation ann;
      for (const auto& t : a.at("tokens")) {
        AnnotatedToken tok;
        tok.text = t.at("text").get<std::string>();
        tok.lemma = t.value("lemma", tok.text);
        tok.pos = t.at("pos").get<std::string>();
        tok.dep = t.value("dep", std::string());
        tok.is_stopword = t.value("is_stop", false);
        if (t.contains("ent") && t["ent"].is_string() && !t["ent"].get<std::string>().empty()) {
          tok.entity_label = t["ent"].get<std::string>();
        }
        ann.tokens.push_back(std::move(tok));
      }
      if (a.contains("noun_chunks")) {
        for (const auto& c : a["noun_chunks"]) {
          TokenSpan span{c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>()};
          if (span.start >= span.end || span.end > ann.tokens.size()) {
            malformed("noun chunk outside token range");
          }
          ann.noun_chunks.push_back(span);
        }
      }
      out.push_back(std::move(ann));
    }
    return out;
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

}  // namespace wire
}  // namespace mbtr
