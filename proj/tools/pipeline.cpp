#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "mbtr/sentiment_bias.hpp"
#include "mbtr/text_pipeline.hpp"
#include "mbtr/tokenize.hpp"

namespace mbtr::cli {

using json = nlohmann::ordered_json;

QueryMethod parse_query_method(std::string_view name) {
  if (name == "bq") return QueryMethod::kBaseline;
  if (name == "ert") return QueryMethod::kErt;
  if (name == "sb") return QueryMethod::kSentiment;
  if (name == "user") return QueryMethod::kUser;
  throw Error(ErrorCode::kInvalidArgument, "unknown query method '" + std::string(name) + "' (bq|ert|sb|user)");
}

std::string_view to_string(QueryMethod method) {
  switch (method) {
    case QueryMethod::kBaseline: return "bq";
    case QueryMethod::kErt: return "ert";
    case QueryMethod::kSentiment: return "sb";
    case QueryMethod::kUser: return "user";
  }
  return "?";
}

UnitSelection parse_unit_selection(std::string_view name) {
  if (name == "test") return UnitSelection::kTest;
  if (name == "dev") return UnitSelection::kDev;
  if (name == "all") return UnitSelection::kAll;
  throw Error(ErrorCode::kInvalidArgument, "unknown unit selection '" + std::string(name) + "' (test|dev|all)");
}

TermSource parse_term_source(std::string_view name) {
  if (name == "references") return TermSource::kReferences;
  if (name == "documents") return TermSource::kDocuments;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown term source '" + std::string(name) + "' (references|documents)");
}

double RunConfig::effective_beta() const {
  if (beta) return *beta;
  switch (method) {
    case QueryMethod::kErt: return 0.1;
    case QueryMethod::kSentiment: return 0.2;
    default: return 0.0;
  }
}

RankConfig RunConfig::effective_rank() const {
  RankConfig out = rank;
  out.beta = effective_beta();
  return out;
}

void RunConfig::validate() const {
  effective_rank().validate();
  if (!(dev_ratio > 0.0 && dev_ratio < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "split ratio must lie in (0, 1)");
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (jobs < 1) throw Error(ErrorCode::kInvalidArgument, "jobs must be at least 1");
  if (n_terms < 1 || sentiment_k < 1) throw Error(ErrorCode::kInvalidArgument, "term counts must be positive");
  if (method == QueryMethod::kUser && user_queries.empty())
    throw Error(ErrorCode::kInvalidArgument, "method 'user' needs at least one --query");
  provider.validate();
}

std::string UnitPrediction::summary() const { return join(sentences, " "); }

namespace {

bool needs_dev(const RunConfig& config, bool need_guide) {
  return config.method == QueryMethod::kErt || (need_guide && config.guide_texts.empty());
}

std::vector<std::string> dev_texts(const RunContext& context, TermSource source) {
  std::vector<std::string> out;
  for (std::size_t i : context.split.dev) {
    const EssUnit& unit = context.dataset[i];
    if (source == TermSource::kReferences) {
      if (unit.reference) out.push_back(*unit.reference);
    } else {
      out.insert(out.end(), unit.documents.begin(), unit.documents.end());
    }
  }
  return out;
}

std::vector<std::string> sentence_texts(const std::vector<SentenceRecord>& sentences) {
  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(s.text);
  return out;
}

// Expansion steps that can fail on a degenerate unit drop their query only.
template <typename Fn>
void try_add(std::vector<Query>& out, const std::string& unit_id, std::string_view label, Fn&& fn) {
  try {
    out.push_back(fn());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyInput && e.code() != ErrorCode::kClampedBias) throw;
    spdlog::warn("unit {}: dropping {} query: {}", unit_id, label, e.what());
  }
}

}  // namespace

RunContext make_context(const RunConfig& config, std::vector<EssUnit> dataset, ProviderSet& providers,
                        bool need_guide) {
  if (dataset.empty()) throw Error(ErrorCode::kEmptyInput, "dataset has no units");
  RunContext context;
  context.dataset = std::move(dataset);
  const std::size_t n = context.dataset.size();
  if (n >= 2) {
    context.split = split_dataset(n, config.dev_ratio, config.seed);
  } else {
    context.split.test = {0};
  }

  switch (config.units) {
    case UnitSelection::kTest: context.selected = context.split.test; break;
    case UnitSelection::kDev: context.selected = context.split.dev; break;
    case UnitSelection::kAll:
      for (std::size_t i = 0; i < n; ++i) context.selected.push_back(i);
      break;
  }

  if (needs_dev(config, need_guide) && context.split.dev.empty())
    throw Error(ErrorCode::kEmptyInput, "development split is empty");

  if (config.method == QueryMethod::kErt) {
    const auto texts = dev_texts(context, config.term_source);
    if (texts.empty()) throw Error(ErrorCode::kEmptyInput, "development split has no reference summaries");
    context.frw_seed = frw_query(texts, config.n_terms, providers.annotator.get());
    if (!providers.annotator) throw Error(ErrorCode::kProviderUnavailable, "phrase queries need an annotator");
    context.frp_seed = frp_query(texts, *providers.annotator, config.n_terms);
  }

  if (need_guide) {
    std::vector<std::string> guide = config.guide_texts;
    if (guide.empty()) guide = dev_texts(context, TermSource::kReferences);
    if (guide.empty()) throw Error(ErrorCode::kEmptyInput, "no guide summaries for the information-content target");
    context.guide = providers.embedder->embed(guide, EmbeddingModel::kSymmetric);
  }
  return context;
}

std::vector<Query> unit_queries(const RunConfig& config, const RunContext& context, const EssUnit& unit,
                                const std::vector<SentenceRecord>& sentences, ProviderSet& providers) {
  std::vector<Query> out;
  switch (config.method) {
    case QueryMethod::kBaseline:
      out.push_back(baseline_query(unit.entity, unit.sentiment));
      break;
    case QueryMethod::kUser:
      for (const auto& text : config.user_queries) {
        Query q;
        q.label = "user";
        q.terms = {text};
        out.push_back(prepend_entity(std::move(q), unit.entity));
      }
      break;
    case QueryMethod::kErt: {
      const auto texts = sentence_texts(sentences);
      AnnotationProvider* annotator = providers.annotator.get();
      const Query frw = prepend_entity(*context.frw_seed, unit.entity);
      const Query frp = prepend_entity(*context.frp_seed, unit.entity);
      try_add(out, unit.id, "frw-mpb2", [&] {
        return prepend_entity(mpb2_expand(frw, texts, providers.mask_fill.get(), config.mpb2, annotator),
                              unit.entity);
      });
      try_add(out, unit.id, "frp-mpb2", [&] {
        return prepend_entity(mpb2_expand(frp, texts, providers.mask_fill.get(), config.mpb2, annotator),
                              unit.entity);
      });
      try_add(out, unit.id, "frp-btr", [&] {
        const auto phrases = collect_phrases(sentences);
        Query q = frp_btr_expand(frp, phrases, *providers.embedder, config.rank, config.n_terms, annotator);
        return prepend_entity(std::move(q), unit.entity);
      });
      break;
    }
    case QueryMethod::kSentiment:
      try_add(out, unit.id, "sentiment-qe", [&] {
        const auto phrases = collect_phrases(sentences);
        Query q = sentiment_qe(unit.sentiment, config.sentiment_phrases, phrases, *providers.embedder,
                               config.sentiment_k, providers.annotator.get());
        return prepend_entity(std::move(q), unit.entity);
      });
      break;
  }
  if (out.empty() && config.method != QueryMethod::kSentiment)
    throw Error(ErrorCode::kEmptyInput, "no query survived expansion");
  return out;
}

PreparedUnit prepare_unit(const RunConfig& config, const RunContext& context, const EssUnit& unit,
                          ProviderSet& providers) {
  PreparedUnit prepared;
  prepared.unit = &unit;
  prepared.sentences = segment_unit(unit);
  if (prepared.sentences.empty()) throw Error(ErrorCode::kEmptyInput, "unit has no sentences");

  const bool annotate = config.method == QueryMethod::kErt || config.method == QueryMethod::kSentiment;
  if (annotate) {
    if (!providers.annotator) throw Error(ErrorCode::kProviderUnavailable, "phrase extraction needs an annotator");
    annotate_sentences(prepared.sentences, *providers.annotator);
  }

  const auto texts = sentence_texts(prepared.sentences);
  prepared.encodings = providers.embedder->embed(texts, EmbeddingModel::kSymmetric);

  const auto queries = unit_queries(config, context, unit, prepared.sentences, providers);
  prepared.biases = build_bias_set(queries, prepared.encodings, *providers.embedder, config.per_term_bias);
  if (config.method == QueryMethod::kSentiment) {
    const Vector row = sentiment_bias_vector(prepared.sentences, unit.sentiment, providers.sentiment.get());
    prepared.biases.add_row(row, BiasSource::kSentimentClassifier);
  }
  return prepared;
}

UnitPrediction rank_unit(const PreparedUnit& prepared, const Matrix* guide, const RankConfig& rank_config,
                         std::size_t k) {
  UnitPrediction prediction;
  prediction.unit_id = prepared.unit->id;
  const RankResult result =
      rank(prepared.encodings, prepared.biases.bias_vectors, rank_config.beta > 0.0 ? guide : nullptr, rank_config);
  if (!result.converged)
    spdlog::warn("unit {}: no convergence after {} iterations (residual {:.3g})", prediction.unit_id,
                 result.iterations_used, result.residual);
  prediction.indices = select_top(result, k);
  for (std::size_t i : prediction.indices) {
    prediction.sentences.push_back(prepared.sentences[i].text);
    prediction.scores.push_back(result.scores[i]);
  }
  return prediction;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::string serialize_prediction(const UnitPrediction& prediction) {
  json j;
  j["unit_id"] = prediction.unit_id;
  if (prediction.error) {
    j["error"] = {{"code", std::string(to_string(prediction.error->code()))},
                  {"message", prediction.error->what()}};
  } else {
    j["indices"] = prediction.indices;
    j["sentences"] = prediction.sentences;
    j["scores"] = prediction.scores;
  }
  return j.dump();
}

std::map<std::string, std::string> load_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read predictions file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json::parse(line);
      if (j.contains("error")) continue;
      const auto sentences = j.at("sentences").get<std::vector<std::string>>();
      out[j.at("unit_id").get<std::string>()] = join(sentences, " ");
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace mbtr::cli
