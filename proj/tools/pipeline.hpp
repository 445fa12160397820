#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mbtr/dataset.hpp"
#include "mbtr/error.hpp"
#include "mbtr/evaluation.hpp"
#include "mbtr/providers.hpp"
#include "mbtr/query_expansion.hpp"
#include "mbtr/rank_engine.hpp"
#include "mbtr/text_types.hpp"

namespace mbtr::cli {

// bq: baseline question; ert: expanded reference terms (needs a dev split);
// sb: sentiment biases; user: caller-supplied queries.
enum class QueryMethod { kBaseline, kErt, kSentiment, kUser };
QueryMethod parse_query_method(std::string_view name);
std::string_view to_string(QueryMethod method);

enum class UnitSelection { kTest, kDev, kAll };
UnitSelection parse_unit_selection(std::string_view name);

// Where frequent terms are mined from on the dev split.
enum class TermSource { kReferences, kDocuments };
TermSource parse_term_source(std::string_view name);

struct RunConfig {
  RankConfig rank;
  // Unset means the method default: 0.1 for ert, 0.2 for sb, 0 otherwise.
  std::optional<double> beta;
  std::filesystem::path dataset;
  double dev_ratio = 0.75;
  std::uint64_t seed = 13;
  ProviderConfig provider;
  QueryMethod method = QueryMethod::kErt;
  UnitSelection units = UnitSelection::kTest;
  std::size_t k = 1;
  std::vector<std::string> user_queries;
  // Guide-summary texts for the information-content target; dev references
  // when empty.
  std::vector<std::string> guide_texts;
  TermSource term_source = TermSource::kReferences;
  std::size_t n_terms = 20;
  std::size_t sentiment_k = 30;
  SentimentPhrasePair sentiment_phrases;
  Mpb2Options mpb2;
  bool per_term_bias = false;
  int jobs = 1;

  double effective_beta() const;
  RankConfig effective_rank() const;
  void validate() const;
};

// Dev-derived state shared by every unit of a run.
struct RunContext {
  std::vector<EssUnit> dataset;
  DatasetSplit split;
  std::vector<std::size_t> selected;  // units to process, dataset order
  std::optional<Query> frw_seed;
  std::optional<Query> frp_seed;
  std::optional<Matrix> guide;
};

struct PreparedUnit {
  const EssUnit* unit = nullptr;
  std::vector<SentenceRecord> sentences;
  Matrix encodings;
  BiasSet biases;
};

struct UnitPrediction {
  std::string unit_id;
  std::vector<std::size_t> indices;
  std::vector<std::string> sentences;
  std::vector<double> scores;
  std::optional<Error> error;

  std::string summary() const;  // selected sentences joined by a space
};

RunContext make_context(const RunConfig& config, std::vector<EssUnit> dataset, ProviderSet& providers,
                        bool need_guide);

// Queries of a unit for the configured method, entity-prepended.
std::vector<Query> unit_queries(const RunConfig& config, const RunContext& context, const EssUnit& unit,
                                const std::vector<SentenceRecord>& sentences, ProviderSet& providers);

PreparedUnit prepare_unit(const RunConfig& config, const RunContext& context, const EssUnit& unit,
                          ProviderSet& providers);

UnitPrediction rank_unit(const PreparedUnit& prepared, const Matrix* guide, const RankConfig& rank,
                         std::size_t k);

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

std::string serialize_prediction(const UnitPrediction& prediction);
// unit_id -> summary text; failed records are skipped.
std::map<std::string, std::string> load_predictions(const std::filesystem::path& path);

}  // namespace mbtr::cli
