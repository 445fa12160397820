#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mbtr/evaluation.hpp"
#include "pipeline.hpp"

namespace mbtr::cli {

// Predictions for the selected units in dataset order; a failing unit yields a
// record carrying its error.
std::vector<UnitPrediction> cmd_summarize(const RunConfig& config, ProviderSet& providers);
std::string predictions_jsonl(const std::vector<UnitPrediction>& predictions);

// expansion: bq, user, ert, sb, frw, frp, frw-mpb2, frp-mpb2, frp-btr or
// sentiment-qe. frw and frp print the one dev-derived seed; the others print
// one line per selected unit.
std::vector<std::string> cmd_expand(const RunConfig& config, std::string_view expansion, ProviderSet& providers);

EvaluationReport cmd_evaluate(const std::filesystem::path& predictions, const std::filesystem::path& dataset,
                              const std::vector<RougeMetric>& metrics);

struct OracleReport {
  EvaluationReport report;
  std::vector<std::pair<std::string, OracleChoice>> choices;
  std::vector<std::string> sentences;  // chosen sentence per choice

  std::string to_json() const;
};

// Best single source sentence per unit with a reference, over all units.
OracleReport cmd_oracle(const std::filesystem::path& dataset, const std::vector<RougeMetric>& metrics);

struct AblationRow {
  double alpha = 0.0;
  double beta = 0.0;
  EvaluationReport report;
  std::size_t failed_units = 0;
};

struct AblationGrid {
  std::vector<RougeMetric> metrics;
  std::vector<AblationRow> rows;  // alphas outer, betas inner

  std::string to_json() const;
  std::string to_table() const;
};

// Units are prepared once and re-ranked for every (alpha, beta) cell.
AblationGrid cmd_ablate(const RunConfig& config, const std::vector<double>& alphas,
                        const std::vector<double>& betas, const std::vector<RougeMetric>& metrics,
                        ProviderSet& providers);

}  // namespace mbtr::cli
