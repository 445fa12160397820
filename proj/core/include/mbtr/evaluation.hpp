#pragma once

#include <map>
#include <string>
#include <vector>

#include "mbtr/rouge.hpp"
#include "mbtr/text_types.hpp"

namespace mbtr {

struct UnitEvaluation {
  std::string unit_id;
  std::map<RougeMetric, RougeScore> scores;
};

struct EvaluationReport {
  std::vector<RougeMetric> metrics;
  std::vector<UnitEvaluation> units;
  std::map<RougeMetric, RougeScore> mean;  // arithmetic mean of per-unit P, R and F1
  std::vector<std::string> omitted;        // dataset units without a prediction or a reference

  std::size_t count() const { return units.size(); }
  std::string to_json() const;  // pretty-printed, deterministic
  std::string to_table() const;
};

// Units are visited in dataset order. Predictions naming unknown units are
// ignored; units without a prediction are listed as omitted, not scored 0.
EvaluationReport evaluate_run(const std::map<std::string, std::string>& predictions,
                              const std::vector<EssUnit>& dataset,
                              const std::vector<RougeMetric>& metrics = all_rouge_metrics());

struct OracleChoice {
  std::size_t index = 0;
  RougeScore score;  // ROUGE-SU4 of the chosen sentence
};

// Source sentence with the highest ROUGE-SU4 F1 against the reference; ties
// go to the lowest index. Throws when the unit has no reference or no
// sentences.
OracleChoice oracle_upper_bound(const EssUnit& unit, const std::vector<SentenceRecord>& sentences);

}  // namespace mbtr
