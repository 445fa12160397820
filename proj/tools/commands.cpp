#include "commands.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "mbtr/text_pipeline.hpp"

namespace mbtr::cli {

using json = nlohmann::ordered_json;

namespace {

std::vector<const EssUnit*> selected_units(const RunContext& context) {
  std::vector<const EssUnit*> out;
  for (std::size_t i : context.selected) out.push_back(&context.dataset[i]);
  return out;
}

Error as_error(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return *err;
  return Error(ErrorCode::kInvalidArgument, e.what());
}

std::string query_line(const Query& query, const std::string* unit_id) {
  json j;
  if (unit_id) j["unit_id"] = *unit_id;
  const json fields = json::parse(serialize_query(query));
  for (const auto& [key, value] : fields.items()) j[key] = value;
  return j.dump();
}

std::map<std::string, std::string> prediction_map(const std::vector<UnitPrediction>& predictions) {
  std::map<std::string, std::string> out;
  for (const auto& p : predictions)
    if (!p.error) out[p.unit_id] = p.summary();
  return out;
}

}  // namespace

std::vector<UnitPrediction> cmd_summarize(const RunConfig& config, ProviderSet& providers) {
  config.validate();
  const RankConfig rank_config = config.effective_rank();
  const RunContext context =
      make_context(config, load_dataset(config.dataset), providers, rank_config.beta > 0.0);
  const auto units = selected_units(context);
  std::vector<UnitPrediction> out(units.size());
  parallel_for(units.size(), config.jobs, [&](std::size_t i) {
    try {
      const PreparedUnit prepared = prepare_unit(config, context, *units[i], providers);
      out[i] = rank_unit(prepared, context.guide ? &*context.guide : nullptr, rank_config, config.k);
    } catch (const std::exception& e) {
      out[i] = UnitPrediction{};
      out[i].unit_id = units[i]->id;
      out[i].error = as_error(e);
      spdlog::warn("unit {} failed: {}", units[i]->id, e.what());
    }
  });
  return out;
}

std::string predictions_jsonl(const std::vector<UnitPrediction>& predictions) {
  std::string out;
  for (const auto& p : predictions) out += serialize_prediction(p) + "\n";
  return out;
}

std::vector<std::string> cmd_expand(const RunConfig& base, std::string_view expansion, ProviderSet& providers) {
  RunConfig config = base;
  const bool seed_only = expansion == "frw" || expansion == "frp";
  if (expansion == "bq" || expansion == "ert" || expansion == "sb" || expansion == "user") {
    config.method = parse_query_method(expansion);
  } else if (seed_only || expansion == "frw-mpb2" || expansion == "frp-mpb2" || expansion == "frp-btr") {
    config.method = QueryMethod::kErt;
  } else if (expansion == "sentiment-qe") {
    config.method = QueryMethod::kSentiment;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown expansion '" + std::string(expansion) + "'");
  }
  config.validate();
  const RunContext context = make_context(config, load_dataset(config.dataset), providers, false);

  std::vector<std::string> lines;
  if (seed_only) {
    lines.push_back(query_line(expansion == "frw" ? *context.frw_seed : *context.frp_seed, nullptr));
    return lines;
  }
  const auto units = selected_units(context);
  std::vector<std::vector<std::string>> per_unit(units.size());
  parallel_for(units.size(), config.jobs, [&](std::size_t i) {
    const EssUnit& unit = *units[i];
    try {
      auto sentences = segment_unit(unit);
      if (config.method == QueryMethod::kErt || config.method == QueryMethod::kSentiment)
        annotate_sentences(sentences, *providers.annotator);
      for (const auto& q : unit_queries(config, context, unit, sentences, providers)) {
        const bool wanted = expansion == "ert" || expansion == "sb" || expansion == "bq" ||
                            expansion == "user" || q.label == expansion;
        if (wanted) per_unit[i].push_back(query_line(q, &unit.id));
      }
    } catch (const std::exception& e) {
      json j;
      j["unit_id"] = unit.id;
      const Error err = as_error(e);
      j["error"] = {{"code", std::string(to_string(err.code()))}, {"message", err.what()}};
      per_unit[i].push_back(j.dump());
      spdlog::warn("unit {} failed: {}", unit.id, e.what());
    }
  });
  for (auto& block : per_unit) lines.insert(lines.end(), block.begin(), block.end());
  return lines;
}

EvaluationReport cmd_evaluate(const std::filesystem::path& predictions, const std::filesystem::path& dataset,
                              const std::vector<RougeMetric>& metrics) {
  const auto units = load_dataset(dataset);
  return evaluate_run(load_predictions(predictions), units, metrics);
}

std::string OracleReport::to_json() const {
  json j;
  j["report"] = json::parse(report.to_json());
  json rows = json::array();
  for (std::size_t i = 0; i < choices.size(); ++i) {
    const auto& [id, choice] = choices[i];
    rows.push_back({{"unit_id", id},
                    {"index", choice.index},
                    {"sentence", sentences[i]},
                    {"rouge-su4", {{"p", choice.score.precision}, {"r", choice.score.recall}, {"f1", choice.score.f1}}}});
  }
  j["choices"] = rows;
  return j.dump(2);
}

OracleReport cmd_oracle(const std::filesystem::path& dataset, const std::vector<RougeMetric>& metrics) {
  const auto units = load_dataset(dataset);
  if (units.empty()) throw Error(ErrorCode::kEmptyInput, "dataset has no units");
  OracleReport out;
  std::map<std::string, std::string> predictions;
  for (const auto& unit : units) {
    if (!unit.reference) continue;
    const auto sentences = segment_unit(unit);
    if (sentences.empty()) {
      spdlog::warn("unit {} has no sentences", unit.id);
      continue;
    }
    const OracleChoice choice = oracle_upper_bound(unit, sentences);
    out.choices.emplace_back(unit.id, choice);
    out.sentences.push_back(sentences[choice.index].text);
    predictions[unit.id] = sentences[choice.index].text;
  }
  if (out.choices.empty()) throw Error(ErrorCode::kEmptyInput, "no unit has both a reference and sentences");
  out.report = evaluate_run(predictions, units, metrics);
  return out;
}

std::string AblationGrid::to_json() const {
  json j;
  j["metrics"] = json::array();
  for (auto m : metrics) j["metrics"].push_back(std::string(to_string(m)));
  json rows = json::array();
  for (const auto& row : this->rows) {
    json r;
    r["alpha"] = row.alpha;
    r["beta"] = row.beta;
    r["units"] = row.report.count();
    r["failed_units"] = row.failed_units;
    for (auto m : metrics) {
      const auto& s = row.report.mean.at(m);
      r[std::string(to_string(m))] = {{"p", s.precision}, {"r", s.recall}, {"f1", s.f1}};
    }
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2);
}

std::string AblationGrid::to_table() const {
  std::ostringstream out;
  char cell[64];
  std::snprintf(cell, sizeof(cell), "%6s %6s", "alpha", "beta");
  out << cell;
  for (auto m : metrics) {
    std::snprintf(cell, sizeof(cell), " %8s", std::string(short_name(m)).c_str());
    out << cell;
  }
  out << "\n";
  for (const auto& row : rows) {
    std::snprintf(cell, sizeof(cell), "%6.2f %6.2f", row.alpha, row.beta);
    out << cell;
    for (auto m : metrics) {
      std::snprintf(cell, sizeof(cell), " %8.2f", 100.0 * row.report.mean.at(m).f1);
      out << cell;
    }
    out << "\n";
  }
  return out.str();
}

AblationGrid cmd_ablate(const RunConfig& config, const std::vector<double>& alphas,
                        const std::vector<double>& betas, const std::vector<RougeMetric>& metrics,
                        ProviderSet& providers) {
  if (alphas.empty() || betas.empty()) throw Error(ErrorCode::kInvalidArgument, "empty alpha or beta list");
  config.validate();
  bool need_guide = false;
  for (double b : betas) need_guide = need_guide || b > 0.0;
  const RunContext context = make_context(config, load_dataset(config.dataset), providers, need_guide);
  const auto units = selected_units(context);

  std::vector<std::optional<PreparedUnit>> prepared(units.size());
  parallel_for(units.size(), config.jobs, [&](std::size_t i) {
    try {
      prepared[i] = prepare_unit(config, context, *units[i], providers);
    } catch (const std::exception& e) {
      spdlog::warn("unit {} failed: {}", units[i]->id, e.what());
    }
  });

  AblationGrid grid;
  grid.metrics = metrics;
  for (double alpha : alphas) {
    for (double beta : betas) {
      RankConfig rank_config = config.rank;
      rank_config.alpha = alpha;
      rank_config.beta = beta;
      rank_config.validate();
      std::vector<UnitPrediction> predictions(units.size());
      std::size_t failed = 0;
      for (std::size_t i = 0; i < units.size(); ++i) {
        if (!prepared[i]) {
          ++failed;
          predictions[i].unit_id = units[i]->id;
          predictions[i].error = Error(ErrorCode::kEmptyInput, "unit preparation failed");
          continue;
        }
        try {
          predictions[i] = rank_unit(*prepared[i], context.guide ? &*context.guide : nullptr, rank_config, config.k);
        } catch (const std::exception& e) {
          ++failed;
          predictions[i].unit_id = units[i]->id;
          predictions[i].error = as_error(e);
        }
      }
      std::vector<EssUnit> scored;
      for (const auto* u : units) scored.push_back(*u);
      grid.rows.push_back({alpha, beta, evaluate_run(prediction_map(predictions), scored, metrics), failed});
    }
  }
  return grid;
}

}  // namespace mbtr::cli
