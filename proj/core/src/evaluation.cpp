#include "mbtr/evaluation.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "mbtr/error.hpp"

namespace mbtr {

using nlohmann::ordered_json;

namespace {

ordered_json score_json(const RougeScore& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

EvaluationReport evaluate_run(const std::map<std::string, std::string>& predictions,
                              const std::vector<EssUnit>& dataset, const std::vector<RougeMetric>& metrics) {
  EvaluationReport report;
  report.metrics = metrics;
  for (const auto& unit : dataset) {
    auto it = predictions.find(unit.id);
    if (it == predictions.end() || !unit.reference) {
      report.omitted.push_back(unit.id);
      continue;
    }
    UnitEvaluation eval;
    eval.unit_id = unit.id;
    for (auto m : metrics) eval.scores[m] = rouge(m, it->second, *unit.reference);
    report.units.push_back(std::move(eval));
  }
  for (auto m : metrics) {
    RougeScore mean;
    if (!report.units.empty()) {
      for (const auto& u : report.units) {
        const auto& s = u.scores.at(m);
        mean.precision += s.precision;
        mean.recall += s.recall;
        mean.f1 += s.f1;
      }
      const auto n = static_cast<double>(report.units.size());
      mean.precision /= n;
      mean.recall /= n;
      mean.f1 /= n;
    }
    report.mean[m] = mean;
  }
  return report;
}

std::string EvaluationReport::to_json() const {
  ordered_json j;
  j["count"] = units.size();
  j["metrics"] = ordered_json::array();
  for (auto m : metrics) j["metrics"].push_back(std::string(to_string(m)));
  j["mean"] = ordered_json::object();
  for (auto m : metrics) j["mean"][std::string(to_string(m))] = score_json(mean.at(m));
  j["units"] = ordered_json::array();
  for (const auto& u : units) {
    ordered_json row = {{"unit_id", u.unit_id}};
    for (auto m : metrics) row[std::string(to_string(m))] = score_json(u.scores.at(m));
    j["units"].push_back(std::move(row));
  }
  j["omitted"] = omitted;
  return j.dump(2) + "\n";
}

std::string EvaluationReport::to_table() const {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-8s %9s %9s %9s\n", "metric", "P", "R", "F1");
  out << line;
  for (auto m : metrics) {
    const auto& s = mean.at(m);
    std::snprintf(line, sizeof(line), "%-8s %9s %9s %9s\n", std::string(short_name(m)).c_str(),
                  fixed(100.0 * s.precision).c_str(), fixed(100.0 * s.recall).c_str(),
                  fixed(100.0 * s.f1).c_str());
    out << line;
  }
  out << "units scored: " << units.size() << ", omitted: " << omitted.size() << "\n";
  return out.str();
}

OracleChoice oracle_upper_bound(const EssUnit& unit, const std::vector<SentenceRecord>& sentences) {
  if (!unit.reference) {
    throw Error(ErrorCode::kInvalidArgument, "unit '" + unit.id + "' has no reference summary");
  }
  if (sentences.empty()) throw Error(ErrorCode::kEmptyInput, "unit '" + unit.id + "' has no sentences");
  OracleChoice best;
  bool first = true;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const RougeScore s = rouge_su4(sentences[i].text, *unit.reference);
    if (first || s.f1 > best.score.f1) {
      best = {i, s};
      first = false;
    }
  }
  return best;
}

}  // namespace mbtr
