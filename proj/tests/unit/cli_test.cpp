#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "commands.hpp"
#include "fixtures.hpp"
#include "mbtr/dataset.hpp"
#include "mbtr/error.hpp"
#include "mbtr/text_pipeline.hpp"
#include "mbtr/tokenize.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"

namespace mbtr::cli {
namespace {

using json = nlohmann::json;
using mbtr::testing::TempPath;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

EssUnit planted_unit() {
  EssUnit u;
  u.id = "planted";
  u.entity = "Zorblax Phone";
  u.sentiment = Sentiment::kNegative;
  u.documents = {"The battery died within a week. Shipping took nine days.",
                 "Owners gave the Zorblax Phone negative feedback after updates. The screen is bright.",
                 "Support replied quickly. The case feels cheap."};
  u.reference = "Updates broke it.";
  return u;
}

struct Workspace {
  TempPath dataset{"cli-dataset"};
  ProviderSet providers = make_providers(ProviderConfig{});

  RunConfig config(QueryMethod method) const {
    RunConfig c;
    c.dataset = dataset.path();
    c.method = method;
    c.units = UnitSelection::kAll;
    return c;
  }
};

TEST(Summarize, PlantedSentenceWinsUnderBaselineQuery) {
  Workspace ws;
  write_dataset(ws.dataset.path(), {planted_unit()});
  const RunConfig config = ws.config(QueryMethod::kBaseline);
  const auto predictions = cmd_summarize(config, ws.providers);
  ASSERT_EQ(predictions.size(), 1u);
  ASSERT_FALSE(predictions[0].error.has_value());
  ASSERT_EQ(predictions[0].indices.size(), 1u);
  EXPECT_NE(predictions[0].sentences[0].find("negative feedback"), std::string::npos);

  // Exhaustive check: the exact fixed point of the same graph and bias.
  const RunContext context = make_context(config, {planted_unit()}, ws.providers, false);
  const PreparedUnit prepared = prepare_unit(config, context, context.dataset[0], ws.providers);
  const auto rows = mbtr::testing::to_rows(prepared.encodings);
  const auto bias_rows = mbtr::testing::to_rows(prepared.biases.bias_vectors);
  ASSERT_EQ(bias_rows.size(), 1u);
  const auto exact = mbtr::testing::solve_fixed_point(mbtr::testing::thresholded_graph(rows, 0.65), bias_rows[0], 0.1);
  const auto best = static_cast<std::size_t>(std::max_element(exact.begin(), exact.end()) - exact.begin());
  EXPECT_EQ(predictions[0].indices[0], best);
  const auto bias_best =
      static_cast<std::size_t>(std::max_element(bias_rows[0].begin(), bias_rows[0].end()) - bias_rows[0].begin());
  EXPECT_EQ(bias_best, best);
}

TEST(Summarize, KBeyondSentenceCountIsPerUnitError) {
  Workspace ws;
  auto small = planted_unit();
  small.id = "small";
  small.documents = {"Only one sentence here."};
  write_dataset(ws.dataset.path(), {small, planted_unit()});
  RunConfig config = ws.config(QueryMethod::kBaseline);
  config.k = 3;
  const auto predictions = cmd_summarize(config, ws.providers);
  ASSERT_EQ(predictions.size(), 2u);
  ASSERT_TRUE(predictions[0].error.has_value());
  EXPECT_EQ(predictions[0].unit_id, "small");
  EXPECT_FALSE(predictions[1].error.has_value());
  EXPECT_EQ(predictions[1].indices.size(), 3u);
  const auto jsonl = predictions_jsonl(predictions);
  EXPECT_NE(jsonl.find("\"error\""), std::string::npos);
}

TEST(Summarize, RerunsAreByteIdentical) {
  Workspace ws;
  write_dataset(ws.dataset.path(), mbtr::testing::review_dataset());
  for (auto method : {QueryMethod::kBaseline, QueryMethod::kErt, QueryMethod::kSentiment}) {
    RunConfig config = ws.config(method);
    config.units = UnitSelection::kTest;
    const auto a = predictions_jsonl(cmd_summarize(config, ws.providers));
    ProviderSet fresh = make_providers(ProviderConfig{});
    const auto b = predictions_jsonl(cmd_summarize(config, fresh));
    config.jobs = 4;
    const auto c = predictions_jsonl(cmd_summarize(config, fresh));
    EXPECT_EQ(a, b) << to_string(method);
    EXPECT_EQ(a, c) << to_string(method);
    EXPECT_EQ(a.find("\"error\""), std::string::npos) << a;
  }
}

TEST(Summarize, PredictionsRoundTripThroughLoader) {
  Workspace ws;
  write_dataset(ws.dataset.path(), mbtr::testing::review_dataset());
  RunConfig config = ws.config(QueryMethod::kBaseline);
  config.k = 2;
  const auto predictions = cmd_summarize(config, ws.providers);
  TempPath file("preds");
  mbtr::testing::write_file(file.path(), predictions_jsonl(predictions));
  const auto loaded = load_predictions(file.path());
  ASSERT_EQ(loaded.size(), predictions.size());
  for (const auto& p : predictions) EXPECT_EQ(loaded.at(p.unit_id), p.summary());
}

TEST(Expand, BaselineTemplate) {
  Workspace ws;
  write_dataset(ws.dataset.path(), {planted_unit()});
  const auto lines = cmd_expand(ws.config(QueryMethod::kBaseline), "bq", ws.providers);
  ASSERT_EQ(lines.size(), 1u);
  const json j = json::parse(lines[0]);
  EXPECT_EQ(j["unit_id"], "planted");
  EXPECT_EQ(j["label"], "bq");
  ASSERT_FALSE(j["terms"].empty());
  const std::string text = j["terms"].back();
  EXPECT_EQ(text, "Why did Zorblax Phone receive negative feedback");
}

TEST(Expand, ErtNeedsDevUnits) {
  Workspace ws;
  write_dataset(ws.dataset.path(), {planted_unit()});
  EXPECT_EQ(code_of([&] { cmd_expand(ws.config(QueryMethod::kErt), "ert", ws.providers); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(code_of([&] { cmd_expand(ws.config(QueryMethod::kErt), "frw", ws.providers); }), ErrorCode::kEmptyInput);
}

TEST(Expand, ErtQueriesPerUnit) {
  Workspace ws;
  write_dataset(ws.dataset.path(), mbtr::testing::review_dataset());
  RunConfig config = ws.config(QueryMethod::kErt);
  config.units = UnitSelection::kTest;
  const auto lines = cmd_expand(config, "ert", ws.providers);
  ASSERT_FALSE(lines.empty());
  for (const auto& line : lines) {
    const json j = json::parse(line);
    EXPECT_TRUE(j.contains("unit_id"));
    EXPECT_FALSE(j.contains("error")) << line;
  }
  const auto seed = cmd_expand(config, "frw", ws.providers);
  ASSERT_EQ(seed.size(), 1u);
  EXPECT_EQ(json::parse(seed[0])["label"], "frw");
  EXPECT_EQ(code_of([&] { cmd_expand(config, "nope", ws.providers); }), ErrorCode::kInvalidArgument);
}

TEST(Evaluate, MissingFilesAndMetricSubset) {
  Workspace ws;
  write_dataset(ws.dataset.path(), mbtr::testing::planted_reference_dataset(3, 4));
  TempPath preds("preds");
  EXPECT_EQ(code_of([&] { cmd_evaluate(preds.path(), ws.dataset.path(), all_rouge_metrics()); }), ErrorCode::kIo);

  const auto units = load_dataset(ws.dataset.path());
  std::string lines;
  for (const auto& u : units) lines += json{{"unit_id", u.id}, {"sentences", {*u.reference}}}.dump() + "\n";
  mbtr::testing::write_file(preds.path(), lines);
  EXPECT_EQ(code_of([&] { cmd_evaluate(preds.path(), "/nonexistent/data.jsonl", all_rouge_metrics()); }),
            ErrorCode::kIo);

  const auto report = cmd_evaluate(preds.path(), ws.dataset.path(), parse_rouge_metrics("r1,rsu4"));
  EXPECT_EQ(report.count(), units.size());
  EXPECT_EQ(report.mean.size(), 2u);
  EXPECT_TRUE(report.mean.contains(RougeMetric::kRouge1));
  EXPECT_FALSE(report.mean.contains(RougeMetric::kRouge2));
  EXPECT_DOUBLE_EQ(report.mean.at(RougeMetric::kRougeSU4).f1, 1.0);
  EXPECT_EQ(report.to_json().find("rouge-2"), std::string::npos);
}

TEST(Oracle, VerbatimReferencesScorePerfectly) {
  Workspace ws;
  write_dataset(ws.dataset.path(), mbtr::testing::planted_reference_dataset(11, 6));
  const auto report = cmd_oracle(ws.dataset.path(), all_rouge_metrics());
  EXPECT_EQ(report.choices.size(), 6u);
  EXPECT_DOUBLE_EQ(report.report.mean.at(RougeMetric::kRougeSU4).f1, 1.0);
  EXPECT_DOUBLE_EQ(report.report.mean.at(RougeMetric::kRouge1).f1, 1.0);
}

TEST(Oracle, MatchesPerUnitExhaustiveScan) {
  Workspace ws;
  const auto units = mbtr::testing::review_dataset();
  write_dataset(ws.dataset.path(), units);
  const auto report = cmd_oracle(ws.dataset.path(), {RougeMetric::kRougeSU4});
  ASSERT_EQ(report.choices.size(), units.size());
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto sentences = segment_unit(units[u]);
    double best = -1.0;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const auto f = mbtr::testing::prf(mbtr::testing::brute_su4(word_tokens(sentences[i].text),
                                                                 word_tokens(*units[u].reference)))
                         .f;
      if (f > best + 1e-12) {
        best = f;
        best_index = i;
      }
    }
    EXPECT_EQ(report.choices[u].second.index, best_index) << units[u].id;
    EXPECT_NEAR(report.choices[u].second.score.f1, best, 1e-12);
  }
}

TEST(Oracle, EmptyDatasetIsError) {
  Workspace ws;
  mbtr::testing::write_file(ws.dataset.path(), "");
  EXPECT_THROW(cmd_oracle(ws.dataset.path(), all_rouge_metrics()), Error);
}

TEST(Ablate, GridShapeAndConsistency) {
  Workspace ws;
  write_dataset(ws.dataset.path(), mbtr::testing::review_dataset());
  RunConfig config = ws.config(QueryMethod::kErt);
  config.units = UnitSelection::kTest;
  const auto grid = cmd_ablate(config, {0.0, 0.1}, {0.0, 0.2}, all_rouge_metrics(), ws.providers);
  ASSERT_EQ(grid.rows.size(), 4u);
  EXPECT_EQ(grid.rows[0].alpha, 0.0);
  EXPECT_EQ(grid.rows[0].beta, 0.0);
  EXPECT_EQ(grid.rows[3].alpha, 0.1);
  EXPECT_EQ(grid.rows[3].beta, 0.2);

  RunConfig single = config;
  single.rank.alpha = 0.1;
  single.beta = 0.0;
  const auto predictions = cmd_summarize(single, ws.providers);
  TempPath preds("preds");
  mbtr::testing::write_file(preds.path(), predictions_jsonl(predictions));
  const auto report = cmd_evaluate(preds.path(), ws.dataset.path(), all_rouge_metrics());
  const auto& row = grid.rows[2];
  ASSERT_EQ(row.report.count(), report.count());
  for (auto metric : all_rouge_metrics()) {
    EXPECT_DOUBLE_EQ(row.report.mean.at(metric).f1, report.mean.at(metric).f1) << to_string(metric);
  }
  EXPECT_NE(grid.to_table().find("R-SU4"), std::string::npos);
  EXPECT_EQ(json::parse(grid.to_json())["rows"].size(), 4u);
}

TEST(RunConfig, Validation) {
  RunConfig c;
  c.k = 0;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c.k = 1;
  c.dev_ratio = 1.0;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c.dev_ratio = 0.75;
  c.method = QueryMethod::kUser;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c.user_queries = {"why"};
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(RunConfig{}.effective_beta(), 0.1);
  c.method = QueryMethod::kSentiment;
  EXPECT_DOUBLE_EQ(c.effective_beta(), 0.2);
  c.method = QueryMethod::kBaseline;
  EXPECT_DOUBLE_EQ(c.effective_beta(), 0.0);
  c.beta = 0.3;
  EXPECT_DOUBLE_EQ(c.effective_beta(), 0.3);
}

// The installed binary: exit codes and structured diagnostics.
int run(const std::string& args, const std::filesystem::path& err) {
  const std::string cmd = std::string(MBTR_CLI_PATH) + " " + args + " >/dev/null 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodesAndDiagnostics) {
  Workspace ws;
  write_dataset(ws.dataset.path(), {planted_unit()});
  TempPath err("stderr");
  TempPath out("out");
  EXPECT_EQ(run("summarize --method bq --units all --dataset " + ws.dataset.str() + " --out " + out.str(),
                err.path()),
            0);
  EXPECT_NE(mbtr::testing::read_file(out.path()).find("\"unit_id\":\"planted\""), std::string::npos);

  EXPECT_EQ(run("summarize --dataset /nonexistent/data.jsonl", err.path()), 1);
  const std::string diag = mbtr::testing::read_file(err.path());
  const json j = json::parse(diag.substr(diag.rfind("{\"error\"")));
  EXPECT_EQ(j["error"]["code"], "io");
  EXPECT_FALSE(j["error"]["retryable"].get<bool>());

  EXPECT_NE(run("summarize --alpha notanumber", err.path()), 0);
  EXPECT_NE(run("frobnicate", err.path()), 0);
}

TEST(Binary, ConfigFileAndFlagPrecedence) {
  Workspace ws;
  write_dataset(ws.dataset.path(), {planted_unit()});
  TempPath config("config");
  TempPath a("a");
  TempPath b("b");
  TempPath err("stderr");
  mbtr::testing::write_file(config.path(), "dataset=" + ws.dataset.str() + "\nmethod=bq\nunits=all\nk=2\n");
  ASSERT_EQ(run("summarize --config " + config.str() + " --out " + a.str(), err.path()), 0);
  EXPECT_EQ(json::parse(mbtr::testing::read_file(a.path()))["indices"].size(), 2u);
  ASSERT_EQ(run("summarize --config " + config.str() + " --k 1 --out " + b.str(), err.path()), 0);
  EXPECT_EQ(json::parse(mbtr::testing::read_file(b.path()))["indices"].size(), 1u);
}

}  // namespace
}  // namespace mbtr::cli
