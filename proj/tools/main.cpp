#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "mbtr/tokenize.hpp"

namespace {

using mbtr::Error;
using mbtr::ErrorCode;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

void report_error(std::string_view code, std::string_view message, bool retryable) {
  nlohmann::ordered_json j;
  j["error"] = {{"code", code}, {"message", message}, {"retryable", retryable}};
  std::cerr << j.dump() << "\n";
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-bias TextRank for explicative sentiment summarization"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

  mbtr::cli::RunConfig config;
  std::string dataset;
  std::string method = "ert";
  std::string provider = "stub";
  std::string cache;
  std::string units = "test";
  std::string metrics = "r1,r2,rl,rsu4";
  std::string out;
  std::string reduction = "sum";
  std::string threshold_mode = "raw";
  std::string term_source = "references";
  std::string guide_file;
  std::string log_level = "warn";
  double beta = -1.0;
  bool table = false;
  bool stub_unnormalized = false;

  app.add_option("--dataset", dataset, "JSON-lines dataset of units");
  app.add_option("--alpha", config.rank.alpha, "graph centrality weight")->capture_default_str();
  app.add_option("--beta", beta, "information-content penalty (default: 0.1 ert, 0.2 sb, 0 otherwise)");
  app.add_option("--theta", config.rank.theta, "similarity threshold")->capture_default_str();
  app.add_option("--k", config.k, "sentences per summary")->capture_default_str();
  app.add_option("--method", method, "bq|ert|sb|user")->capture_default_str();
  app.add_option("--provider", provider, "'stub' or the provider service base URL")->capture_default_str();
  app.add_option("--cache", cache, "embedding cache file (JSON lines)");
  app.add_option("--seed", config.seed, "split seed")->capture_default_str();
  app.add_option("--split", config.dev_ratio, "development share of the units")->capture_default_str();
  app.add_option("--metrics", metrics, "comma list of r1,r2,rl,rsu4")->capture_default_str();
  app.add_option("--out", out, "output file (stdout when omitted)");
  app.add_flag("--table", table, "print a text table instead of JSON");
  app.add_option("--units", units, "test|dev|all")->capture_default_str();
  app.add_option("--query", config.user_queries, "query text for --method user (repeatable)");
  app.add_option("--guide", guide_file, "guide summaries, one per line");
  app.add_option("--reduction", reduction, "sum|max|mean|median")->capture_default_str();
  app.add_option("--threshold-mode", threshold_mode, "raw|literal")->capture_default_str();
  app.add_flag("--zero-diagonal", config.rank.zero_diagonal, "drop self-similarity edges");
  app.add_option("--max-iterations", config.rank.max_iterations)->capture_default_str();
  app.add_option("--epsilon", config.rank.epsilon, "L1 convergence tolerance")->capture_default_str();
  app.add_flag("--per-term-bias", config.per_term_bias, "one bias row per query term");
  app.add_option("--term-source", term_source, "references|documents")->capture_default_str();
  app.add_option("--n-terms", config.n_terms, "terms per frequent-term query")->capture_default_str();
  app.add_option("--sentiment-k", config.sentiment_k, "phrases per sentiment query")->capture_default_str();
  app.add_option("--positive-phrase", config.sentiment_phrases.positive)->capture_default_str();
  app.add_option("--negative-phrase", config.sentiment_phrases.negative)->capture_default_str();
  app.add_option("--mpb2-k", config.mpb2.per_term_k)->capture_default_str();
  app.add_option("--mpb2-patterns", config.mpb2.patterns_per_term)->capture_default_str();
  app.add_option("--jobs", config.jobs, "worker threads")->capture_default_str();
  app.add_option("--timeout-ms", config.provider.timeout_ms)->capture_default_str();
  app.add_option("--max-in-flight", config.provider.max_in_flight)->capture_default_str();
  app.add_option("--stub-dim", config.provider.stub.dimension)->capture_default_str();
  app.add_option("--stub-seed", config.provider.stub.seed)->capture_default_str();
  app.add_flag("--stub-unnormalized", stub_unnormalized, "keep stub sentence vectors unnormalized");
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off")->capture_default_str();

  auto* summarize = app.add_subcommand("summarize", "rank sentences and write predictions");
  auto* expand = app.add_subcommand("expand", "write the queries a method builds");
  std::string expansion;
  expand->add_option("--expansion", expansion,
                     "frw|frp|frw-mpb2|frp-mpb2|frp-btr|sentiment-qe (default: --method)");
  auto* evaluate = app.add_subcommand("evaluate", "score a predictions file");
  std::string predictions;
  evaluate->add_option("--predictions", predictions, "predictions file")->required();
  auto* oracle = app.add_subcommand("oracle", "best single-sentence upper bound");
  auto* ablate = app.add_subcommand("ablate", "score an alpha x beta grid");
  std::vector<double> alphas{0.0, 0.1};
  std::vector<double> betas{0.0, 0.1, 0.2};
  ablate->add_option("--alphas", alphas)->delimiter(',')->capture_default_str();
  ablate->add_option("--betas", betas)->delimiter(',')->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("usage", e.what(), false);
    return 64;
  }

  try {
    spdlog::set_level(spdlog::level::from_str(log_level));
    spdlog::set_default_logger(spdlog::stderr_color_mt("mbtr"));
    spdlog::set_level(spdlog::level::from_str(log_level));

    config.dataset = dataset;
    config.method = mbtr::cli::parse_query_method(method);
    config.units = mbtr::cli::parse_unit_selection(units);
    config.term_source = mbtr::cli::parse_term_source(term_source);
    config.rank.reduction = mbtr::parse_reduction(reduction);
    config.rank.threshold_mode = mbtr::parse_threshold_mode(threshold_mode);
    if (beta >= 0.0) config.beta = beta;
    if (!guide_file.empty()) config.guide_texts = read_lines(guide_file);
    if (provider == "stub") {
      config.provider.kind = mbtr::ProviderKind::kStub;
    } else {
      config.provider.kind = mbtr::ProviderKind::kHttp;
      config.provider.base_url = provider;
    }
    if (!cache.empty()) config.provider.cache_path = cache;
    config.provider.stub.normalize = !stub_unnormalized;
    const auto metric_list = mbtr::parse_rouge_metrics(metrics);

    const bool needs_dataset = !dataset.empty();
    if (!needs_dataset) throw Error(ErrorCode::kInvalidArgument, "--dataset is required");

    if (*evaluate) {
      const auto report = mbtr::cli::cmd_evaluate(predictions, dataset, metric_list);
      write_output(out, table ? report.to_table() : report.to_json());
      return 0;
    }
    if (*oracle) {
      const auto report = mbtr::cli::cmd_oracle(dataset, metric_list);
      write_output(out, table ? report.report.to_table() : report.to_json() + "\n");
      return 0;
    }

    auto providers = mbtr::make_providers(config.provider);
    if (*summarize) {
      const auto result = mbtr::cli::cmd_summarize(config, providers);
      std::size_t failed = 0;
      for (const auto& p : result) failed += p.error ? 1 : 0;
      write_output(out, mbtr::cli::predictions_jsonl(result));
      if (failed > 0) spdlog::warn("{} of {} units failed", failed, result.size());
      return 0;
    }
    if (*expand) {
      const std::string which = expansion.empty() ? method : expansion;
      const auto lines = mbtr::cli::cmd_expand(config, which, providers);
      write_output(out, mbtr::join(lines, "\n") + (lines.empty() ? "" : "\n"));
      return 0;
    }
    if (*ablate) {
      const auto grid = mbtr::cli::cmd_ablate(config, alphas, betas, metric_list, providers);
      write_output(out, table ? grid.to_table() : grid.to_json() + "\n");
      return 0;
    }
  } catch (const Error& e) {
    report_error(mbtr::to_string(e.code()), e.what(), e.retryable());
    return 1;
  } catch (const std::exception& e) {
    report_error("internal", e.what(), false);
    return 1;
  }
  return 0;
}
