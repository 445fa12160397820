#include "mbtr/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "mbtr/error.hpp"

namespace mbtr {

using nlohmann::json;

Sentiment parse_sentiment(std::string_view name) {
  if (name == "positive") return Sentiment::kPositive;
  if (name == "negative") return Sentiment::kNegative;
  throw Error(ErrorCode::kInvalidArgument, "sentiment must be positive or negative, got '" +
                                               std::string(name) + "'");
}

std::string_view to_string(Sentiment sentiment) {
  return sentiment == Sentiment::kPositive ? "positive" : "negative";
}

EssUnit parse_unit(std::string_view json_line) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  try {
    EssUnit unit;
    unit.id = j.at("id").get<std::string>();
    unit.entity = j.at("entity").get<std::string>();
    unit.sentiment = parse_sentiment(j.at("sentiment").get<std::string>());
    unit.documents = j.at("documents").get<std::vector<std::string>>();
    if (j.contains("reference") && !j["reference"].is_null()) {
      unit.reference = j["reference"].get<std::string>();
      if (unit.reference->empty()) throw Error(ErrorCode::kParse, "reference must be non-empty");
    }
    if (unit.documents.empty()) {
      throw Error(ErrorCode::kParse, "unit '" + unit.id + "' has no documents");
    }
    return unit;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::string serialize_unit(const EssUnit& unit) {
  json j = {{"id", unit.id},
            {"entity", unit.entity},
            {"sentiment", std::string(to_string(unit.sentiment))},
            {"documents", unit.documents}};
  if (unit.reference) j["reference"] = *unit.reference;
  return j.dump();
}

std::vector<EssUnit> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dataset " + path.string());
  std::vector<EssUnit> units;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      units.push_back(parse_unit(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return units;
}

void write_dataset(const std::filesystem::path& path, const std::vector<EssUnit>& units) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write dataset " + path.string());
  for (const auto& u : units) out << serialize_unit(u) << '\n';
}

DatasetSplit split_dataset(std::size_t unit_count, double dev_ratio, std::uint64_t seed) {
  if (!(dev_ratio > 0.0 && dev_ratio < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "split ratio must lie in (0, 1)");
  }
  std::vector<std::size_t> order(unit_count);
  for (std::size_t i = 0; i < unit_count; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = unit_count; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  auto dev_count = static_cast<std::size_t>(std::llround(dev_ratio * static_cast<double>(unit_count)));
  if (unit_count >= 2) dev_count = std::clamp<std::size_t>(dev_count, 1, unit_count - 1);
  DatasetSplit split;
  split.dev.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(dev_count));
  split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(dev_count), order.end());
  std::sort(split.dev.begin(), split.dev.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace mbtr
