#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mbtr/numerics.hpp"
#include "mbtr/text_types.hpp"
#include "oracles.hpp"

namespace mbtr::testing {

// Random embedding rows; nonnegative entries make dense similarity graphs.
Rows random_rows(std::mt19937_64& rng, std::size_t n, std::size_t d, bool nonnegative);
Matrix to_matrix(const Rows& rows);
Rows to_rows(const Matrix& m);

// Lowercase pseudo-words drawn from a vocabulary of `vocabulary` distinct words.
std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t count, std::size_t vocabulary);
std::string join_tokens(const std::vector<std::string>& tokens);

// Distinct made-up words ("wa", "wb", ...) that no tokenizer splits.
std::vector<std::string> word_list(std::size_t count, std::string_view prefix = "w");

// One unit of the multi-query fixture: a target sentence carries one token of
// each of three queries; every distractor carries two tokens of one query.
struct MultiQueryUnit {
  std::vector<std::string> sentences;
  std::vector<std::string> queries;
  std::size_t target = 0;
};
std::vector<MultiQueryUnit> multi_query_fixture(std::uint64_t seed, std::size_t units);

// One unit of the information-content fixture: sentences of at least
// guide_length tokens, each sharing one or more tokens with the query.
struct LengthUnit {
  std::vector<std::string> sentences;
  std::string query;
};
std::vector<LengthUnit> length_fixture(std::uint64_t seed, std::size_t units, std::size_t guide_length);

// Units whose reference also appears verbatim as one source sentence.
std::vector<EssUnit> planted_reference_dataset(std::uint64_t seed, std::size_t units);

// A small product-review dataset with entities, both sentiments and
// references; enough for every query method with the stub providers.
std::vector<EssUnit> review_dataset();

// Unique path under the system temp directory, removed on destruction.
class TempPath {
 public:
  explicit TempPath(std::string_view stem);
  ~TempPath();
  TempPath(const TempPath&) = delete;
  TempPath& operator=(const TempPath&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace mbtr::testing
