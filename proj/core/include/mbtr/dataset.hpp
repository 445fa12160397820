#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mbtr/text_types.hpp"

namespace mbtr {

// JSON-lines, one unit per line:
//   {"id", "entity", "sentiment": "positive"|"negative", "documents": [..], "reference"?}
EssUnit parse_unit(std::string_view json_line);
std::string serialize_unit(const EssUnit& unit);

// Throws kIo for an unreadable file and kParse (with line number) for a bad
// record. Blank lines are skipped.
std::vector<EssUnit> load_dataset(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path, const std::vector<EssUnit>& units);

struct DatasetSplit {
  std::vector<std::size_t> dev;   // indices into the dataset, ascending
  std::vector<std::size_t> test;  // indices into the dataset, ascending
};

// Seeded Fisher-Yates shuffle of the unit order; the first round(ratio * N)
// shuffled units form the dev split (at least one unit on each side when
// N >= 2).
DatasetSplit split_dataset(std::size_t unit_count, double dev_ratio, std::uint64_t seed);

}  // namespace mbtr
