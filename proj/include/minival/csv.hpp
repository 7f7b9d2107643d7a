// Copyright 2026 The minival Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MINIVAL_CSV_HPP
#define MINIVAL_CSV_HPP

#include <charconv>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "minival/errors.hpp"

namespace minival {

/// Shortest round-trip decimal form. Parsing the result recovers the exact
/// double, which keeps emitted CSVs byte-stable and lossless.
inline std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

inline double parse_double(std::string_view text, const std::string& context) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size())
    throw MalformedRecord(context + ": not a number: \"" + std::string(text) +
                          "\"");
  return value;
}

inline std::int64_t parse_int(std::string_view text,
                              const std::string& context) {
  std::int64_t value = 0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size())
    throw MalformedRecord(context + ": not an integer: \"" +
                          std::string(text) + "\"");
  return value;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

/// Reads a header-first CSV file; returns data rows as field lists and
/// checks the header matches exactly.
std::vector<std::vector<std::string>> read_csv(
    const std::filesystem::path& path, const std::string& expected_header);

}  // namespace minival

#endif  // MINIVAL_CSV_HPP
