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

#include "minival/csv.hpp"

#include <fstream>

namespace minival {

std::vector<std::vector<std::string>> read_csv(
    const std::filesystem::path& path, const std::string& expected_header) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw MalformedRecord(path.string() + ": empty file");
  if (line != expected_header)
    throw MalformedRecord(path.string() + ": unexpected header \"" + line +
                          "\" (expected \"" + expected_header + "\")");
  std::vector<std::vector<std::string>> rows;
  const std::size_t num_fields = split_csv_line(expected_header).size();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != num_fields)
      throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                            ": expected " + std::to_string(num_fields) +
                            " fields, got " + std::to_string(fields.size()));
    std::vector<std::string> row;
    row.reserve(fields.size());
    for (const auto field : fields) row.emplace_back(field);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace minival
