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

#ifndef MINIVAL_TESTS_TEST_SUPPORT_HPP
#define MINIVAL_TESTS_TEST_SUPPORT_HPP

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "minival/eval_cache.hpp"
#include "minival/rng.hpp"
#include "minival/text.hpp"

namespace minival::test {

/// Small cache with random edit counts; runs are simulated (user r/2, hp
/// r%2) so forgetting vectors have the expected row set.
inline EvalCache make_random_cache(Rng& rng, std::int32_t samples,
                                   std::int32_t runs) {
  EvalCache cache;
  cache.ref_words = EditVector(samples);
  cache.baseline_edits = EditVector(samples);
  for (std::int32_t i = 0; i < samples; ++i) {
    cache.sample_ids.push_back("s" + std::to_string(i));
    cache.ref_words(i) = rng.uniform_int(1, 10);
    cache.baseline_edits(i) = rng.uniform_int(0, 3);
  }
  cache.run_edits.resize(runs, samples);
  for (std::int32_t r = 0; r < runs; ++r) {
    cache.run_keys.push_back(RunKey::simulated(r / 2, r % 2));
    for (std::int32_t i = 0; i < samples; ++i)
      cache.run_edits(r, i) = rng.uniform_int(0, 4);
  }
  return cache;
}

/// Reference edit distance: the full quadratic DP table, kept deliberately
/// naive and separate from the production implementation.
inline std::int64_t dp_table_edit_distance(const Transcript& ref,
                                           const Transcript& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<std::vector<std::int64_t>> table(
      n + 1, std::vector<std::int64_t>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) table[i][0] = static_cast<std::int64_t>(i);
  for (std::size_t j = 0; j <= m; ++j) table[0][j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int64_t del = table[i - 1][j] + 1;
      const std::int64_t ins = table[i][j - 1] + 1;
      const std::int64_t sub =
          table[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      table[i][j] = std::min(std::min(del, ins), sub);
    }
  }
  return table[n][m];
}

/// Random token drawn from a small alphabet so collisions are common.
inline std::string random_token(Rng& rng, int alphabet = 8) {
  return "t" + std::to_string(rng.uniform_int(0, alphabet - 1));
}

inline Transcript random_transcript(Rng& rng, int max_len, int alphabet = 8) {
  const auto len = rng.uniform_int(0, max_len);
  Transcript t;
  t.reserve(static_cast<std::size_t>(len));
  for (std::int64_t i = 0; i < len; ++i) t.push_back(random_token(rng, alphabet));
  return t;
}

/// Unique scratch directory under the system temp dir; removed on
/// destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& label) {
    static std::uint64_t counter = 0;
    dir_ = std::filesystem::temp_directory_path() /
           ("minival-" + label + "-" + std::to_string(++counter) + "-" +
            std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return dir_; }
  std::filesystem::path file(const std::string& name) const {
    return dir_ / name;
  }

 private:
  std::filesystem::path dir_;
};

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::ofstream out(path);
  out << content;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace minival::test

#endif  // MINIVAL_TESTS_TEST_SUPPORT_HPP
