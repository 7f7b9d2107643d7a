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

#ifndef MINIVAL_EVAL_CACHE_HPP
#define MINIVAL_EVAL_CACHE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minival/types.hpp"
#include "minival/wer.hpp"

namespace minival {

using EditVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using EditMatrix =
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Per-sample edit counts for the baseline and every fine-tuned run,
/// pinned to one sample ordering. Makes any subset's WER an O(|subset|)
/// integer sum, so the optimizer never re-scores transcripts.
struct EvalCache {
  static constexpr std::int32_t kFormatVersion = 1;

  std::vector<std::string> sample_ids;  // defines the index space
  EditVector ref_words;                 // per sample
  EditVector baseline_edits;            // per sample
  std::vector<RunKey> run_keys;         // row order of run_edits
  EditMatrix run_edits;                 // rows: runs, cols: samples

  std::int32_t num_samples() const {
    return static_cast<std::int32_t>(sample_ids.size());
  }
  std::int32_t num_runs() const {
    return static_cast<std::int32_t>(run_keys.size());
  }
  std::int64_t total_ref_words() const { return ref_words.sum(); }

  /// Row indices of simulated runs, in cache row order.
  std::vector<std::int32_t> simulated_rows() const;

  /// Row index for a key; nullopt if absent.
  std::optional<std::int32_t> find_row(const RunKey& key) const;
};

/// Throws EmptySubset / IndexOutOfRange / DuplicateIndex.
void validate_subset(std::span<const std::int32_t> subset,
                     std::int32_t num_samples);

/// Pooled WerStat over the selected samples for one row. `row` is a run row
/// index, or nullopt for the baseline. The subset must already be valid.
WerStat subset_stat(const EvalCache& cache,
                    std::optional<std::int32_t> row,
                    std::span<const std::int32_t> subset);

/// Pooled WER over exactly the selected samples for that row; validates the
/// subset. Throws EmptyReference when the selection has no reference words.
double subset_wer(const EvalCache& cache, std::optional<std::int32_t> row,
                  std::span<const std::int32_t> subset);
double subset_wer(const EvalCache& cache, std::optional<std::int32_t> row,
                  const SubsetCandidate& subset);

/// Versioned JSON container, byte-stable for identical inputs.
void save_cache(const EvalCache& cache, const std::filesystem::path& path);
EvalCache load_cache(const std::filesystem::path& path);

}  // namespace minival

#endif  // MINIVAL_EVAL_CACHE_HPP
