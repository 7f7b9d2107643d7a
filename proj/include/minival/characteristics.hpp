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

#ifndef MINIVAL_CHARACTERISTICS_HPP
#define MINIVAL_CHARACTERISTICS_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "minival/eval_cache.hpp"
#include "minival/types.hpp"

namespace minival {

/// Division guard policy for the relative scores. By default the guard is
/// one edit's worth of WER on the evaluated selection; a fixed epsilon can
/// be configured instead. Disabling the guard makes zero-baseline subsets
/// unscorable (the fitness layer maps that to -inf).
struct DivGuard {
  bool enabled = true;
  std::optional<double> fixed_eps;

  /// Epsilon for this selection: the fixed value if configured, else one
  /// edit's worth of WER.
  double resolve(std::int64_t subset_ref_words) const;
};

/// Forgetting scores of one subset across runs, ordered by cache row order.
struct ForgettingVector {
  Eigen::VectorXd values;
  SubsetCandidate subset;
  std::vector<std::int32_t> rows;  // cache rows the entries correspond to
};

/// Entry n is the relative WER increase of run rows[n] on the subset,
/// against the baseline WER of the same subset. Rows default to all
/// simulated runs. Throws EmptySubset; DegenerateInput when the subset's
/// baseline WER is zero and the guard is disabled.
ForgettingVector forgetting_vector(const EvalCache& cache,
                                   const SubsetCandidate& subset,
                                   const DivGuard& guard = {},
                                   std::span<const std::int32_t> rows = {});

/// Improvement on the user's own data paired with forgetting on the full
/// validation set, one record per simulated run.
struct IFRecord {
  RunKey run;
  double improvement = 0.0;
  double forgetting = 0.0;
};

/// Assembles I-F characteristics: forgetting from the validation cache
/// (full set), improvement from each user's cache over their own
/// fine-tuning samples. Every simulated run in the validation cache must
/// have a matching row in exactly one user cache (IncompleteRun otherwise).
std::vector<IFRecord> gather_if(const EvalCache& val_cache,
                                std::span<const EvalCache> user_caches,
                                const DivGuard& guard = {});

/// Conventional threshold below which a run counts as an outlier
/// (improvement on the validation set rather than forgetting).
inline constexpr double kOutlierForgettingThreshold = -0.06;

/// Cache rows (among `rows`, default all simulated) whose full-set
/// forgetting is at or above the threshold; used to drop outlier runs from
/// optimization targets.
std::vector<std::int32_t> filter_outlier_rows(
    const EvalCache& cache, const DivGuard& guard = {},
    double threshold = kOutlierForgettingThreshold,
    std::span<const std::int32_t> rows = {});

/// CSV export: user, hp, improvement, forgetting, outlier flag.
void write_if_csv(const std::filesystem::path& path,
                  std::span<const IFRecord> records,
                  double outlier_threshold = kOutlierForgettingThreshold);

}  // namespace minival

#endif  // MINIVAL_CHARACTERISTICS_HPP
