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

#ifndef MINIVAL_EARLY_STOP_HPP
#define MINIVAL_EARLY_STOP_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "minival/characteristics.hpp"
#include "minival/eval_cache.hpp"
#include "minival/wer.hpp"

namespace minival {

/// One evaluation frame of a fine-tuning run: per-sample edit counts over
/// the validation set (cache sample order) plus the pooled WER stat over
/// the user's own data.
struct EpochFrame {
  EditVector val_edits;
  WerStat user_wer;
};

/// Per-epoch prediction trajectory for one target user, as produced by a
/// trainer adapter (live trainer or file replay). Epoch 0 is the
/// pre-trained model; frames[k] holds epoch k+1.
struct Trajectory {
  std::int32_t user = 0;
  WerStat baseline_user_wer;      // epoch-0 WER on the user's own data
  EditVector baseline_val_edits;  // epoch-0 edits over the validation set
                                  // (may be empty; the cache is authoritative)
  std::vector<EpochFrame> frames;

  std::int32_t max_epoch() const {
    return static_cast<std::int32_t>(frames.size());
  }
};

enum class StopReason { kThreshold, kMaxEpochs };

const char* to_string(StopReason reason);
StopReason stop_reason_from_string(const std::string& s);

struct StopOutcome {
  std::int32_t user = 0;
  double gamma = 0.0;
  std::int32_t epochs_trained = 0;
  StopReason reason = StopReason::kMaxEpochs;
  double forgetting_eval = 0.0;  // on the evaluation subset, at the kept epoch
  double forgetting_full = 0.0;  // on the full validation set
  double improvement = 0.0;      // on the user's own data
};

/// Fine-tune-with-early-stopping over a recorded trajectory: training stops
/// before the first epoch whose forgetting on the evaluation subset exceeds
/// gamma, or after max_epochs. The returned model is the last within-
/// threshold epoch (epoch 0 = the pre-trained model, all scores zero).
/// Throws TrajectoryTooShort when the trajectory covers fewer than
/// max_epochs epochs.
StopOutcome fine_tune_early_stop(const Trajectory& trajectory,
                                 const EvalCache& cache,
                                 const SubsetCandidate& eval_subset,
                                 double gamma, std::int32_t max_epochs,
                                 const DivGuard& guard = {});

/// One outcome per (trajectory, gamma), gammas iterated per user. Rows are
/// ordered by trajectory order, then by the gamma list order.
std::vector<StopOutcome> run_cohort(std::span<const Trajectory> trajectories,
                                    const EvalCache& cache,
                                    const SubsetCandidate& eval_subset,
                                    std::span<const double> gammas,
                                    std::int32_t max_epochs,
                                    const DivGuard& guard = {},
                                    int workers = 1);

/// Trajectory files are line-delimited frames
/// {"user": ..., "epoch": ..., "val_edits": [...],
///  "user_wer": {"edits": ..., "ref_words": ...}}.
/// Every user needs a contiguous epoch range starting at 0; the epoch-0
/// frame supplies the pre-trained user WER and may carry baseline val
/// edits. Frames for epochs >= 1 must cover expected_num_samples entries.
std::vector<Trajectory> read_trajectories(const std::filesystem::path& path,
                                          std::int32_t expected_num_samples);
void write_trajectories(const std::filesystem::path& path,
                        std::span<const Trajectory> trajectories);

/// Outcome tables: user,gamma,epochs_trained,reason,improvement,forgetting_full
void write_outcomes_csv(const std::filesystem::path& path,
                        std::span<const StopOutcome> outcomes);
std::vector<StopOutcome> read_outcomes_csv(const std::filesystem::path& path);

}  // namespace minival

#endif  // MINIVAL_EARLY_STOP_HPP
