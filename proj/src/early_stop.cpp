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

#include "minival/early_stop.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <map>

#include "minival/csv.hpp"
#include "minival/errors.hpp"
#include "minival/parallel.hpp"

namespace minival {

namespace {

using nlohmann::json;

double guarded_forgetting(double wer_after, double wer_before,
                          const DivGuard& guard, std::int64_t ref_words) {
  if (!guard.enabled) {
    if (wer_before == 0.0)
      throw DegenerateInput("baseline WER of the selection is zero");
    return forgetting_score(wer_after, wer_before, 0.0);
  }
  return forgetting_score(wer_after, wer_before, guard.resolve(ref_words));
}

double frame_subset_wer(const EpochFrame& frame, const EvalCache& cache,
                        std::span<const std::int32_t> subset) {
  WerStat stat;
  for (const std::int32_t i : subset) {
    stat.edits += frame.val_edits(i);
    stat.ref_words += cache.ref_words(i);
  }
  return wer(stat.edits, stat.ref_words);
}

}  // namespace

const char* to_string(StopReason reason) {
  return reason == StopReason::kThreshold ? "threshold" : "max_epochs";
}

StopReason stop_reason_from_string(const std::string& s) {
  if (s == "threshold") return StopReason::kThreshold;
  if (s == "max_epochs") return StopReason::kMaxEpochs;
  throw MalformedRecord("unknown stop reason: \"" + s + "\"");
}

StopOutcome fine_tune_early_stop(const Trajectory& trajectory,
                                 const EvalCache& cache,
                                 const SubsetCandidate& eval_subset,
                                 double gamma, std::int32_t max_epochs,
                                 const DivGuard& guard) {
  if (max_epochs < 1) throw ConfigInvalid("max_epochs must be positive");
  if (trajectory.max_epoch() < max_epochs) {
    throw TrajectoryTooShort(
        "trajectory for user " + std::to_string(trajectory.user) + " covers " +
        std::to_string(trajectory.max_epoch()) + " epochs, need " +
        std::to_string(max_epochs));
  }
  validate_subset(eval_subset.indices, cache.num_samples());
  for (const auto& frame : trajectory.frames) {
    if (frame.val_edits.size() != cache.num_samples())
      throw DimensionMismatch("trajectory frame does not cover the cache");
  }

  const WerStat sub_base = subset_stat(cache, std::nullopt, eval_subset.indices);
  const double sub_wer0 = wer(sub_base.edits, sub_base.ref_words);

  StopOutcome outcome;
  outcome.user = trajectory.user;
  outcome.gamma = gamma;
  outcome.epochs_trained = max_epochs;
  outcome.reason = StopReason::kMaxEpochs;
  for (std::int32_t epoch = 1; epoch <= max_epochs; ++epoch) {
    const auto& frame = trajectory.frames[static_cast<std::size_t>(epoch - 1)];
    const double score = guarded_forgetting(
        frame_subset_wer(frame, cache, eval_subset.indices), sub_wer0, guard,
        sub_base.ref_words);
    if (score > gamma) {
      outcome.epochs_trained = epoch - 1;
      outcome.reason = StopReason::kThreshold;
      break;
    }
  }

  // Scores of the kept model. Epoch 0 is the pre-trained model itself.
  if (outcome.epochs_trained > 0) {
    const auto& kept =
        trajectory.frames[static_cast<std::size_t>(outcome.epochs_trained - 1)];
    outcome.forgetting_eval = guarded_forgetting(
        frame_subset_wer(kept, cache, eval_subset.indices), sub_wer0, guard,
        sub_base.ref_words);

    const SubsetCandidate full = SubsetCandidate::full(cache.num_samples());
    const WerStat full_base = subset_stat(cache, std::nullopt, full.indices);
    outcome.forgetting_full = guarded_forgetting(
        frame_subset_wer(kept, cache, full.indices),
        wer(full_base.edits, full_base.ref_words), guard, full_base.ref_words);

    const double user_before = wer(trajectory.baseline_user_wer.edits,
                                   trajectory.baseline_user_wer.ref_words);
    const double user_after = wer(kept.user_wer.edits, kept.user_wer.ref_words);
    if (!guard.enabled) {
      outcome.improvement = improvement_score(user_after, user_before, 0.0);
    } else {
      outcome.improvement = improvement_score(
          user_after, user_before,
          guard.resolve(trajectory.baseline_user_wer.ref_words));
    }
  }
  return outcome;
}

std::vector<StopOutcome> run_cohort(std::span<const Trajectory> trajectories,
                                    const EvalCache& cache,
                                    const SubsetCandidate& eval_subset,
                                    std::span<const double> gammas,
                                    std::int32_t max_epochs,
                                    const DivGuard& guard, int workers) {
  if (gammas.empty()) throw ConfigInvalid("no forgetting thresholds given");
  std::vector<StopOutcome> outcomes(trajectories.size() * gammas.size());
  parallel_for(outcomes.size(), workers, [&](std::size_t i) {
    const std::size_t t = i / gammas.size();
    const std::size_t g = i % gammas.size();
    outcomes[i] = fine_tune_early_stop(trajectories[t], cache, eval_subset,
                                       gammas[g], max_epochs, guard);
  });
  return outcomes;
}

std::vector<Trajectory> read_trajectories(const std::filesystem::path& path,
                                          std::int32_t expected_num_samples) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());

  struct RawFrame {
    EditVector val_edits;
    WerStat user_wer;
    bool seen = false;
  };
  std::vector<std::int32_t> user_order;
  std::map<std::int32_t, std::map<std::int32_t, RawFrame>> by_user;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                            ": " + e.what());
    }
    try {
      const auto user = j.at("user").get<std::int32_t>();
      const auto epoch = j.at("epoch").get<std::int32_t>();
      if (epoch < 0)
        throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                              ": negative epoch");
      RawFrame frame;
      const auto edits = j.at("val_edits").get<std::vector<std::int64_t>>();
      frame.val_edits = Eigen::Map<const EditVector>(
          edits.data(), static_cast<Eigen::Index>(edits.size()));
      frame.user_wer.edits = j.at("user_wer").at("edits").get<std::int64_t>();
      frame.user_wer.ref_words =
          j.at("user_wer").at("ref_words").get<std::int64_t>();
      frame.seen = true;
      if (!by_user.contains(user)) user_order.push_back(user);
      auto [it, inserted] = by_user[user].emplace(epoch, std::move(frame));
      if (!inserted)
        throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                              ": duplicate frame for user " +
                              std::to_string(user) + ", epoch " +
                              std::to_string(epoch));
    } catch (const json::exception& e) {
      throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                            ": " + e.what());
    }
  }

  std::vector<Trajectory> trajectories;
  trajectories.reserve(user_order.size());
  for (const auto user : user_order) {
    auto& frames = by_user.at(user);
    if (!frames.contains(0)) {
      throw MalformedRecord(path.string() + ": user " + std::to_string(user) +
                            " lacks the epoch-0 (pre-trained) frame");
    }
    Trajectory trajectory;
    trajectory.user = user;
    trajectory.baseline_user_wer = frames.at(0).user_wer;
    trajectory.baseline_val_edits = std::move(frames.at(0).val_edits);
    std::int32_t expected_epoch = 1;
    for (auto& [epoch, frame] : frames) {
      if (epoch == 0) continue;
      if (epoch != expected_epoch) {
        throw MalformedRecord(path.string() + ": user " + std::to_string(user) +
                              " is missing epoch " +
                              std::to_string(expected_epoch));
      }
      if (frame.val_edits.size() != expected_num_samples) {
        throw MalformedRecord(
            path.string() + ": user " + std::to_string(user) + ", epoch " +
            std::to_string(epoch) + ": val_edits covers " +
            std::to_string(frame.val_edits.size()) + " samples, expected " +
            std::to_string(expected_num_samples));
      }
      trajectory.frames.push_back(
          EpochFrame{std::move(frame.val_edits), frame.user_wer});
      ++expected_epoch;
    }
    trajectories.push_back(std::move(trajectory));
  }
  return trajectories;
}

void write_trajectories(const std::filesystem::path& path,
                        std::span<const Trajectory> trajectories) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  for (const auto& trajectory : trajectories) {
    auto emit = [&](std::int32_t epoch, const EditVector& edits,
                    const WerStat& user_wer) {
      json j;
      j["user"] = trajectory.user;
      j["epoch"] = epoch;
      j["val_edits"] =
          std::vector<std::int64_t>(edits.data(), edits.data() + edits.size());
      j["user_wer"] = {{"edits", user_wer.edits},
                       {"ref_words", user_wer.ref_words}};
      out << j.dump() << '\n';
    };
    emit(0, trajectory.baseline_val_edits, trajectory.baseline_user_wer);
    for (std::size_t k = 0; k < trajectory.frames.size(); ++k) {
      emit(static_cast<std::int32_t>(k + 1), trajectory.frames[k].val_edits,
           trajectory.frames[k].user_wer);
    }
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

void write_outcomes_csv(const std::filesystem::path& path,
                        std::span<const StopOutcome> outcomes) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << "user,gamma,epochs_trained,reason,improvement,forgetting_full\n";
  for (const auto& outcome : outcomes) {
    out << outcome.user << ',' << format_double(outcome.gamma) << ','
        << outcome.epochs_trained << ',' << to_string(outcome.reason) << ','
        << format_double(outcome.improvement) << ','
        << format_double(outcome.forgetting_full) << '\n';
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

std::vector<StopOutcome> read_outcomes_csv(const std::filesystem::path& path) {
  const auto rows = read_csv(
      path, "user,gamma,epochs_trained,reason,improvement,forgetting_full");
  std::vector<StopOutcome> outcomes;
  outcomes.reserve(rows.size());
  for (const auto& row : rows) {
    StopOutcome outcome;
    outcome.user =
        static_cast<std::int32_t>(parse_int(row[0], path.string()));
    outcome.gamma = parse_double(row[1], path.string());
    outcome.epochs_trained =
        static_cast<std::int32_t>(parse_int(row[2], path.string()));
    outcome.reason = stop_reason_from_string(row[3]);
    outcome.improvement = parse_double(row[4], path.string());
    outcome.forgetting_full = parse_double(row[5], path.string());
    outcomes.push_back(outcome);
  }
  return outcomes;
}

}  // namespace minival
