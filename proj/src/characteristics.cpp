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

#include "minival/characteristics.hpp"

#include <fstream>

#include "minival/csv.hpp"
#include "minival/errors.hpp"

namespace minival {

double DivGuard::resolve(std::int64_t subset_ref_words) const {
  if (fixed_eps) return *fixed_eps;
  return one_edit_guard(subset_ref_words);
}

namespace {

double guarded_forgetting(double wer_after, double wer_before,
                          const DivGuard& guard, std::int64_t ref_words) {
  if (!guard.enabled) {
    if (wer_before == 0.0)
      throw DegenerateInput("baseline WER of the selection is zero");
    return forgetting_score(wer_after, wer_before, 0.0);
  }
  return forgetting_score(wer_after, wer_before, guard.resolve(ref_words));
}

double guarded_improvement(double wer_after, double wer_before,
                           const DivGuard& guard, std::int64_t ref_words) {
  if (!guard.enabled) {
    if (wer_before == 0.0)
      throw DegenerateInput("baseline WER of the selection is zero");
    return improvement_score(wer_after, wer_before, 0.0);
  }
  return improvement_score(wer_after, wer_before, guard.resolve(ref_words));
}

}  // namespace

ForgettingVector forgetting_vector(const EvalCache& cache,
                                   const SubsetCandidate& subset,
                                   const DivGuard& guard,
                                   std::span<const std::int32_t> rows) {
  validate_subset(subset.indices, cache.num_samples());
  std::vector<std::int32_t> selected(rows.begin(), rows.end());
  if (selected.empty()) selected = cache.simulated_rows();
  if (selected.empty())
    throw ConfigInvalid("cache contains no simulated runs");

  const WerStat base = subset_stat(cache, std::nullopt, subset.indices);
  const double wer_before = wer(base.edits, base.ref_words);

  ForgettingVector result;
  result.subset = subset;
  result.rows = selected;
  result.values.resize(static_cast<Eigen::Index>(selected.size()));
  for (std::size_t n = 0; n < selected.size(); ++n) {
    const WerStat after = subset_stat(cache, selected[n], subset.indices);
    const double wer_after = wer(after.edits, after.ref_words);
    result.values(static_cast<Eigen::Index>(n)) =
        guarded_forgetting(wer_after, wer_before, guard, base.ref_words);
  }
  return result;
}

std::vector<IFRecord> gather_if(const EvalCache& val_cache,
                                std::span<const EvalCache> user_caches,
                                const DivGuard& guard) {
  const SubsetCandidate full = SubsetCandidate::full(val_cache.num_samples());
  const ForgettingVector forgetting = forgetting_vector(val_cache, full, guard);

  std::vector<IFRecord> records;
  records.reserve(forgetting.rows.size());
  for (std::size_t n = 0; n < forgetting.rows.size(); ++n) {
    const RunKey& key =
        val_cache.run_keys[static_cast<std::size_t>(forgetting.rows[n])];
    const EvalCache* user_cache = nullptr;
    std::int32_t user_row = -1;
    for (const auto& candidate : user_caches) {
      if (const auto row = candidate.find_row(key)) {
        user_cache = &candidate;
        user_row = *row;
        break;
      }
    }
    if (user_cache == nullptr) {
      throw IncompleteRun("no user cache provides run " + format_run_key(key));
    }
    const double before =
        wer(user_cache->baseline_edits.sum(), user_cache->total_ref_words());
    const double after = wer(user_cache->run_edits.row(user_row).sum(),
                             user_cache->total_ref_words());
    IFRecord record;
    record.run = key;
    record.improvement = guarded_improvement(after, before, guard,
                                             user_cache->total_ref_words());
    record.forgetting = forgetting.values(static_cast<Eigen::Index>(n));
    records.push_back(record);
  }
  return records;
}

std::vector<std::int32_t> filter_outlier_rows(
    const EvalCache& cache, const DivGuard& guard, double threshold,
    std::span<const std::int32_t> rows) {
  const SubsetCandidate full = SubsetCandidate::full(cache.num_samples());
  const ForgettingVector forgetting =
      forgetting_vector(cache, full, guard, rows);
  std::vector<std::int32_t> kept;
  for (std::size_t n = 0; n < forgetting.rows.size(); ++n) {
    if (forgetting.values(static_cast<Eigen::Index>(n)) >= threshold)
      kept.push_back(forgetting.rows[n]);
  }
  return kept;
}

void write_if_csv(const std::filesystem::path& path,
                  std::span<const IFRecord> records,
                  double outlier_threshold) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << "kind,user,hp,improvement,forgetting,outlier\n";
  for (const auto& record : records) {
    out << to_string(record.run.kind) << ','
        << (record.run.user ? std::to_string(*record.run.user) : "") << ','
        << (record.run.hp ? std::to_string(*record.run.hp) : "") << ','
        << format_double(record.improvement) << ','
        << format_double(record.forgetting) << ','
        << (record.forgetting < outlier_threshold ? 1 : 0) << '\n';
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

}  // namespace minival
