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

#include "minival/eval_cache.hpp"

#include <fstream>
#include <json.hpp>
#include <vector>

#include "minival/errors.hpp"

namespace minival {

namespace {

using nlohmann::json;

json run_key_to_json(const RunKey& key) {
  json j;
  j["kind"] = to_string(key.kind);
  if (key.user) j["user"] = *key.user;
  if (key.hp) j["hp"] = *key.hp;
  if (key.epoch) j["epoch"] = *key.epoch;
  return j;
}

RunKey run_key_from_json(const json& j) {
  RunKey key;
  key.kind = run_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("user")) key.user = j.at("user").get<std::int32_t>();
  if (j.contains("hp")) key.hp = j.at("hp").get<std::int32_t>();
  if (j.contains("epoch")) key.epoch = j.at("epoch").get<std::int32_t>();
  return key;
}

}  // namespace

std::vector<std::int32_t> EvalCache::simulated_rows() const {
  std::vector<std::int32_t> rows;
  for (std::int32_t r = 0; r < num_runs(); ++r) {
    if (run_keys[static_cast<std::size_t>(r)].kind == RunKind::kSimulated)
      rows.push_back(r);
  }
  return rows;
}

std::optional<std::int32_t> EvalCache::find_row(const RunKey& key) const {
  for (std::int32_t r = 0; r < num_runs(); ++r) {
    if (run_keys[static_cast<std::size_t>(r)] == key) return r;
  }
  return std::nullopt;
}

void validate_subset(std::span<const std::int32_t> subset,
                     std::int32_t num_samples) {
  if (subset.empty()) throw EmptySubset("subset has no indices");
  std::vector<bool> seen(static_cast<std::size_t>(num_samples), false);
  for (std::int32_t i : subset) {
    if (i < 0 || i >= num_samples) {
      throw IndexOutOfRange("subset index " + std::to_string(i) +
                            " outside [0, " + std::to_string(num_samples) +
                            ")");
    }
    if (seen[static_cast<std::size_t>(i)])
      throw DuplicateIndex("subset index " + std::to_string(i) +
                           " appears twice");
    seen[static_cast<std::size_t>(i)] = true;
  }
}

WerStat subset_stat(const EvalCache& cache, std::optional<std::int32_t> row,
                    std::span<const std::int32_t> subset) {
  WerStat total;
  if (row) {
    const auto r = static_cast<Eigen::Index>(*row);
    for (std::int32_t i : subset) {
      total.edits += cache.run_edits(r, i);
      total.ref_words += cache.ref_words(i);
    }
  } else {
    for (std::int32_t i : subset) {
      total.edits += cache.baseline_edits(i);
      total.ref_words += cache.ref_words(i);
    }
  }
  return total;
}

double subset_wer(const EvalCache& cache, std::optional<std::int32_t> row,
                  std::span<const std::int32_t> subset) {
  validate_subset(subset, cache.num_samples());
  if (row && (*row < 0 || *row >= cache.num_runs()))
    throw IndexOutOfRange("run row " + std::to_string(*row) + " outside [0, " +
                          std::to_string(cache.num_runs()) + ")");
  const WerStat stat = subset_stat(cache, row, subset);
  return wer(stat.edits, stat.ref_words);
}

double subset_wer(const EvalCache& cache, std::optional<std::int32_t> row,
                  const SubsetCandidate& subset) {
  return subset_wer(cache, row, std::span<const std::int32_t>(subset.indices));
}

void save_cache(const EvalCache& cache, const std::filesystem::path& path) {
  json j;
  j["format_version"] = EvalCache::kFormatVersion;
  j["sample_ids"] = cache.sample_ids;
  j["ref_words"] = std::vector<std::int64_t>(
      cache.ref_words.data(), cache.ref_words.data() + cache.ref_words.size());
  j["baseline_edits"] = std::vector<std::int64_t>(
      cache.baseline_edits.data(),
      cache.baseline_edits.data() + cache.baseline_edits.size());
  json runs = json::array();
  for (const auto& key : cache.run_keys) runs.push_back(run_key_to_json(key));
  j["run_index"] = std::move(runs);
  json rows = json::array();
  for (Eigen::Index r = 0; r < cache.run_edits.rows(); ++r) {
    rows.push_back(std::vector<std::int64_t>(
        cache.run_edits.row(r).begin(), cache.run_edits.row(r).end()));
  }
  j["run_edits"] = std::move(rows);

  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << j.dump() << '\n';
  if (!out) throw IoFailure("failed writing " + path.string());
}

EvalCache load_cache(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MalformedRecord(path.string() + ": " + e.what());
  }
  if (!j.contains("format_version") ||
      j.at("format_version").get<std::int32_t>() != EvalCache::kFormatVersion) {
    throw MalformedRecord(path.string() + ": unsupported cache format version");
  }
  EvalCache cache;
  cache.sample_ids = j.at("sample_ids").get<std::vector<std::string>>();
  const auto ref_words = j.at("ref_words").get<std::vector<std::int64_t>>();
  const auto baseline =
      j.at("baseline_edits").get<std::vector<std::int64_t>>();
  const auto n = static_cast<Eigen::Index>(cache.sample_ids.size());
  if (static_cast<Eigen::Index>(ref_words.size()) != n ||
      static_cast<Eigen::Index>(baseline.size()) != n) {
    throw MalformedRecord(path.string() + ": column counts disagree");
  }
  cache.ref_words = Eigen::Map<const EditVector>(ref_words.data(), n);
  cache.baseline_edits = Eigen::Map<const EditVector>(baseline.data(), n);
  for (const auto& rk : j.at("run_index"))
    cache.run_keys.push_back(run_key_from_json(rk));
  const auto num_runs = static_cast<Eigen::Index>(cache.run_keys.size());
  cache.run_edits.resize(num_runs, n);
  const auto& rows = j.at("run_edits");
  if (static_cast<Eigen::Index>(rows.size()) != num_runs)
    throw MalformedRecord(path.string() + ": run row counts disagree");
  for (Eigen::Index r = 0; r < num_runs; ++r) {
    const auto row = rows[static_cast<std::size_t>(r)]
                         .get<std::vector<std::int64_t>>();
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw MalformedRecord(path.string() + ": run row " + std::to_string(r) +
                            " has wrong length");
    cache.run_edits.row(r) = Eigen::Map<const EditVector>(
        row.data(), static_cast<Eigen::Index>(row.size()));
  }
  return cache;
}

}  // namespace minival
