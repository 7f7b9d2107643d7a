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

#ifndef MINIVAL_TYPES_HPP
#define MINIVAL_TYPES_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "minival/text.hpp"

namespace minival {

enum class RunKind { kBaseline, kSimulated, kTarget };

const char* to_string(RunKind kind);
RunKind run_kind_from_string(const std::string& s);

/// Identifies one fine-tuning outcome. Baseline runs carry no user, hp, or
/// epoch; simulated runs carry (user, hp); target runs carry a user and,
/// for per-epoch rows, an epoch.
struct RunKey {
  RunKind kind = RunKind::kBaseline;
  std::optional<std::int32_t> user;
  std::optional<std::int32_t> hp;
  std::optional<std::int32_t> epoch;

  friend auto operator<=>(const RunKey&, const RunKey&) = default;

  static RunKey baseline() { return {}; }
  static RunKey simulated(std::int32_t user, std::int32_t hp) {
    return {RunKind::kSimulated, user, hp, std::nullopt};
  }
  static RunKey target(std::int32_t user,
                       std::optional<std::int32_t> epoch = std::nullopt) {
    return {RunKind::kTarget, user, std::nullopt, epoch};
  }
};

/// Human-readable form, e.g. "simulated/u3/h1", for diagnostics.
std::string format_run_key(const RunKey& key);

/// One grid point of the fine-tuning hyper-parameter sweep.
struct HyperParams {
  std::int32_t epochs = 0;
  double learning_rate = 0.0;

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

/// A validation or fine-tuning sample: id plus normalized reference.
struct Sample {
  std::string id;
  Transcript reference;

  std::int64_t ref_words() const {
    return static_cast<std::int64_t>(reference.size());
  }
};

/// An ordered collection of samples with unique ids. Order defines the
/// index space used by caches and subsets.
struct Dataset {
  std::vector<Sample> samples;
  std::unordered_map<std::string, std::int32_t> index_of;

  std::int32_t size() const {
    return static_cast<std::int32_t>(samples.size());
  }
  /// Throws DuplicateId.
  void add(Sample sample);
};

/// A candidate subset of sample indices (the GA genome). Indices are unique
/// and kept in genome order; only the set matters for scoring.
struct SubsetCandidate {
  std::vector<std::int32_t> indices;

  std::int32_t size() const {
    return static_cast<std::int32_t>(indices.size());
  }
  static SubsetCandidate full(std::int32_t num_samples);
};

}  // namespace minival

#endif  // MINIVAL_TYPES_HPP
