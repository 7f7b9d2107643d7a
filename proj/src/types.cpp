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

#include "minival/types.hpp"

#include <numeric>

#include "minival/errors.hpp"

namespace minival {

const char* to_string(RunKind kind) {
  switch (kind) {
    case RunKind::kBaseline:
      return "baseline";
    case RunKind::kSimulated:
      return "simulated";
    case RunKind::kTarget:
      return "target";
  }
  return "unknown";
}

RunKind run_kind_from_string(const std::string& s) {
  if (s == "baseline") return RunKind::kBaseline;
  if (s == "simulated") return RunKind::kSimulated;
  if (s == "target") return RunKind::kTarget;
  throw MalformedRecord("unknown run kind: \"" + s + "\"");
}

std::string format_run_key(const RunKey& key) {
  std::string out = to_string(key.kind);
  if (key.user) out += "/u" + std::to_string(*key.user);
  if (key.hp) out += "/h" + std::to_string(*key.hp);
  if (key.epoch) out += "/e" + std::to_string(*key.epoch);
  return out;
}

void Dataset::add(Sample sample) {
  auto [it, inserted] =
      index_of.emplace(sample.id, static_cast<std::int32_t>(samples.size()));
  if (!inserted)
    throw DuplicateId("duplicate sample id \"" + sample.id + "\"");
  samples.push_back(std::move(sample));
}

SubsetCandidate SubsetCandidate::full(std::int32_t num_samples) {
  SubsetCandidate subset;
  subset.indices.resize(static_cast<std::size_t>(num_samples));
  std::iota(subset.indices.begin(), subset.indices.end(), 0);
  return subset;
}

}  // namespace minival
