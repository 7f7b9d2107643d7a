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

#ifndef MINIVAL_PSEUDO_USERS_HPP
#define MINIVAL_PSEUDO_USERS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "minival/io.hpp"

namespace minival {

/// One pseudo-user: a fixed-size draw of similar fine-tuning samples.
struct PseudoUserSet {
  std::int32_t user_id = 0;
  std::vector<std::string> sample_ids;
};

/// For each centroid, the n pool samples with the highest cosine
/// similarity, ties broken by sample id ascending. A sample may appear
/// under several centroids. Throws DimensionMismatch and EmptyPool.
std::vector<std::vector<std::string>> assign_top_n(
    const EmbeddingSet& pool, const EmbeddingSet& centroids, std::int32_t n);

/// Repeated random subsampling: sets_per_centroid independent draws of
/// set_size ids (without replacement within a draw) from every centroid's
/// list. User ids run 0..U-1 in centroid-major order. Deterministic given
/// the seed. Throws InsufficientSamples.
std::vector<PseudoUserSet> repeated_subsample(
    std::span<const std::vector<std::string>> per_centroid,
    std::int32_t sets_per_centroid, std::int32_t set_size, std::uint64_t seed);

/// Line-delimited {"user_id": ..., "sample_ids": [...]} records.
void write_pseudo_users(const std::filesystem::path& path,
                        std::span<const PseudoUserSet> users);
std::vector<PseudoUserSet> read_pseudo_users(const std::filesystem::path& path);

}  // namespace minival

#endif  // MINIVAL_PSEUDO_USERS_HPP
