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

#include "minival/pseudo_users.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <numeric>

#include "minival/errors.hpp"
#include "minival/rng.hpp"

namespace minival {

namespace {

constexpr std::uint64_t kSubsampleTag = 0x70736575646f0001ULL;

}  // namespace

std::vector<std::vector<std::string>> assign_top_n(
    const EmbeddingSet& pool, const EmbeddingSet& centroids, std::int32_t n) {
  if (pool.size() == 0) throw EmptyPool("embedding pool is empty");
  if (centroids.size() == 0) throw EmptyPool("centroid set is empty");
  if (pool.dim() != centroids.dim()) {
    throw DimensionMismatch("pool dimension " + std::to_string(pool.dim()) +
                            " != centroid dimension " +
                            std::to_string(centroids.dim()));
  }
  if (n < 1 || n > pool.size()) {
    throw ConfigInvalid("top-n " + std::to_string(n) +
                        " outside [1, " + std::to_string(pool.size()) + "]");
  }

  // Row-normalize once; cosine similarity is then a plain inner product.
  Eigen::MatrixXd unit_pool = pool.vectors;
  for (Eigen::Index r = 0; r < unit_pool.rows(); ++r)
    unit_pool.row(r) /= unit_pool.row(r).norm();

  std::vector<std::vector<std::string>> result;
  result.reserve(static_cast<std::size_t>(centroids.size()));
  std::vector<std::int32_t> order(static_cast<std::size_t>(pool.size()));
  for (std::int32_t c = 0; c < centroids.size(); ++c) {
    Eigen::VectorXd centroid = centroids.vectors.row(c).transpose();
    const double norm = centroid.norm();
    if (norm == 0.0)
      throw DimensionMismatch("centroid " + centroids.ids[c] +
                              " has zero norm");
    centroid /= norm;
    const Eigen::VectorXd sims = unit_pool * centroid;

    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::int32_t a, std::int32_t b) {
                if (sims(a) != sims(b)) return sims(a) > sims(b);
                return pool.ids[static_cast<std::size_t>(a)] <
                       pool.ids[static_cast<std::size_t>(b)];
              });
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (std::int32_t i = 0; i < n; ++i)
      ids.push_back(pool.ids[static_cast<std::size_t>(order[i])]);
    result.push_back(std::move(ids));
  }
  return result;
}

std::vector<PseudoUserSet> repeated_subsample(
    std::span<const std::vector<std::string>> per_centroid,
    std::int32_t sets_per_centroid, std::int32_t set_size,
    std::uint64_t seed) {
  if (sets_per_centroid < 1 || set_size < 1)
    throw ConfigInvalid("sets_per_centroid and set_size must be positive");
  std::vector<PseudoUserSet> users;
  users.reserve(per_centroid.size() *
                static_cast<std::size_t>(sets_per_centroid));
  for (std::size_t c = 0; c < per_centroid.size(); ++c) {
    const auto& list = per_centroid[c];
    if (static_cast<std::int32_t>(list.size()) < set_size) {
      throw InsufficientSamples(
          "centroid " + std::to_string(c) + " offers " +
          std::to_string(list.size()) + " samples, need " +
          std::to_string(set_size));
    }
    for (std::int32_t r = 0; r < sets_per_centroid; ++r) {
      Rng rng(derive_seed(seed, kSubsampleTag, c, static_cast<std::uint64_t>(r)));
      const auto picks = rng.sample_without_replacement(
          static_cast<std::int32_t>(list.size()), set_size);
      PseudoUserSet user;
      user.user_id =
          static_cast<std::int32_t>(c) * sets_per_centroid + r;
      user.sample_ids.reserve(picks.size());
      for (const auto i : picks)
        user.sample_ids.push_back(list[static_cast<std::size_t>(i)]);
      users.push_back(std::move(user));
    }
  }
  return users;
}

void write_pseudo_users(const std::filesystem::path& path,
                        std::span<const PseudoUserSet> users) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  for (const auto& user : users) {
    nlohmann::json j;
    j["user_id"] = user.user_id;
    j["sample_ids"] = user.sample_ids;
    out << j.dump() << '\n';
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

std::vector<PseudoUserSet> read_pseudo_users(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::vector<PseudoUserSet> users;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      PseudoUserSet user;
      user.user_id = j.at("user_id").get<std::int32_t>();
      user.sample_ids = j.at("sample_ids").get<std::vector<std::string>>();
      users.push_back(std::move(user));
    } catch (const nlohmann::json::exception& e) {
      throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                            ": " + e.what());
    }
  }
  return users;
}

}  // namespace minival
