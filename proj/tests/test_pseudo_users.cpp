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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "minival/errors.hpp"
#include "minival/pseudo_users.hpp"
#include "minival/rng.hpp"
#include "test_support.hpp"

using namespace minival;

namespace {

EmbeddingSet make_set(const std::vector<std::string>& ids,
                      const std::vector<std::vector<double>>& rows) {
  EmbeddingSet set;
  set.ids = ids;
  set.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      set.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
  }
  for (std::size_t i = 0; i < ids.size(); ++i)
    set.index_of.emplace(ids[i], static_cast<std::int32_t>(i));
  return set;
}

}  // namespace

TEST_SUITE_BEGIN("pseudousers");

TEST_CASE("a centroid equal to one pool vector is self-nearest") {
  const auto pool =
      make_set({"a", "b", "c"}, {{1.0, 0.0}, {0.0, 1.0}, {0.7, 0.7}});
  const auto centroids = make_set({"c0"}, {{0.0, 1.0}});
  const auto lists = assign_top_n(pool, centroids, 1);
  REQUIRE(lists.size() == 1);
  CHECK(lists[0] == std::vector<std::string>{"b"});
}

TEST_CASE("orthogonal centroids split an aligned pool") {
  const auto pool = make_set(
      {"x1", "x2", "y1", "y2"},
      {{2.0, 0.0}, {3.0, 0.1}, {0.0, 1.0}, {0.1, 4.0}});
  const auto centroids = make_set({"cx", "cy"}, {{1.0, 0.0}, {0.0, 1.0}});
  const auto lists = assign_top_n(pool, centroids, 2);
  REQUIRE(lists.size() == 2);
  CHECK(std::set<std::string>(lists[0].begin(), lists[0].end()) ==
        std::set<std::string>{"x1", "x2"});
  CHECK(std::set<std::string>(lists[1].begin(), lists[1].end()) ==
        std::set<std::string>{"y1", "y2"});
}

TEST_CASE("n equal to the pool lists everything, ties by id") {
  const auto pool = make_set({"b", "a"}, {{1.0, 0.0}, {1.0, 0.0}});
  const auto centroids = make_set({"c"}, {{1.0, 0.0}});
  const auto lists = assign_top_n(pool, centroids, 2);
  // Equal similarity: ascending id order breaks the tie.
  CHECK(lists[0] == std::vector<std::string>{"a", "b"});
}

TEST_CASE("cosine assignment is scale invariant") {
  Rng rng(77);
  std::vector<std::vector<double>> rows;
  std::vector<std::string> ids;
  for (int i = 0; i < 30; ++i) {
    ids.push_back("s" + std::to_string(i));
    rows.push_back({rng.uniform_real(-1, 1), rng.uniform_real(-1, 1),
                    rng.uniform_real(-1, 1)});
  }
  const auto pool = make_set(ids, rows);
  auto scaled_rows = rows;
  for (auto& row : scaled_rows)
    for (auto& v : row) v *= 8.0;  // power of two: exact
  const auto scaled_pool = make_set(ids, scaled_rows);
  const auto centroids =
      make_set({"c0", "c1"}, {{1.0, 0.2, -0.3}, {-0.5, 0.8, 0.1}});
  CHECK(assign_top_n(pool, centroids, 7) ==
        assign_top_n(scaled_pool, centroids, 7));
}

TEST_CASE("assignment errors") {
  const auto pool = make_set({"a"}, {{1.0, 0.0}});
  const auto centroids3 = make_set({"c"}, {{1.0, 0.0, 0.0}});
  CHECK_THROWS_AS(assign_top_n(pool, centroids3, 1), DimensionMismatch);
  EmbeddingSet empty;
  empty.vectors.resize(0, 2);
  CHECK_THROWS_AS(assign_top_n(empty, make_set({"c"}, {{1.0, 0.0}}), 1),
                  EmptyPool);
  CHECK_THROWS_AS(assign_top_n(pool, centroids3, 0), DimensionMismatch);
  const auto centroids2 = make_set({"c"}, {{1.0, 0.0}});
  CHECK_THROWS_AS(assign_top_n(pool, centroids2, 2), ConfigInvalid);
}

TEST_CASE("repeated_subsample draws the configured shape") {
  std::vector<std::vector<std::string>> lists(12);
  for (int c = 0; c < 12; ++c) {
    for (int i = 0; i < 150; ++i)
      lists[static_cast<std::size_t>(c)].push_back(
          "c" + std::to_string(c) + "-" + std::to_string(i));
  }
  const auto users = repeated_subsample(lists, 6, 24, 7);
  REQUIRE(users.size() == 72);
  for (std::size_t u = 0; u < users.size(); ++u) {
    CHECK(users[u].user_id == static_cast<std::int32_t>(u));
    CHECK(users[u].sample_ids.size() == 24);
    const std::set<std::string> unique(users[u].sample_ids.begin(),
                                       users[u].sample_ids.end());
    CHECK(unique.size() == 24);
    // Every id comes from the owning centroid's list.
    const auto centroid = u / 6;
    for (const auto& id : users[u].sample_ids)
      CHECK(id.rfind("c" + std::to_string(centroid) + "-", 0) == 0);
  }
}

TEST_CASE("repeated_subsample is deterministic and seed-sensitive") {
  std::vector<std::vector<std::string>> lists = {
      {"a", "b", "c", "d", "e", "f", "g", "h"}};
  const auto u1 = repeated_subsample(lists, 3, 4, 42);
  const auto u2 = repeated_subsample(lists, 3, 4, 42);
  REQUIRE(u1.size() == u2.size());
  for (std::size_t i = 0; i < u1.size(); ++i)
    CHECK(u1[i].sample_ids == u2[i].sample_ids);
  const auto u3 = repeated_subsample(lists, 3, 4, 43);
  bool any_diff = false;
  for (std::size_t i = 0; i < u1.size(); ++i)
    any_diff = any_diff || (u1[i].sample_ids != u3[i].sample_ids);
  CHECK(any_diff);
}

TEST_CASE("a set the size of the list covers the whole list") {
  std::vector<std::vector<std::string>> lists = {{"a", "b", "c"}};
  const auto users = repeated_subsample(lists, 1, 3, 5);
  REQUIRE(users.size() == 1);
  CHECK(std::set<std::string>(users[0].sample_ids.begin(),
                              users[0].sample_ids.end()) ==
        std::set<std::string>{"a", "b", "c"});
  CHECK_THROWS_AS(repeated_subsample(lists, 1, 4, 5), InsufficientSamples);
}

TEST_CASE("pseudo-user files round-trip") {
  test::TempDir tmp("pu");
  std::vector<std::vector<std::string>> lists = {{"a", "b", "c", "d"},
                                                 {"e", "f", "g", "h"}};
  const auto users = repeated_subsample(lists, 2, 3, 11);
  write_pseudo_users(tmp.file("pu.jsonl"), users);
  const auto loaded = read_pseudo_users(tmp.file("pu.jsonl"));
  REQUIRE(loaded.size() == users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    CHECK(loaded[i].user_id == users[i].user_id);
    CHECK(loaded[i].sample_ids == users[i].sample_ids);
  }
}

TEST_SUITE_END();
