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

#include "minival/wer.hpp"

#include <algorithm>
#include <vector>

#include "minival/errors.hpp"

namespace minival {

std::int64_t edit_distance(const Transcript& ref, const Transcript& hyp) {
  std::size_t lo = 0;
  std::size_t ref_end = ref.size();
  std::size_t hyp_end = hyp.size();
  // Strip the common prefix and suffix; they never contribute edits.
  while (lo < ref_end && lo < hyp_end && ref[lo] == hyp[lo]) ++lo;
  while (ref_end > lo && hyp_end > lo && ref[ref_end - 1] == hyp[hyp_end - 1]) {
    --ref_end;
    --hyp_end;
  }
  const std::size_t n = ref_end - lo;
  const std::size_t m = hyp_end - lo;
  if (n == 0) return static_cast<std::int64_t>(m);
  if (m == 0) return static_cast<std::int64_t>(n);

  std::vector<std::int64_t> prev(m + 1);
  std::vector<std::int64_t> curr(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<std::int64_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    curr[0] = static_cast<std::int64_t>(i);
    const auto& r = ref[lo + i - 1];
    for (std::size_t j = 1; j <= m; ++j) {
      const std::int64_t sub = prev[j - 1] + (r == hyp[lo + j - 1] ? 0 : 1);
      curr[j] = std::min({sub, prev[j] + 1, curr[j - 1] + 1});
    }
    std::swap(prev, curr);
  }
  return prev[m];
}

double wer(std::int64_t edits, std::int64_t ref_words) {
  if (ref_words <= 0)
    throw EmptyReference("wer: pooled reference has no words");
  return static_cast<double>(edits) / static_cast<double>(ref_words);
}

double wer(std::span<const WerStat> stats) {
  WerStat total;
  for (const auto& s : stats) total += s;
  return wer(total.edits, total.ref_words);
}

double one_edit_guard(std::int64_t ref_words) {
  if (ref_words <= 0)
    throw EmptyReference("one_edit_guard: reference has no words");
  return 1.0 / static_cast<double>(ref_words);
}

double forgetting_score(double wer_after, double wer_before, double eps_div) {
  return (wer_after - wer_before) / std::max(wer_before, eps_div);
}

double improvement_score(double wer_after, double wer_before, double eps_div) {
  return (wer_before - wer_after) / std::max(wer_before, eps_div);
}

}  // namespace minival
