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

#ifndef MINIVAL_WER_HPP
#define MINIVAL_WER_HPP

#include <cstdint>
#include <span>

#include "minival/text.hpp"

namespace minival {

/// Per-sample scoring summary. Additive across samples, which is what makes
/// subset WER a cached integer sum.
struct WerStat {
  std::int64_t edits = 0;
  std::int64_t ref_words = 0;

  WerStat& operator+=(const WerStat& other) {
    edits += other.edits;
    ref_words += other.ref_words;
    return *this;
  }
  friend WerStat operator+(WerStat a, const WerStat& b) { return a += b; }
  friend bool operator==(const WerStat&, const WerStat&) = default;
};

/// Word-level Levenshtein distance with unit substitution/insertion/deletion
/// costs.
std::int64_t edit_distance(const Transcript& ref, const Transcript& hyp);

/// Corpus-pooled WER: sum of edits over sum of reference words.
/// Throws EmptyReference when the pooled reference is empty. May exceed 1.
double wer(std::span<const WerStat> stats);
double wer(std::int64_t edits, std::int64_t ref_words);

/// Division guard for relative scores: one edit's worth of WER on the
/// evaluated set. Keeps the scores defined when the baseline WER is zero.
double one_edit_guard(std::int64_t ref_words);

/// Relative WER increase, (after - before) / max(before, eps_div).
/// Positive means forgetting.
double forgetting_score(double wer_after, double wer_before, double eps_div);

/// Relative WER reduction (WERR). Positive means improvement.
double improvement_score(double wer_after, double wer_before, double eps_div);

}  // namespace minival

#endif  // MINIVAL_WER_HPP
