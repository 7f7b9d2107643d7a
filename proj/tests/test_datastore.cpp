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
#include <string>
#include <vector>

#include "minival/errors.hpp"
#include "minival/eval_cache.hpp"
#include "minival/io.hpp"
#include "test_support.hpp"

using namespace minival;

namespace {

std::string two_sample_file() {
  return R"({"id": "s1", "text": "Call Mom"})"
         "\n"
         R"({"id": "s2", "text": "play  SOME jazz"})"
         "\n";
}

// baseline + one simulated run over s1, s2
std::string predictions_file() {
  return R"({"run": {"kind": "baseline"}, "sample_id": "s1", "hyp": "call mom"})"
         "\n"
         R"({"run": {"kind": "baseline"}, "sample_id": "s2", "hyp": "play sum jazz"})"
         "\n"
         R"({"run": {"kind": "simulated", "user": 0, "hp": 1}, "sample_id": "s1", "hyp": "tall mom"})"
         "\n"
         R"({"run": {"kind": "simulated", "user": 0, "hp": 1}, "sample_id": "s2", "hyp": "play some jazz"})"
         "\n";
}

}  // namespace

TEST_SUITE_BEGIN("datastore");

TEST_CASE("ingest_samples reads records in order and normalizes") {
  test::TempDir tmp("samples");
  test::write_text_file(tmp.file("s.jsonl"), two_sample_file());
  const Dataset dataset = ingest_samples(tmp.file("s.jsonl"));
  REQUIRE(dataset.size() == 2);
  CHECK(dataset.samples[0].id == "s1");
  CHECK(dataset.samples[0].reference == Transcript{"call", "mom"});
  CHECK(dataset.samples[1].reference == Transcript{"play", "some", "jazz"});
  CHECK(dataset.index_of.at("s2") == 1);
}

TEST_CASE("ingest_samples rejects duplicates and malformed lines") {
  test::TempDir tmp("samples-bad");
  test::write_text_file(tmp.file("dup.jsonl"),
                        R"({"id": "a", "text": "x"})"
                        "\n"
                        R"({"id": "a", "text": "y"})"
                        "\n");
  CHECK_THROWS_AS(ingest_samples(tmp.file("dup.jsonl")), DuplicateId);

  test::write_text_file(tmp.file("bad.jsonl"),
                        R"({"id": "a", "text": "x"})"
                        "\n{not json\n");
  try {
    ingest_samples(tmp.file("bad.jsonl"));
    FAIL("expected MalformedRecord");
  } catch (const MalformedRecord& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }

  test::write_text_file(tmp.file("miss.jsonl"), R"({"id": "a"})"
                                                "\n");
  CHECK_THROWS_AS(ingest_samples(tmp.file("miss.jsonl")), MalformedRecord);
  CHECK_THROWS_AS(ingest_samples(tmp.file("nonexistent.jsonl")), IoFailure);
}

TEST_CASE("ingest_predictions groups complete runs") {
  test::TempDir tmp("preds");
  test::write_text_file(tmp.file("s.jsonl"), two_sample_file());
  test::write_text_file(tmp.file("p.jsonl"), predictions_file());
  const Dataset dataset = ingest_samples(tmp.file("s.jsonl"));
  const PredictionBatch batch = ingest_predictions(tmp.file("p.jsonl"), dataset);
  REQUIRE(batch.runs.size() == 2);
  CHECK(batch.find(RunKey::baseline()) != nullptr);
  const auto* run = batch.find(RunKey::simulated(0, 1));
  REQUIRE(run != nullptr);
  // Hypotheses normalized identically to references.
  CHECK(run->hyps.at("s2") == Transcript{"play", "some", "jazz"});
}

TEST_CASE("ingest_predictions flags incomplete runs and unknown samples") {
  test::TempDir tmp("preds-bad");
  test::write_text_file(tmp.file("s.jsonl"), two_sample_file());
  test::write_text_file(
      tmp.file("incomplete.jsonl"),
      R"({"run": {"kind": "baseline"}, "sample_id": "s1", "hyp": "call mom"})"
      "\n");
  const Dataset dataset = ingest_samples(tmp.file("s.jsonl"));
  try {
    ingest_predictions(tmp.file("incomplete.jsonl"), dataset);
    FAIL("expected IncompleteRun");
  } catch (const IncompleteRun& e) {
    CHECK(std::string(e.what()).find("s2") != std::string::npos);
  }
  // Partial batches are legal when completeness is waived (per-user runs).
  CHECK_NOTHROW(
      ingest_predictions(tmp.file("incomplete.jsonl"), dataset, false));

  test::write_text_file(
      tmp.file("unknown.jsonl"),
      R"({"run": {"kind": "baseline"}, "sample_id": "zz", "hyp": "call mom"})"
      "\n");
  CHECK_THROWS_AS(ingest_predictions(tmp.file("unknown.jsonl"), dataset),
                  UnknownSample);

  test::write_text_file(
      tmp.file("baduser.jsonl"),
      R"({"run": {"kind": "baseline", "user": 1}, "sample_id": "s1", "hyp": "x"})"
      "\n");
  CHECK_THROWS_AS(ingest_predictions(tmp.file("baduser.jsonl"), dataset),
                  MalformedRecord);
}

TEST_CASE("build_cache scores every cell") {
  test::TempDir tmp("cache");
  test::write_text_file(tmp.file("s.jsonl"), two_sample_file());
  test::write_text_file(tmp.file("p.jsonl"), predictions_file());
  const Dataset dataset = ingest_samples(tmp.file("s.jsonl"));
  const PredictionBatch batch = ingest_predictions(tmp.file("p.jsonl"), dataset);
  const EvalCache cache = build_cache(dataset, batch);

  REQUIRE(cache.num_samples() == 2);
  REQUIRE(cache.num_runs() == 1);
  CHECK(cache.ref_words(0) == 2);
  CHECK(cache.ref_words(1) == 3);
  CHECK(cache.baseline_edits(0) == 0);
  CHECK(cache.baseline_edits(1) == 1);  // "sum" vs "some"
  CHECK(cache.run_edits(0, 0) == 1);    // "tall" vs "call"
  CHECK(cache.run_edits(0, 1) == 0);
  CHECK(cache.run_keys[0] == RunKey::simulated(0, 1));

  // A run identical to the references scores a row of zeros.
  PredictionBatch clean;
  clean.runs.push_back(*batch.find(RunKey::baseline()));
  RunPredictions perfect{RunKey::simulated(9, 0), {}};
  for (const auto& sample : dataset.samples)
    perfect.hyps[sample.id] = sample.reference;
  clean.runs.push_back(perfect);
  const EvalCache clean_cache = build_cache(dataset, clean);
  CHECK(clean_cache.run_edits.row(0).sum() == 0);
}

TEST_CASE("streaming build matches the batch build and the cache round-trips") {
  test::TempDir tmp("cache-rt");
  test::write_text_file(tmp.file("s.jsonl"), two_sample_file());
  test::write_text_file(tmp.file("p.jsonl"), predictions_file());
  const Dataset dataset = ingest_samples(tmp.file("s.jsonl"));
  const EvalCache a =
      build_cache(dataset, ingest_predictions(tmp.file("p.jsonl"), dataset));
  const EvalCache b = build_cache_streaming(dataset, tmp.file("p.jsonl"));
  CHECK(a.sample_ids == b.sample_ids);
  CHECK(a.run_keys == b.run_keys);
  CHECK(a.baseline_edits == b.baseline_edits);
  CHECK(a.run_edits == b.run_edits);

  save_cache(a, tmp.file("cache.json"));
  const EvalCache c = load_cache(tmp.file("cache.json"));
  CHECK(a.sample_ids == c.sample_ids);
  CHECK(a.run_keys == c.run_keys);
  CHECK(a.ref_words == c.ref_words);
  CHECK(a.baseline_edits == c.baseline_edits);
  CHECK(a.run_edits == c.run_edits);

  // Writing the reloaded cache reproduces the file byte for byte.
  save_cache(c, tmp.file("cache2.json"));
  CHECK(test::read_text_file(tmp.file("cache.json")) ==
        test::read_text_file(tmp.file("cache2.json")));
}

TEST_CASE("subset_wer pools exactly the selected samples") {
  EvalCache cache;
  cache.sample_ids = {"a", "b", "c"};
  cache.ref_words = EditVector(3);
  cache.ref_words << 2, 3, 5;
  cache.baseline_edits = EditVector(3);
  cache.baseline_edits << 1, 0, 2;
  cache.run_keys = {RunKey::simulated(0, 0)};
  cache.run_edits.resize(1, 3);
  cache.run_edits << 0, 0, 0;

  const std::vector<std::int32_t> pick = {0, 2};
  CHECK(subset_wer(cache, std::nullopt, pick) == 3.0 / 7.0);
  CHECK(subset_wer(cache, std::nullopt, SubsetCandidate::full(3)) ==
        3.0 / 10.0);
  CHECK(subset_wer(cache, 0, pick) == 0.0);

  CHECK_THROWS_AS(subset_wer(cache, std::nullopt, std::vector<std::int32_t>{}),
                  EmptySubset);
  CHECK_THROWS_AS(
      subset_wer(cache, std::nullopt, std::vector<std::int32_t>{3}),
      IndexOutOfRange);
  CHECK_THROWS_AS(
      subset_wer(cache, std::nullopt, std::vector<std::int32_t>{1, 1}),
      DuplicateIndex);
  CHECK_THROWS_AS(subset_wer(cache, 5, pick), IndexOutOfRange);
}

TEST_CASE("subset_wer recombines over a partition exactly") {
  Rng rng(1234);
  const std::int32_t n = 40;
  EvalCache cache;
  cache.ref_words = EditVector(n);
  cache.baseline_edits = EditVector(n);
  for (std::int32_t i = 0; i < n; ++i) {
    cache.sample_ids.push_back("s" + std::to_string(i));
    cache.ref_words(i) = rng.uniform_int(1, 12);
    cache.baseline_edits(i) = rng.uniform_int(0, 4);
  }
  cache.run_keys = {};
  cache.run_edits.resize(0, n);

  // Random two-block partition of all indices.
  std::vector<std::int32_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  rng.shuffle(all);
  const std::vector<std::int32_t> left(all.begin(), all.begin() + 17);
  const std::vector<std::int32_t> right(all.begin() + 17, all.end());

  const WerStat sl = subset_stat(cache, std::nullopt, left);
  const WerStat sr = subset_stat(cache, std::nullopt, right);
  const WerStat sall = subset_stat(cache, std::nullopt, all);
  CHECK(sl.edits + sr.edits == sall.edits);
  CHECK(sl.ref_words + sr.ref_words == sall.ref_words);
  CHECK(wer(sall.edits, sall.ref_words) ==
        subset_wer(cache, std::nullopt, all));
}

TEST_CASE("cache construction is insensitive to input line order") {
  test::TempDir tmp("order");
  // Original order: s1, s2; permuted order: s2, s1.
  test::write_text_file(tmp.file("a.jsonl"), two_sample_file());
  test::write_text_file(tmp.file("b.jsonl"),
                        R"({"id": "s2", "text": "play  SOME jazz"})"
                        "\n"
                        R"({"id": "s1", "text": "Call Mom"})"
                        "\n");
  test::write_text_file(tmp.file("p.jsonl"), predictions_file());
  const Dataset da = ingest_samples(tmp.file("a.jsonl"));
  const Dataset db = ingest_samples(tmp.file("b.jsonl"));
  const EvalCache ca = build_cache(da, ingest_predictions(tmp.file("p.jsonl"), da));
  const EvalCache cb = build_cache(db, ingest_predictions(tmp.file("p.jsonl"), db));

  // Map indices through sample ids: subsets of corresponding samples agree.
  for (const std::string& id : {std::string("s1"), std::string("s2")}) {
    const std::vector<std::int32_t> ia = {da.index_of.at(id)};
    const std::vector<std::int32_t> ib = {db.index_of.at(id)};
    CHECK(subset_wer(ca, std::nullopt, ia) == subset_wer(cb, std::nullopt, ib));
    CHECK(subset_wer(ca, 0, ia) == subset_wer(cb, 0, ib));
  }
}

TEST_SUITE_END();
