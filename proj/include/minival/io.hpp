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

#ifndef MINIVAL_IO_HPP
#define MINIVAL_IO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "minival/eval_cache.hpp"
#include "minival/types.hpp"

namespace minival {

/// Samples file: one JSON record {"id": ..., "text": ...} per line.
/// References are normalized on ingestion. Throws DuplicateId and
/// MalformedRecord (with the offending line number).
Dataset ingest_samples(const std::filesystem::path& path);
void write_samples(const std::filesystem::path& path, const Dataset& dataset);

/// All predictions of one run, keyed by sample id.
struct RunPredictions {
  RunKey key;
  std::unordered_map<std::string, Transcript> hyps;
};

/// Prediction batches grouped by run, in file order of first appearance.
struct PredictionBatch {
  std::vector<RunPredictions> runs;

  const RunPredictions* find(const RunKey& key) const;
};

/// Predictions file: one JSON record
/// {"run": {"kind": ..., "user": ..., "hp": ..., "epoch": ...},
///  "sample_id": ..., "hyp": ...} per line.
/// When require_complete is set, every run must cover every dataset sample
/// (IncompleteRun lists the missing ids). Unknown sample ids always throw
/// UnknownSample.
PredictionBatch ingest_predictions(const std::filesystem::path& path,
                                   const Dataset& dataset,
                                   bool require_complete = true);

/// Scores every (run, sample) cell against the references. The batch must
/// contain exactly one baseline run, and every run must cover the dataset.
EvalCache build_cache(const Dataset& dataset, const PredictionBatch& batch,
                      int workers = 1);

/// Streaming variant for large files: scores records as they are read and
/// keeps only edit counts in memory. Produces the same cache as
/// ingest_predictions + build_cache.
EvalCache build_cache_streaming(const Dataset& dataset,
                                const std::filesystem::path& predictions_path);

/// Fixed-dimension embedding vectors keyed by sample id, in file order.
struct EmbeddingSet {
  std::vector<std::string> ids;
  Eigen::MatrixXd vectors;  // one row per id
  std::unordered_map<std::string, std::int32_t> index_of;

  std::int32_t size() const { return static_cast<std::int32_t>(ids.size()); }
  Eigen::Index dim() const { return vectors.cols(); }
};

/// Embeddings file: one JSON record {"sample_id": ..., "vec": [...]} per
/// line. All vectors must share a dimension and have non-zero norm.
EmbeddingSet ingest_embeddings(const std::filesystem::path& path);
void write_embeddings(const std::filesystem::path& path,
                      const EmbeddingSet& embeddings);

}  // namespace minival

#endif  // MINIVAL_IO_HPP
