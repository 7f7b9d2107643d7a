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

#include "minival/io.hpp"

#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "minival/errors.hpp"
#include "minival/parallel.hpp"

namespace minival {

namespace {

using nlohmann::json;

json parse_line(const std::filesystem::path& path, const std::string& line,
                std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                          ": " + e.what());
  }
}

template <typename Fn>
void for_each_record(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    fn(parse_line(path, line, line_no), line_no);
  }
}

std::string field_string(const json& j, const char* name,
                         const std::filesystem::path& path,
                         std::size_t line_no) {
  if (!j.contains(name) || !j.at(name).is_string()) {
    throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                          ": missing string field \"" + name + "\"");
  }
  return j.at(name).get<std::string>();
}

RunKey parse_run_key(const json& j, const std::filesystem::path& path,
                     std::size_t line_no) {
  if (!j.is_object()) {
    throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                          ": \"run\" must be an object");
  }
  RunKey key;
  try {
    key.kind = run_kind_from_string(field_string(j, "kind", path, line_no));
    if (j.contains("user") && !j.at("user").is_null())
      key.user = j.at("user").get<std::int32_t>();
    if (j.contains("hp") && !j.at("hp").is_null())
      key.hp = j.at("hp").get<std::int32_t>();
    if (j.contains("epoch") && !j.at("epoch").is_null())
      key.epoch = j.at("epoch").get<std::int32_t>();
  } catch (const json::exception& e) {
    throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                          ": " + e.what());
  }
  if (key.kind == RunKind::kBaseline && (key.user || key.hp || key.epoch)) {
    throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                          ": baseline runs carry no user/hp/epoch");
  }
  return key;
}

}  // namespace

Dataset ingest_samples(const std::filesystem::path& path) {
  Dataset dataset;
  for_each_record(path, [&](const json& j, std::size_t line_no) {
    Sample sample;
    sample.id = field_string(j, "id", path, line_no);
    sample.reference = normalize(field_string(j, "text", path, line_no));
    try {
      dataset.add(std::move(sample));
    } catch (const DuplicateId& e) {
      throw DuplicateId(path.string() + ":" + std::to_string(line_no) + ": " +
                        e.what());
    }
  });
  return dataset;
}

void write_samples(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  for (const auto& sample : dataset.samples) {
    json j;
    j["id"] = sample.id;
    j["text"] = join(sample.reference);
    out << j.dump() << '\n';
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

const RunPredictions* PredictionBatch::find(const RunKey& key) const {
  for (const auto& run : runs) {
    if (run.key == key) return &run;
  }
  return nullptr;
}

PredictionBatch ingest_predictions(const std::filesystem::path& path,
                                   const Dataset& dataset,
                                   bool require_complete) {
  PredictionBatch batch;
  std::map<RunKey, std::size_t> run_slot;
  for_each_record(path, [&](const json& j, std::size_t line_no) {
    if (!j.contains("run")) {
      throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                            ": missing \"run\" field");
    }
    const RunKey key = parse_run_key(j.at("run"), path, line_no);
    const std::string sample_id = field_string(j, "sample_id", path, line_no);
    if (!dataset.index_of.contains(sample_id)) {
      throw UnknownSample(path.string() + ":" + std::to_string(line_no) +
                          ": sample id \"" + sample_id +
                          "\" not in the dataset");
    }
    auto [it, inserted] = run_slot.emplace(key, batch.runs.size());
    if (inserted) batch.runs.push_back(RunPredictions{key, {}});
    auto& run = batch.runs[it->second];
    Transcript hyp = normalize(field_string(j, "hyp", path, line_no));
    if (!run.hyps.emplace(sample_id, std::move(hyp)).second) {
      throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                            ": duplicate prediction for run " +
                            format_run_key(key) + ", sample \"" + sample_id +
                            "\"");
    }
  });
  if (require_complete) {
    for (const auto& run : batch.runs) {
      if (static_cast<std::int32_t>(run.hyps.size()) == dataset.size())
        continue;
      std::string missing;
      int listed = 0;
      for (const auto& sample : dataset.samples) {
        if (run.hyps.contains(sample.id)) continue;
        if (listed++ > 0) missing += ", ";
        if (listed > 8) {
          missing += "...";
          break;
        }
        missing += sample.id;
      }
      throw IncompleteRun("run " + format_run_key(run.key) +
                          " is missing samples: " + missing);
    }
  }
  return batch;
}

EvalCache build_cache(const Dataset& dataset, const PredictionBatch& batch,
                      int workers) {
  const RunPredictions* baseline = batch.find(RunKey::baseline());
  if (baseline == nullptr)
    throw IncompleteRun("prediction batch has no baseline run");

  const auto n = static_cast<Eigen::Index>(dataset.size());
  EvalCache cache;
  cache.sample_ids.reserve(dataset.samples.size());
  cache.ref_words.resize(n);
  cache.baseline_edits.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& sample = dataset.samples[static_cast<std::size_t>(i)];
    cache.sample_ids.push_back(sample.id);
    cache.ref_words(i) = sample.ref_words();
  }
  if (cache.ref_words.sum() < 1)
    throw EmptyReference("dataset has no reference words");

  // Rows follow batch order with the baseline split out.
  std::vector<const RunPredictions*> rows;
  for (const auto& run : batch.runs) {
    if (run.key.kind != RunKind::kBaseline) rows.push_back(&run);
  }
  cache.run_keys.reserve(rows.size());
  for (const auto* run : rows) cache.run_keys.push_back(run->key);
  cache.run_edits.resize(static_cast<Eigen::Index>(rows.size()), n);

  auto score_run = [&](const RunPredictions& run, auto&& sink) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& sample = dataset.samples[static_cast<std::size_t>(i)];
      const auto it = run.hyps.find(sample.id);
      if (it == run.hyps.end()) {
        throw IncompleteRun("run " + format_run_key(run.key) +
                            " is missing sample \"" + sample.id + "\"");
      }
      sink(i, edit_distance(sample.reference, it->second));
    }
  };

  score_run(*baseline,
            [&](Eigen::Index i, std::int64_t e) { cache.baseline_edits(i) = e; });
  parallel_for(rows.size(), workers, [&](std::size_t r) {
    score_run(*rows[r], [&](Eigen::Index i, std::int64_t e) {
      cache.run_edits(static_cast<Eigen::Index>(r), i) = e;
    });
  });
  return cache;
}

EvalCache build_cache_streaming(
    const Dataset& dataset, const std::filesystem::path& predictions_path) {
  const auto n = static_cast<Eigen::Index>(dataset.size());
  EvalCache cache;
  cache.sample_ids.reserve(dataset.samples.size());
  cache.ref_words.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& sample = dataset.samples[static_cast<std::size_t>(i)];
    cache.sample_ids.push_back(sample.id);
    cache.ref_words(i) = sample.ref_words();
  }
  if (cache.ref_words.sum() < 1)
    throw EmptyReference("dataset has no reference words");

  bool saw_baseline = false;
  cache.baseline_edits = EditVector::Constant(n, -1);
  std::vector<EditVector> rows;
  std::map<RunKey, std::size_t> run_slot;

  for_each_record(predictions_path, [&](const json& j, std::size_t line_no) {
    if (!j.contains("run")) {
      throw MalformedRecord(predictions_path.string() + ":" +
                            std::to_string(line_no) +
                            ": missing \"run\" field");
    }
    const RunKey key = parse_run_key(j.at("run"), predictions_path, line_no);
    const std::string sample_id =
        field_string(j, "sample_id", predictions_path, line_no);
    const auto idx_it = dataset.index_of.find(sample_id);
    if (idx_it == dataset.index_of.end()) {
      throw UnknownSample(predictions_path.string() + ":" +
                          std::to_string(line_no) + ": sample id \"" +
                          sample_id + "\" not in the dataset");
    }
    const auto i = static_cast<Eigen::Index>(idx_it->second);
    const Transcript hyp =
        normalize(field_string(j, "hyp", predictions_path, line_no));
    const std::int64_t edits = edit_distance(
        dataset.samples[static_cast<std::size_t>(i)].reference, hyp);

    EditVector* row = nullptr;
    if (key.kind == RunKind::kBaseline) {
      saw_baseline = true;
      row = &cache.baseline_edits;
    } else {
      auto [it, inserted] = run_slot.emplace(key, rows.size());
      if (inserted) {
        cache.run_keys.push_back(key);
        rows.emplace_back(EditVector::Constant(n, -1));
      }
      row = &rows[it->second];
    }
    if ((*row)(i) >= 0) {
      throw MalformedRecord(predictions_path.string() + ":" +
                            std::to_string(line_no) +
                            ": duplicate prediction for run " +
                            format_run_key(key) + ", sample \"" + sample_id +
                            "\"");
    }
    (*row)(i) = edits;
  });

  if (!saw_baseline) throw IncompleteRun("predictions file has no baseline run");
  auto check_complete = [&](const RunKey& key, const EditVector& row) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (row(i) < 0) {
        throw IncompleteRun(
            "run " + format_run_key(key) + " is missing sample \"" +
            dataset.samples[static_cast<std::size_t>(i)].id + "\"");
      }
    }
  };
  check_complete(RunKey::baseline(), cache.baseline_edits);
  cache.run_edits.resize(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    check_complete(cache.run_keys[r], rows[r]);
    cache.run_edits.row(static_cast<Eigen::Index>(r)) = rows[r];
  }
  return cache;
}

EmbeddingSet ingest_embeddings(const std::filesystem::path& path) {
  EmbeddingSet set;
  std::vector<std::vector<double>> rows;
  for_each_record(path, [&](const json& j, std::size_t line_no) {
    const std::string id = field_string(j, "sample_id", path, line_no);
    if (!j.contains("vec") || !j.at("vec").is_array()) {
      throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                            ": missing array field \"vec\"");
    }
    std::vector<double> vec;
    try {
      vec = j.at("vec").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                            ": " + e.what());
    }
    if (!rows.empty() && vec.size() != rows.front().size()) {
      throw DimensionMismatch(path.string() + ":" + std::to_string(line_no) +
                              ": vector dimension " +
                              std::to_string(vec.size()) + " != " +
                              std::to_string(rows.front().size()));
    }
    double norm_sq = 0.0;
    for (double v : vec) norm_sq += v * v;
    if (norm_sq == 0.0) {
      throw MalformedRecord(path.string() + ":" + std::to_string(line_no) +
                            ": embedding for \"" + id + "\" has zero norm");
    }
    if (!set.index_of
             .emplace(id, static_cast<std::int32_t>(set.ids.size()))
             .second) {
      throw DuplicateId(path.string() + ":" + std::to_string(line_no) +
                        ": duplicate embedding id \"" + id + "\"");
    }
    set.ids.push_back(id);
    rows.push_back(std::move(vec));
  });
  if (rows.empty()) {
    set.vectors.resize(0, 0);
    return set;
  }
  set.vectors.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    set.vectors.row(static_cast<Eigen::Index>(r)) =
        Eigen::Map<const Eigen::VectorXd>(
            rows[r].data(), static_cast<Eigen::Index>(rows[r].size()));
  }
  return set;
}

void write_embeddings(const std::filesystem::path& path,
                      const EmbeddingSet& embeddings) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  for (std::int32_t i = 0; i < embeddings.size(); ++i) {
    json j;
    j["sample_id"] = embeddings.ids[static_cast<std::size_t>(i)];
    const auto row = embeddings.vectors.row(i);
    j["vec"] = std::vector<double>(row.begin(), row.end());
    out << j.dump() << '\n';
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

}  // namespace minival
