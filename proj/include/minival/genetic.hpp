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

#ifndef MINIVAL_GENETIC_HPP
#define MINIVAL_GENETIC_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "minival/characteristics.hpp"
#include "minival/eval_cache.hpp"
#include "minival/similarity.hpp"
#include "minival/types.hpp"

#include <json.hpp>

namespace minival {

/// Knobs of the genetic subset search. Defaults follow the reference
/// configuration: 20 candidates, 100 genes, top-10 parents producing 10
/// offspring, 10% mutation, 650 generations.
struct GAConfig {
  std::int32_t population = 20;
  std::int32_t genes = 100;
  std::int32_t parents = 10;
  std::int32_t offspring = 10;
  double mutation_rate = 0.10;
  std::int32_t generations = 650;
  std::uint64_t seed = 0;
  UtilityKind utility = UtilityKind::kNegCanberra;

  /// Throws ConfigInvalid unless parents + offspring == population,
  /// 0 <= mutation_rate <= 1 and 1 <= genes <= num_samples.
  void validate(std::int32_t num_samples) const;

  nlohmann::json to_json() const;
  static GAConfig from_json(const nlohmann::json& j);
};

/// Cached fitness of subset candidates against a fixed full-set forgetting
/// vector. Degenerate candidates (zero baseline WER with the guard
/// disabled, utilities on degenerate vectors, selections without reference
/// words) score -inf instead of throwing.
class FitnessEvaluator {
 public:
  FitnessEvaluator(const EvalCache& cache, ForgettingVector full,
                   UtilityKind kind, DivGuard guard = {});

  /// Cached lookup; candidates are keyed by their index set, so gene order
  /// never affects the score.
  double operator()(const SubsetCandidate& candidate);

  /// Uncached evaluation, usable concurrently from several threads.
  double evaluate(const SubsetCandidate& candidate) const;

  /// Memo surface for batch users (the GA loop): probe for a known score,
  /// record a freshly computed one.
  std::optional<double> find_cached(const SubsetCandidate& candidate) const;
  void store(const SubsetCandidate& candidate, double value);

  const ForgettingVector& full() const { return full_; }

 private:
  static std::vector<std::int32_t> key_of(const SubsetCandidate& candidate);

  const EvalCache& cache_;
  ForgettingVector full_;
  UtilityKind kind_;
  DivGuard guard_;

  struct KeyHash {
    std::size_t operator()(const std::vector<std::int32_t>& key) const;
  };
  std::unordered_map<std::vector<std::int32_t>, double, KeyHash> memo_;
};

/// One-shot fitness: utility(kind, full, forgetting_vector(cache, candidate)).
double fitness(const EvalCache& cache, const ForgettingVector& full,
               const SubsetCandidate& candidate, UtilityKind kind,
               const DivGuard& guard = {});

struct GAResult {
  SubsetCandidate best;
  double best_fitness = 0.0;
  /// Best population fitness after the initial generation and after each
  /// evolution step; non-decreasing under elitist survivor selection.
  std::vector<double> history;
};

/// Evolves subsets of size config.genes toward the full-set forgetting
/// vector. Fully deterministic given config.seed: all candidate randomness
/// derives from the seed and the candidate's serial number, independent of
/// fitness evaluation order or worker count.
GAResult evolve(const EvalCache& cache, const ForgettingVector& full,
                const GAConfig& config, const DivGuard& guard = {},
                int workers = 1);

/// Uniform m-subset of [0, num_samples). Throws EmptySubset for m == 0 and
/// ConfigInvalid for m > num_samples.
SubsetCandidate random_subset(std::int32_t m, std::int32_t num_samples,
                              std::uint64_t seed);

/// Uniform m-subset of the samples with zero baseline edits. Throws
/// InsufficientCorrectSamples when fewer than m qualify.
SubsetCandidate all_correct_subset(const EvalCache& cache, std::int32_t m,
                                   std::uint64_t seed);

/// Subset result container shared by the optimizer and the baselines.
struct SubsetResult {
  static constexpr std::int32_t kFormatVersion = 1;

  std::string method;  // "canb", "rand", "allc", "full", ...
  SubsetCandidate subset;
  std::vector<std::string> sample_ids;
  std::optional<UtilityKind> utility_kind;
  std::optional<double> fitness;
  std::vector<double> history;
  nlohmann::json config;  // full invocation config, seeds included
};

void write_subset_result(const std::filesystem::path& path,
                         const SubsetResult& result);
SubsetResult read_subset_result(const std::filesystem::path& path);

}  // namespace minival

#endif  // MINIVAL_GENETIC_HPP
