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

#include "minival/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "minival/errors.hpp"
#include "minival/parallel.hpp"
#include "minival/rng.hpp"

namespace minival {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

constexpr std::uint64_t kInitTag = 0x6761696e69740001ULL;
constexpr std::uint64_t kChildTag = 0x67616368696c6402ULL;
constexpr std::uint64_t kRandTag = 0x676172616e640003ULL;
constexpr std::uint64_t kAllCorrectTag = 0x6761616c6c630004ULL;

/// Uniform draw from the indices of [0, n) not present in `members`.
/// Rejection is fast while members are sparse; past half density the
/// complement is materialized so the draw stays O(n) worst case.
std::int32_t draw_unused(Rng& rng, std::int32_t n,
                         const std::unordered_set<std::int32_t>& members) {
  const auto used = static_cast<std::int32_t>(members.size());
  if (used >= n) throw ConfigInvalid("no unused indices left to draw");
  if (used * 2 < n) {
    for (;;) {
      const auto candidate =
          static_cast<std::int32_t>(rng.uniform_u64(static_cast<std::uint64_t>(n)));
      if (!members.contains(candidate)) return candidate;
    }
  }
  std::vector<std::int32_t> complement;
  complement.reserve(static_cast<std::size_t>(n - used));
  for (std::int32_t i = 0; i < n; ++i) {
    if (!members.contains(i)) complement.push_back(i);
  }
  return complement[rng.uniform_u64(complement.size())];
}

struct Candidate {
  std::vector<std::int32_t> genes;  // order matters for crossover only
  std::int64_t serial = 0;
  double fitness = kNegInf;
};

}  // namespace

void GAConfig::validate(std::int32_t num_samples) const {
  if (population < 1) throw ConfigInvalid("population must be positive");
  if (parents < 1 || offspring < 1)
    throw ConfigInvalid("parents and offspring must be positive");
  if (parents + offspring != population)
    throw ConfigInvalid("parents + offspring must equal population");
  if (mutation_rate < 0.0 || mutation_rate > 1.0)
    throw ConfigInvalid("mutation_rate must lie in [0, 1]");
  if (genes < 1) throw ConfigInvalid("genes must be positive");
  if (genes > num_samples)
    throw ConfigInvalid("genes (" + std::to_string(genes) +
                        ") exceed the sample count (" +
                        std::to_string(num_samples) + ")");
  if (generations < 0) throw ConfigInvalid("generations must be >= 0");
}

nlohmann::json GAConfig::to_json() const {
  return {{"population", population},   {"genes", genes},
          {"parents", parents},         {"offspring", offspring},
          {"mutation_rate", mutation_rate}, {"generations", generations},
          {"seed", seed},               {"utility", to_string(utility)}};
}

GAConfig GAConfig::from_json(const nlohmann::json& j) {
  GAConfig config;
  config.population = j.at("population").get<std::int32_t>();
  config.genes = j.at("genes").get<std::int32_t>();
  config.parents = j.at("parents").get<std::int32_t>();
  config.offspring = j.at("offspring").get<std::int32_t>();
  config.mutation_rate = j.at("mutation_rate").get<double>();
  config.generations = j.at("generations").get<std::int32_t>();
  config.seed = j.at("seed").get<std::uint64_t>();
  config.utility = utility_kind_from_string(j.at("utility").get<std::string>());
  return config;
}

FitnessEvaluator::FitnessEvaluator(const EvalCache& cache, ForgettingVector full,
                                   UtilityKind kind, DivGuard guard)
    : cache_(cache), full_(std::move(full)), kind_(kind), guard_(guard) {}

std::size_t FitnessEvaluator::KeyHash::operator()(
    const std::vector<std::int32_t>& key) const {
  // FNV-1a over the index bytes.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::int32_t v : key) {
    auto x = static_cast<std::uint32_t>(v);
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (x >> shift) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return static_cast<std::size_t>(h);
}

double FitnessEvaluator::evaluate(const SubsetCandidate& candidate) const {
  try {
    const ForgettingVector sub =
        forgetting_vector(cache_, candidate, guard_, full_.rows);
    return utility(kind_, full_.values, sub.values);
  } catch (const DegenerateInput&) {
    return kNegInf;
  } catch (const EmptyReference&) {
    return kNegInf;
  }
}

std::vector<std::int32_t> FitnessEvaluator::key_of(
    const SubsetCandidate& candidate) {
  std::vector<std::int32_t> key = candidate.indices;
  std::sort(key.begin(), key.end());
  return key;
}

std::optional<double> FitnessEvaluator::find_cached(
    const SubsetCandidate& candidate) const {
  const auto it = memo_.find(key_of(candidate));
  if (it == memo_.end()) return std::nullopt;
  return it->second;
}

void FitnessEvaluator::store(const SubsetCandidate& candidate, double value) {
  memo_.emplace(key_of(candidate), value);
}

double FitnessEvaluator::operator()(const SubsetCandidate& candidate) {
  if (const auto cached = find_cached(candidate)) return *cached;
  const double value = evaluate(candidate);
  store(candidate, value);
  return value;
}

double fitness(const EvalCache& cache, const ForgettingVector& full,
               const SubsetCandidate& candidate, UtilityKind kind,
               const DivGuard& guard) {
  return FitnessEvaluator(cache, full, kind, guard).evaluate(candidate);
}

GAResult evolve(const EvalCache& cache, const ForgettingVector& full,
                const GAConfig& config, const DivGuard& guard, int workers) {
  const std::int32_t n = cache.num_samples();
  config.validate(n);

  FitnessEvaluator evaluator(cache, full, config.utility, guard);

  if (config.genes == n) {
    // A single candidate exists; nothing to search.
    GAResult result;
    result.best = SubsetCandidate::full(n);
    result.best_fitness = evaluator(result.best);
    result.history = {result.best_fitness};
    return result;
  }

  std::int64_t next_serial = 0;
  std::vector<Candidate> population;
  population.reserve(static_cast<std::size_t>(config.population));
  for (std::int32_t c = 0; c < config.population; ++c) {
    Candidate candidate;
    candidate.serial = next_serial++;
    Rng rng(derive_seed(config.seed, kInitTag,
                        static_cast<std::uint64_t>(candidate.serial)));
    candidate.genes = rng.sample_without_replacement(n, config.genes);
    population.push_back(std::move(candidate));
  }

  // Scores candidates from `begin` on: memo hits first, then the remainder
  // in parallel (pure evaluation only; the memo is filled sequentially, so
  // results never depend on the worker count).
  auto evaluate_from = [&](std::vector<Candidate>& cands, std::size_t begin) {
    std::vector<std::size_t> pending;
    for (std::size_t i = begin; i < cands.size(); ++i) {
      const SubsetCandidate probe{cands[i].genes};
      if (const auto cached = evaluator.find_cached(probe)) {
        cands[i].fitness = *cached;
      } else {
        pending.push_back(i);
      }
    }
    std::vector<double> scores(pending.size());
    parallel_for(pending.size(), workers, [&](std::size_t p) {
      scores[p] = evaluator.evaluate(SubsetCandidate{cands[pending[p]].genes});
    });
    for (std::size_t p = 0; p < pending.size(); ++p) {
      cands[pending[p]].fitness = scores[p];
      evaluator.store(SubsetCandidate{cands[pending[p]].genes}, scores[p]);
    }
  };
  auto rank = [](std::vector<Candidate>& cands) {
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) {
                if (a.fitness != b.fitness) return a.fitness > b.fitness;
                return a.serial < b.serial;
              });
  };

  evaluate_from(population, 0);
  rank(population);

  GAResult result;
  result.history.reserve(static_cast<std::size_t>(config.generations) + 1);
  result.history.push_back(population.front().fitness);
  result.best = SubsetCandidate{population.front().genes};
  result.best_fitness = population.front().fitness;

  const auto half = (config.genes + 1) / 2;  // first-parent share
  const auto mutations = static_cast<std::int32_t>(
      std::ceil(config.mutation_rate * config.genes));

  for (std::int32_t gen = 1; gen <= config.generations; ++gen) {
    std::vector<Candidate> next(population.begin(),
                                population.begin() + config.parents);
    for (std::int32_t j = 0; j < config.offspring; ++j) {
      const Candidate& first =
          population[static_cast<std::size_t>(j % config.parents)];
      const Candidate& second =
          population[static_cast<std::size_t>((j + 1) % config.parents)];

      Candidate child;
      child.serial = next_serial++;
      Rng rng(derive_seed(config.seed, kChildTag,
                          static_cast<std::uint64_t>(child.serial)));

      child.genes.assign(first.genes.begin(), first.genes.begin() + half);
      child.genes.insert(child.genes.end(), second.genes.begin() + half,
                         second.genes.end());

      // Repair: re-draw duplicate genes from indices outside the child.
      std::unordered_set<std::int32_t> members;
      members.reserve(child.genes.size() * 2);
      for (auto& gene : child.genes) {
        if (!members.insert(gene).second) {
          gene = draw_unused(rng, n, members);
          members.insert(gene);
        }
      }

      // Mutate distinct positions to ids outside the child.
      const auto positions =
          rng.sample_without_replacement(config.genes, mutations);
      for (const auto pos : positions) {
        auto& gene = child.genes[static_cast<std::size_t>(pos)];
        const std::int32_t replacement = draw_unused(rng, n, members);
        members.erase(gene);
        members.insert(replacement);
        gene = replacement;
      }
      next.push_back(std::move(child));
    }

    // Parents carry their scores; only offspring need evaluation.
    evaluate_from(next, static_cast<std::size_t>(config.parents));
    rank(next);
    population = std::move(next);
    result.history.push_back(population.front().fitness);
    if (population.front().fitness > result.best_fitness) {
      result.best_fitness = population.front().fitness;
      result.best = SubsetCandidate{population.front().genes};
    }
  }
  return result;
}

SubsetCandidate random_subset(std::int32_t m, std::int32_t num_samples,
                              std::uint64_t seed) {
  if (m == 0) throw EmptySubset("random subset of size 0");
  if (m < 0 || m > num_samples)
    throw ConfigInvalid("subset size " + std::to_string(m) + " outside [1, " +
                        std::to_string(num_samples) + "]");
  Rng rng(derive_seed(seed, kRandTag));
  return SubsetCandidate{rng.sample_without_replacement(num_samples, m)};
}

SubsetCandidate all_correct_subset(const EvalCache& cache, std::int32_t m,
                                   std::uint64_t seed) {
  if (m == 0) throw EmptySubset("all-correct subset of size 0");
  std::vector<std::int32_t> correct;
  for (std::int32_t i = 0; i < cache.num_samples(); ++i) {
    if (cache.baseline_edits(i) == 0) correct.push_back(i);
  }
  if (static_cast<std::int32_t>(correct.size()) < m) {
    throw InsufficientCorrectSamples(
        "only " + std::to_string(correct.size()) +
        " samples have error-free baseline predictions, need " +
        std::to_string(m));
  }
  Rng rng(derive_seed(seed, kAllCorrectTag));
  const auto picks =
      rng.sample_without_replacement(static_cast<std::int32_t>(correct.size()), m);
  SubsetCandidate subset;
  subset.indices.reserve(picks.size());
  for (const auto p : picks)
    subset.indices.push_back(correct[static_cast<std::size_t>(p)]);
  return subset;
}

void write_subset_result(const std::filesystem::path& path,
                         const SubsetResult& result) {
  nlohmann::json j;
  j["format_version"] = SubsetResult::kFormatVersion;
  j["method"] = result.method;
  j["indices"] = result.subset.indices;
  j["sample_ids"] = result.sample_ids;
  j["utility_kind"] =
      result.utility_kind ? nlohmann::json(to_string(*result.utility_kind))
                          : nlohmann::json(nullptr);
  j["fitness"] = result.fitness ? nlohmann::json(*result.fitness)
                                : nlohmann::json(nullptr);
  j["history"] = result.history;
  j["config"] = result.config;
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoFailure("failed writing " + path.string());
}

SubsetResult read_subset_result(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedRecord(path.string() + ": " + e.what());
  }
  try {
    if (j.at("format_version").get<std::int32_t>() !=
        SubsetResult::kFormatVersion)
      throw MalformedRecord(path.string() + ": unsupported result version");
    SubsetResult result;
    result.method = j.at("method").get<std::string>();
    result.subset.indices = j.at("indices").get<std::vector<std::int32_t>>();
    result.sample_ids = j.at("sample_ids").get<std::vector<std::string>>();
    if (!j.at("utility_kind").is_null())
      result.utility_kind =
          utility_kind_from_string(j.at("utility_kind").get<std::string>());
    if (!j.at("fitness").is_null())
      result.fitness = j.at("fitness").get<double>();
    result.history = j.at("history").get<std::vector<double>>();
    result.config = j.at("config");
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedRecord(path.string() + ": " + e.what());
  }
}

}  // namespace minival
