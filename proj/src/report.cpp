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

#include "minival/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "minival/csv.hpp"
#include "minival/errors.hpp"

namespace minival {

namespace {

/// Rows of one method at one threshold, keyed by user. Duplicate
/// (user, gamma) rows are a key mismatch.
std::map<std::int32_t, const StopOutcome*> rows_at(const MethodOutcomes& m,
                                                   double gamma) {
  std::map<std::int32_t, const StopOutcome*> rows;
  for (const auto& row : m.rows) {
    if (row.gamma != gamma) continue;
    if (!rows.emplace(row.user, &row).second) {
      throw KeyMismatch("method \"" + m.name + "\" has duplicate rows for user " +
                        std::to_string(row.user));
    }
  }
  if (rows.empty()) {
    throw KeyMismatch("method \"" + m.name + "\" has no rows at gamma " +
                      format_double(gamma));
  }
  return rows;
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

MeanStd mean_and_population_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  for (const double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(ss / static_cast<double>(values.size()));
  return out;
}

}  // namespace

MaeStat pairwise_epoch_mae(const MethodOutcomes& a, const MethodOutcomes& b,
                           double gamma) {
  const auto rows_a = rows_at(a, gamma);
  const auto rows_b = rows_at(b, gamma);
  if (rows_a.size() != rows_b.size()) {
    throw KeyMismatch("methods \"" + a.name + "\" and \"" + b.name +
                      "\" cover different user sets at gamma " +
                      format_double(gamma));
  }
  std::vector<double> abs_errors;
  abs_errors.reserve(rows_a.size());
  for (const auto& [user, row] : rows_a) {
    const auto it = rows_b.find(user);
    if (it == rows_b.end()) {
      throw KeyMismatch("method \"" + b.name + "\" lacks user " +
                        std::to_string(user) + " at gamma " +
                        format_double(gamma));
    }
    abs_errors.push_back(std::abs(
        static_cast<double>(row->epochs_trained - it->second->epochs_trained)));
  }
  const auto stat = mean_and_population_std(abs_errors);
  return MaeStat{stat.mean, stat.stddev};
}

IFSummary if_summary(const MethodOutcomes& outcomes, double gamma) {
  const auto rows = rows_at(outcomes, gamma);
  std::vector<double> improvements, forgettings;
  improvements.reserve(rows.size());
  forgettings.reserve(rows.size());
  for (const auto& [user, row] : rows) {
    improvements.push_back(row->improvement);
    forgettings.push_back(row->forgetting_full);
  }
  const auto imp = mean_and_population_std(improvements);
  const auto forg = mean_and_population_std(forgettings);
  return IFSummary{imp.mean, imp.stddev, forg.mean, forg.stddev};
}

double interpolated_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ConfigInvalid("quantile of an empty sample");
  if (sorted.size() == 1) return sorted[0];
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - std::floor(h);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxStat epochs_distribution(const MethodOutcomes& outcomes, double gamma) {
  const auto rows = rows_at(outcomes, gamma);
  std::vector<double> epochs;
  epochs.reserve(rows.size());
  for (const auto& [user, row] : rows)
    epochs.push_back(static_cast<double>(row->epochs_trained));
  std::sort(epochs.begin(), epochs.end());
  BoxStat box;
  box.min = epochs.front();
  box.q1 = interpolated_quantile(epochs, 0.25);
  box.median = interpolated_quantile(epochs, 0.5);
  box.q3 = interpolated_quantile(epochs, 0.75);
  box.max = epochs.back();
  return box;
}

void write_mae_csv(const std::filesystem::path& path,
                   const MethodOutcomes& oracle,
                   std::span<const MethodOutcomes> methods,
                   std::span<const double> gammas) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << "method,gamma,mean,std\n";
  for (const auto& method : methods) {
    for (const double gamma : gammas) {
      const auto stat = pairwise_epoch_mae(oracle, method, gamma);
      out << method.name << ',' << format_double(gamma) << ','
          << format_double(stat.mean) << ',' << format_double(stat.stddev)
          << '\n';
    }
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

void write_ifplot_csv(const std::filesystem::path& path,
                      std::span<const MethodOutcomes> methods,
                      std::span<const double> gammas) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << "method,gamma,imp_mean,imp_std,forg_mean,forg_std\n";
  for (const auto& method : methods) {
    for (const double gamma : gammas) {
      const auto s = if_summary(method, gamma);
      out << method.name << ',' << format_double(gamma) << ','
          << format_double(s.imp_mean) << ',' << format_double(s.imp_std)
          << ',' << format_double(s.forg_mean) << ','
          << format_double(s.forg_std) << '\n';
    }
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

void write_epochs_box_csv(const std::filesystem::path& path,
                          std::span<const MethodOutcomes> methods,
                          std::span<const double> gammas) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  out << "method,gamma,min,q1,median,q3,max\n";
  for (const auto& method : methods) {
    for (const double gamma : gammas) {
      const auto box = epochs_distribution(method, gamma);
      out << method.name << ',' << format_double(gamma) << ','
          << format_double(box.min) << ',' << format_double(box.q1) << ','
          << format_double(box.median) << ',' << format_double(box.q3) << ','
          << format_double(box.max) << '\n';
    }
  }
  if (!out) throw IoFailure("failed writing " + path.string());
}

}  // namespace minival
