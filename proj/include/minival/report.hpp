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

#ifndef MINIVAL_REPORT_HPP
#define MINIVAL_REPORT_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "minival/early_stop.hpp"

namespace minival {

/// One method's stop outcomes across users and thresholds.
struct MethodOutcomes {
  std::string name;
  std::vector<StopOutcome> rows;
};

struct MaeStat {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

/// Mean / population std of |epochs_a(v) - epochs_b(v)| over users at one
/// threshold. Symmetric; zero iff the tables agree. Throws KeyMismatch when
/// the user sets at that threshold differ.
MaeStat pairwise_epoch_mae(const MethodOutcomes& a, const MethodOutcomes& b,
                           double gamma);

struct IFSummary {
  double imp_mean = 0.0;
  double imp_std = 0.0;
  double forg_mean = 0.0;
  double forg_std = 0.0;
};

/// Mean / population std of improvement and full-set forgetting over users
/// at one threshold; the data behind an I-F scatter point with error bars.
IFSummary if_summary(const MethodOutcomes& outcomes, double gamma);

struct BoxStat {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Five-number summary of epochs trained at one threshold. Quartiles use
/// linear interpolation between order statistics (inclusive median).
BoxStat epochs_distribution(const MethodOutcomes& outcomes, double gamma);

/// Type-7 quantile of a sorted sample.
double interpolated_quantile(std::span<const double> sorted, double q);

/// mae.csv: method,gamma,mean,std — one row per (method, gamma).
void write_mae_csv(const std::filesystem::path& path,
                   const MethodOutcomes& oracle,
                   std::span<const MethodOutcomes> methods,
                   std::span<const double> gammas);

/// ifplot.csv: method,gamma,imp_mean,imp_std,forg_mean,forg_std
/// (oracle included).
void write_ifplot_csv(const std::filesystem::path& path,
                      std::span<const MethodOutcomes> methods,
                      std::span<const double> gammas);

/// epochs_box.csv: method,gamma,min,q1,median,q3,max (oracle included).
void write_epochs_box_csv(const std::filesystem::path& path,
                          std::span<const MethodOutcomes> methods,
                          std::span<const double> gammas);

}  // namespace minival

#endif  // MINIVAL_REPORT_HPP
