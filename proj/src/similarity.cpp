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

#include "minival/similarity.hpp"

namespace minival {

const char* to_string(UtilityKind kind) {
  switch (kind) {
    case UtilityKind::kNegMse:
      return "mse";
    case UtilityKind::kNegMae:
      return "mae";
    case UtilityKind::kCosine:
      return "cos";
    case UtilityKind::kPearson:
      return "corr";
    case UtilityKind::kNegCanberra:
      return "canb";
  }
  return "unknown";
}

UtilityKind utility_kind_from_string(const std::string& s) {
  if (s == "mse") return UtilityKind::kNegMse;
  if (s == "mae") return UtilityKind::kNegMae;
  if (s == "cos") return UtilityKind::kCosine;
  if (s == "corr") return UtilityKind::kPearson;
  if (s == "canb") return UtilityKind::kNegCanberra;
  throw ConfigInvalid("unknown utility kind: \"" + s +
                      "\" (expected mse|mae|cos|corr|canb)");
}

double utility(UtilityKind kind, const Eigen::Ref<const Eigen::VectorXd>& full,
               const Eigen::Ref<const Eigen::VectorXd>& sub) {
  switch (kind) {
    case UtilityKind::kNegMse:
      return neg_mse(full, sub);
    case UtilityKind::kNegMae:
      return neg_mae(full, sub);
    case UtilityKind::kCosine:
      return cosine_similarity(full, sub);
    case UtilityKind::kPearson:
      return pearson_correlation(full, sub);
    case UtilityKind::kNegCanberra:
      return neg_canberra(full, sub);
  }
  throw ConfigInvalid("unknown utility kind");
}

}  // namespace minival
