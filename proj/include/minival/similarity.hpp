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

#ifndef MINIVAL_SIMILARITY_HPP
#define MINIVAL_SIMILARITY_HPP

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "minival/errors.hpp"

namespace minival {

/// Utility functions comparing subset and full-set forgetting vectors.
/// Higher is better for every kind.
enum class UtilityKind { kNegMse, kNegMae, kCosine, kPearson, kNegCanberra };

const char* to_string(UtilityKind kind);
UtilityKind utility_kind_from_string(const std::string& s);

namespace detail {

template <typename DerivedA, typename DerivedB>
void check_same_length(const Eigen::MatrixBase<DerivedA>& x,
                       const Eigen::MatrixBase<DerivedB>& y) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("utility: vector lengths differ (" +
                            std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()) + ")");
  }
}

}  // namespace detail

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar neg_mse(const Eigen::MatrixBase<DerivedA>& x,
                                  const Eigen::MatrixBase<DerivedB>& y) {
  detail::check_same_length(x, y);
  using Scalar = typename DerivedA::Scalar;
  return -(x - y).squaredNorm() / static_cast<Scalar>(x.size());
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar neg_mae(const Eigen::MatrixBase<DerivedA>& x,
                                  const Eigen::MatrixBase<DerivedB>& y) {
  detail::check_same_length(x, y);
  using Scalar = typename DerivedA::Scalar;
  return -(x - y).cwiseAbs().sum() / static_cast<Scalar>(x.size());
}

/// Throws DegenerateInput when either vector has zero norm.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_similarity(
    const Eigen::MatrixBase<DerivedA>& x,
    const Eigen::MatrixBase<DerivedB>& y) {
  detail::check_same_length(x, y);
  using Scalar = typename DerivedA::Scalar;
  const Scalar nx = x.norm();
  const Scalar ny = y.norm();
  if (nx == Scalar(0) || ny == Scalar(0))
    throw DegenerateInput("cosine similarity of a zero vector");
  return x.dot(y) / (nx * ny);
}

/// Throws DegenerateInput when either vector is constant (or shorter than 2).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar pearson_correlation(
    const Eigen::MatrixBase<DerivedA>& x,
    const Eigen::MatrixBase<DerivedB>& y) {
  detail::check_same_length(x, y);
  using Scalar = typename DerivedA::Scalar;
  if (x.size() < 2)
    throw DegenerateInput("pearson correlation needs at least 2 entries");
  const auto xc = (x.array() - x.mean()).eval();
  const auto yc = (y.array() - y.mean()).eval();
  const Scalar sx = std::sqrt(xc.square().sum());
  const Scalar sy = std::sqrt(yc.square().sum());
  if (sx == Scalar(0) || sy == Scalar(0))
    throw DegenerateInput("pearson correlation of a constant vector");
  return (xc * yc).sum() / (sx * sy);
}

/// Canberra distance negated; 0/0 coordinates contribute nothing, so
/// identical vectors score 0.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar neg_canberra(const Eigen::MatrixBase<DerivedA>& x,
                                       const Eigen::MatrixBase<DerivedB>& y) {
  detail::check_same_length(x, y);
  using Scalar = typename DerivedA::Scalar;
  Scalar total(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Scalar xi = x.derived()(i);
    const Scalar yi = y.derived()(i);
    const Scalar den = std::abs(xi) + std::abs(yi);
    if (den > Scalar(0)) total += std::abs(xi - yi) / den;
  }
  return -total;
}

/// Dispatches on kind. Vectors must share length N >= 1 (Pearson needs 2).
double utility(UtilityKind kind, const Eigen::Ref<const Eigen::VectorXd>& full,
               const Eigen::Ref<const Eigen::VectorXd>& sub);

}  // namespace minival

#endif  // MINIVAL_SIMILARITY_HPP
