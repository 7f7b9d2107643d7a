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

#include <Eigen/Dense>
#include <array>

#include "minival/errors.hpp"
#include "minival/rng.hpp"
#include "minival/similarity.hpp"

using namespace minival;
using Eigen::VectorXd;

namespace {

VectorXd make_vec(std::initializer_list<double> values) {
  VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

VectorXd random_vec(Rng& rng, Eigen::Index n, double lo = -1.0,
                    double hi = 1.0) {
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform_real(lo, hi);
  return v;
}

constexpr std::array<UtilityKind, 5> kAllKinds = {
    UtilityKind::kNegMse, UtilityKind::kNegMae, UtilityKind::kCosine,
    UtilityKind::kPearson, UtilityKind::kNegCanberra};

}  // namespace

TEST_SUITE_BEGIN("similarity");

TEST_CASE("identical vectors attain each kind's maximum value") {
  const VectorXd v = make_vec({0.3, -0.1, 0.7, 0.2});
  CHECK(utility(UtilityKind::kNegMse, v, v) == 0.0);
  CHECK(utility(UtilityKind::kNegMae, v, v) == 0.0);
  CHECK(utility(UtilityKind::kNegCanberra, v, v) == 0.0);
  CHECK(utility(UtilityKind::kCosine, v, v) == doctest::Approx(1.0));
  CHECK(utility(UtilityKind::kPearson, v, v) == doctest::Approx(1.0));
}

TEST_CASE("identical vectors dominate perturbed ones for every kind") {
  Rng rng(821);
  for (int iter = 0; iter < 200; ++iter) {
    const VectorXd x = random_vec(rng, 12, -2.0, 2.0);
    VectorXd y = x;
    y(static_cast<Eigen::Index>(rng.uniform_int(0, 11))) +=
        rng.uniform_real(0.01, 1.0);
    for (UtilityKind kind : kAllKinds) {
      double self = 0.0;
      double perturbed = 0.0;
      try {
        self = utility(kind, x, x);
        perturbed = utility(kind, x, y);
      } catch (const DegenerateInput&) {
        continue;  // random draws can make Pearson/cosine degenerate
      }
      CHECK(self >= perturbed);
    }
  }
}

TEST_CASE("canberra hand values") {
  CHECK(neg_canberra(make_vec({1, 2, 0}), make_vec({1, 0, 0})) ==
        doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(neg_canberra(make_vec({0.02, 0.01}), make_vec({0.01, 0.03})) ==
        doctest::Approx(-(0.01 / 0.03 + 0.02 / 0.04)).epsilon(1e-12));
  CHECK(neg_canberra(make_vec({0.02, 0.01}), make_vec({0.01, 0.03})) ==
        doctest::Approx(-5.0 / 6.0).epsilon(1e-9));
  // 0/0 coordinates contribute nothing.
  CHECK(neg_canberra(make_vec({0.0, 0.0}), make_vec({0.0, 0.0})) == 0.0);
}

TEST_CASE("canberra is invariant under joint positive scaling") {
  Rng rng(92);
  for (int iter = 0; iter < 200; ++iter) {
    const VectorXd x = random_vec(rng, 8, -1.0, 1.0);
    const VectorXd y = random_vec(rng, 8, -1.0, 1.0);
    const double base = neg_canberra(x, y);
    // Power-of-two scaling is exact in floating point.
    CHECK(neg_canberra((4.0 * x).eval(), (4.0 * y).eval()) == base);
    const double c = rng.uniform_real(0.1, 10.0);
    CHECK(neg_canberra((c * x).eval(), (c * y).eval()) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("pearson hand values and degeneracy") {
  CHECK(pearson_correlation(make_vec({1, 2, 3}), make_vec({2, 4, 6})) ==
        doctest::Approx(1.0));
  CHECK(pearson_correlation(make_vec({1, 2, 3}), make_vec({-2, -4, -6})) ==
        doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson_correlation(make_vec({1, 1, 1}), make_vec({1, 2, 3})),
                  DegenerateInput);
  CHECK_THROWS_AS(pearson_correlation(make_vec({1}), make_vec({2})),
                  DegenerateInput);
}

TEST_CASE("cosine degeneracy and bounds") {
  CHECK_THROWS_AS(cosine_similarity(make_vec({0, 0}), make_vec({1, 2})),
                  DegenerateInput);
  Rng rng(4);
  for (int iter = 0; iter < 200; ++iter) {
    const VectorXd x = random_vec(rng, 6, -1.0, 1.0);
    const VectorXd y = random_vec(rng, 6, -1.0, 1.0);
    if (x.norm() == 0.0 || y.norm() == 0.0) continue;
    const double c = cosine_similarity(x, y);
    CHECK(c <= 1.0 + 1e-12);
    CHECK(c >= -1.0 - 1e-12);
  }
}

TEST_CASE("mse and mae hand values") {
  const VectorXd x = make_vec({1.0, 2.0});
  const VectorXd y = make_vec({3.0, 4.0});
  CHECK(neg_mse(x, y) == doctest::Approx(-4.0));
  CHECK(neg_mae(x, y) == doctest::Approx(-2.0));
}

TEST_CASE("length mismatch is rejected") {
  for (UtilityKind kind : kAllKinds) {
    CHECK_THROWS_AS(utility(kind, make_vec({1, 2, 3}), make_vec({1, 2})),
                    DimensionMismatch);
  }
}

TEST_CASE("kind names round-trip") {
  for (UtilityKind kind : kAllKinds) {
    CHECK(utility_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(utility_kind_from_string("euclid"), ConfigInvalid);
}

TEST_SUITE_END();
