// Copyright 2026 The Authors.
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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "rsgnn/error.h"
#include "rsgnn/metrics.h"

namespace rsgnn {
namespace {

TEST_CASE("accuracy and normalized accuracy") {
  const std::vector<int> pred = {0, 1, 1, 0}, truth = {0, 1, 0, 0};
  const std::vector<int> all = {0, 1, 2, 3}, some = {0, 1};
  CHECK(Accuracy(pred, truth, all) == 0.75);
  CHECK(Accuracy(pred, truth, some) == 1.0);
  CHECK_THROWS_AS(Accuracy(pred, truth, std::vector<int>{}), ValidationError);
  CHECK(NormalizedAccuracy(0.5) == 0.0);
  CHECK(NormalizedAccuracy(1.0) == 1.0);
  CHECK(NormalizedAccuracy(0.75) == 0.5);
}

TEST_CASE("label coverage") {
  const std::vector<int> labels = {2, 2, 0};
  CHECK(LabelCoverage({"x", 0, {0, 1}}, labels, 3) == doctest::Approx(1.0 / 3));
  CHECK(LabelCoverage({"x", 0, {0, 2}}, std::vector<int>{0, 1, 1}, 2) == 1.0);
  CHECK(LabelCoverage({"x", 0, {1}}, std::vector<int>{0, 1, 2, 3}, 4) == 0.25);
}

TEST_CASE("nmi examples") {
  const std::vector<int> labels = {0, 0, 1, 1, 2, 2};
  CHECK(Nmi(std::vector<int>{5, 5, 3, 3, 9, 9}, labels) == doctest::Approx(1.0));
  CHECK(Nmi(std::vector<int>(6, 0), labels) == 0.0);
  CHECK(Nmi(std::vector<int>{0, 0, 1, 1}, std::vector<int>{0, 1, 0, 1}) ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("nmi is invariant to relabeling and bounded") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> c(0, 4), y(0, 3);
  std::vector<int> perm_a = {3, 0, 4, 1, 2}, perm_y = {2, 3, 1, 0};
  for (int t = 0; t < 200; ++t) {
    std::vector<int> a(40), l(40), ap(40), lp(40);
    for (int i = 0; i < 40; ++i) {
      a[i] = c(rng);
      l[i] = y(rng);
      ap[i] = perm_a[a[i]];
      lp[i] = perm_y[l[i]];
    }
    const double base = Nmi(a, l);
    CHECK(base >= 0.0);
    CHECK(base <= 1.0 + 1e-12);
    CHECK(std::abs(Nmi(ap, l) - base) < 1e-12);
    CHECK(std::abs(Nmi(a, lp) - base) < 1e-12);
    CHECK(std::abs(Nmi(l, a) - base) < 1e-12);
    std::shuffle(perm_a.begin(), perm_a.end(), rng);
    std::shuffle(perm_y.begin(), perm_y.end(), rng);
  }
}

TEST_CASE("welch examples") {
  const std::vector<double> a = {0.3, 0.5, 0.4, 0.8};
  CHECK(WelchTTest(a, a) == doctest::Approx(1.0));
  CHECK(WelchTTest(std::vector<double>{0, 0, 0.01}, std::vector<double>{10, 10, 10.01}) <
        0.001);
  const std::vector<double> flat = {1, 1, 1};
  CHECK(WelchTTest(flat, flat) == 1.0);
  CHECK_THROWS_AS(WelchTTest(flat, std::vector<double>{2, 2, 2}), ValidationError);
  CHECK_THROWS_AS(WelchTTest(std::vector<double>{1}, a), ValidationError);
}

TEST_CASE("welch p-value matches numerical integration of the t density") {
  // Five values with mean 0 and sample sd exactly 1.
  const std::vector<double> z = {-2, -1, 0, 1, 2};
  const double unit = std::sqrt(2.5);
  std::vector<double> a, b;
  for (double v : z) {
    a.push_back(1.0 + 0.5 * v / unit);
    b.push_back(1.5 + 0.5 * v / unit);
  }
  const auto [t, dof] = oracle::WelchStatistic(a, b);
  CHECK(dof == doctest::Approx(8.0));
  const double want = 2 * oracle::TUpperTail(std::abs(t), dof);
  const WelchResult r = WelchTest(a, b);
  CHECK(std::abs(r.p_two_sided - want) < 0.01);
  CHECK(std::abs(r.p_two_sided - want) < 1e-6);
  CHECK(r.t == doctest::Approx(t));
  CHECK(r.p_greater == doctest::Approx(1 - want / 2).epsilon(1e-6));

  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> x(4 + trial), y(7);
    for (double& v : x) v = n(rng);
    for (double& v : y) v = 0.8 + 2.0 * n(rng);
    const auto [tt, nu] = oracle::WelchStatistic(x, y);
    CHECK(std::abs(WelchTTest(x, y) - 2 * oracle::TUpperTail(std::abs(tt), nu)) < 1e-6);
  }
}

TEST_CASE("mean and standard deviation") {
  const std::vector<double> x = {1, 2, 3, 4};
  CHECK(Mean(x) == 2.5);
  CHECK(StdDev(x) == doctest::Approx(std::sqrt(5.0 / 3)));
  CHECK(StdDev(std::vector<double>{7}) == 0.0);
}

}  // namespace
}  // namespace rsgnn
