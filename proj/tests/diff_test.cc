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

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "rsgnn/activations.h"
#include "rsgnn/adam.h"
#include "rsgnn/error.h"
#include "rsgnn/eval.h"
#include "rsgnn/grad_check.h"
#include "rsgnn/graph.h"
#include "rsgnn/rsgnn_model.h"
#include "rsgnn/sparse_matrix.h"

namespace rsgnn {
namespace {

DenseMatrix Gaussian(std::size_t r, std::size_t c, std::mt19937_64& rng,
                     double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  DenseMatrix m(r, c);
  for (double& v : m.values()) v = n(rng);
  return m;
}

TEST_CASE("activation values") {
  CHECK(Sigmoid(0.0) == 0.5);
  CHECK(Selu(0.0) == 0.0);
  CHECK(Selu(1.0) == 1.0507009873554805);
  CHECK(Prelu(-2.0, 0.25) == -0.5);
  CHECK(Prelu(3.0, 0.25) == 3.0);
  CHECK(Sigmoid(-800.0) >= 0.0);
  CHECK(Sigmoid(800.0) <= 1.0);
}

TEST_CASE("activations are strictly monotone") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int t = 0; t < 2000; ++t) {
    double a = u(rng), b = u(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    CHECK(Selu(a) < Selu(b));
    CHECK(Sigmoid(a) <= Sigmoid(b));
    CHECK(Prelu(a, 0.25) < Prelu(b, 0.25));
    const double s = Sigmoid(a * 0.5);
    CHECK(s > 0.0);
    CHECK(s < 1.0);
  }
  const DenseMatrix x = DenseMatrix::FromRows({{-1, 2}, {3, -4}});
  const std::vector<double> slope = {0.1, 0.5};
  const DenseMatrix p = Prelu(x, slope);
  CHECK(p(0, 0) == doctest::Approx(-0.1));
  CHECK(p(1, 1) == doctest::Approx(-2.0));
}

TEST_CASE("spmm examples") {
  const CsrMatrix half = CsrMatrix::FromDense(DenseMatrix::FromRows({{0.5, 0.5}, {0.5, 0.5}}));
  const DenseMatrix out = Spmm(half, DenseMatrix::FromRows({{2}, {4}}));
  CHECK(out(0, 0) == 3.0);
  CHECK(out(1, 0) == 3.0);
  std::mt19937_64 rng(2);
  const DenseMatrix d = Gaussian(4, 3, rng);
  CHECK(Spmm(CsrMatrix::Identity(4), d) == d);
  CHECK_THROWS_AS(Spmm(half, d), ContractError);
}

struct AdamFixture {
  DenseMatrix value = DenseMatrix(1, 1, 1.0);
  DenseMatrix grad = DenseMatrix(1, 1, 0.0);
  std::vector<ParamBlock> blocks{{"w", &value, &grad}};
};

TEST_CASE("adam leaves parameters alone on a zero gradient") {
  AdamFixture f;
  OptimizerState s = MakeOptimizerState({}, f.blocks);
  AdamStep(f.blocks, s);
  CHECK(f.value(0, 0) == 1.0);
  CHECK(s.step == 1);
}

TEST_CASE("adam first step moves by the learning rate") {
  AdamFixture f;
  f.grad(0, 0) = 1.0;
  OptimizerState s = MakeOptimizerState({.learning_rate = 0.1}, f.blocks);
  AdamStep(f.blocks, s);
  CHECK(f.value(0, 0) == doctest::Approx(0.9).epsilon(1e-6));
}

TEST_CASE("adam steps approach the learning rate under a constant gradient") {
  AdamFixture f;
  f.grad(0, 0) = 3.0;
  OptimizerState s = MakeOptimizerState({.learning_rate = 1e-3}, f.blocks);
  double before = f.value(0, 0);
  for (int i = 0; i < 500; ++i) {
    before = f.value(0, 0);
    AdamStep(f.blocks, s);
  }
  CHECK(before - f.value(0, 0) == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("adam is deterministic and rejects non-finite gradients") {
  AdamFixture a, b;
  a.grad(0, 0) = b.grad(0, 0) = 0.37;
  OptimizerState sa = MakeOptimizerState({}, a.blocks);
  OptimizerState sb = MakeOptimizerState({}, b.blocks);
  for (int i = 0; i < 10; ++i) {
    AdamStep(a.blocks, sa);
    AdamStep(b.blocks, sb);
  }
  CHECK(a.value == b.value);
  a.grad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  const DenseMatrix kept = a.value;
  try {
    AdamStep(a.blocks, sa);
    FAIL("expected a numeric error");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("w") != std::string::npos);
  }
  CHECK(a.value == kept);
}

TEST_CASE("gradient check on a quadratic") {
  std::mt19937_64 rng(3);
  const DenseMatrix p = Gaussian(3, 4, rng);
  const ScalarLoss loss = [](std::span<const DenseMatrix> q) {
    double s = 0;
    for (double v : q[0].values()) s += 0.5 * v * v;
    return s;
  };
  const std::vector<DenseMatrix> analytic = {p};
  const std::vector<std::string> names = {"p"};
  const GradCheckReport r = GradCheck(loss, {p}, analytic, names);
  CHECK(r.MaxRelativeError() < 1e-9);
  CHECK(RelativeError(2.0, 1.0) == doctest::Approx(0.5));
  CHECK(RelativeError(1e-3, 0.0) == doctest::Approx(1e-3));
}

TEST_CASE("selection loss examples") {
  const DenseMatrix h = DenseMatrix::FromRows({{0, 0}, {2, 0}});
  CHECK(SelectionLoss(h, h) == 0.0);
  CHECK(SelectionLoss(DenseMatrix::FromRows({{0, 0}}),
                      DenseMatrix::FromRows({{3, 4}})) == 5.0);
  CHECK(SelectionLoss(h, DenseMatrix::FromRows({{1, 0}, {10, 10}})) == 2.0);
}

TEST_CASE("selection loss is nonnegative and zero at coincidence") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const DenseMatrix h = Gaussian(8, 3, rng);
    const DenseMatrix r = Gaussian(3, 3, rng);
    CHECK(SelectionLoss(h, r) >= 0.0);
    const std::vector<std::size_t> pick = {1, 4, 6, 1};
    DenseMatrix mixed = GatherRows(h, pick);
    CHECK(SelectionLoss(mixed, GatherRows(h, pick)) == 0.0);
  }
}

TEST_CASE("selection loss gradient matches finite differences") {
  std::mt19937_64 rng(5);
  const DenseMatrix h = Gaussian(6, 3, rng);
  const DenseMatrix r = Gaussian(2, 3, rng);
  DenseMatrix gh, gr;
  SelectionLoss(h, r, &gh, &gr);
  const ScalarLoss loss = [](std::span<const DenseMatrix> p) {
    return SelectionLoss(p[0], p[1]);
  };
  const std::vector<DenseMatrix> analytic = {gh, gr};
  const std::vector<std::string> names = {"h", "r"};
  CHECK(GradCheck(loss, {h, r}, analytic, names).MaxRelativeError() < 1e-6);
}

TEST_CASE("selection loss ties send the gradient to the lowest index") {
  const DenseMatrix h = DenseMatrix::FromRows({{0, 0}});
  const DenseMatrix r = DenseMatrix::FromRows({{1, 0}, {-1, 0}});
  DenseMatrix gh, gr;
  SelectionLoss(h, r, &gh, &gr);
  CHECK(gr(0, 0) == 1.0);
  CHECK(gr(1, 0) == 0.0);
  SelectionLoss(h, DenseMatrix::FromRows({{0, 0}}), &gh, &gr);
  CHECK(gh(0, 0) == 0.0);
  CHECK(gr(0, 0) == 0.0);
}

TEST_CASE("center norm examples") {
  const DenseMatrix sym = DenseMatrix::FromRows({{1, 0}, {-1, 0}});
  CHECK(CenterNorm(sym) == sym);
  const DenseMatrix out = CenterNorm(DenseMatrix::FromRows({{2, 0}, {4, 0}, {6, 0}}));
  CHECK(out == DenseMatrix::FromRows({{-1, 0}, {0, 0}, {1, 0}}));
}

TEST_CASE("center norm rows are unit length and scale invariant") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int t = 0; t < 100; ++t) {
    const DenseMatrix h = Gaussian(10, 4, rng);
    const DenseMatrix n = CenterNorm(h);
    for (std::size_t i = 0; i < n.rows(); ++i) CHECK(std::abs(Norm(n.row(i)) - 1.0) < 1e-9);
    DenseMatrix scaled = h;
    scaled *= scale(rng);
    CHECK(MaxAbsDiff(CenterNorm(scaled), n) < 1e-9);
  }
}

TEST_CASE("normalization backward passes match finite differences") {
  std::mt19937_64 rng(7);
  const DenseMatrix h = Gaussian(7, 3, rng);
  const DenseMatrix w = Gaussian(7, 3, rng);
  for (NormMode mode : {NormMode::kCenterNorm, NormMode::kConstNorm, NormMode::kNoNorm}) {
    const ScalarLoss loss = [&](std::span<const DenseMatrix> p) {
      const DenseMatrix n = ApplyNorm(mode, p[0]);
      double s = 0;
      for (std::size_t i = 0; i < n.size(); ++i) s += n.values()[i] * w.values()[i];
      return s;
    };
    const std::vector<DenseMatrix> analytic = {ApplyNormBackward(mode, h, w)};
    const std::vector<std::string> names = {"h"};
    CHECK(GradCheck(loss, {h}, analytic, names).MaxRelativeError() < 1e-7);
  }
}

AttributedGraph RandomGraph(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.2);
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (coin(rng)) edges.emplace_back(a, b);
  return AttributedGraph::Create(m, edges, Gaussian(m, n, rng), std::nullopt, 0);
}

TEST_CASE("joint loss gradient matches finite differences for every mode") {
  std::mt19937_64 rng(8);
  const AttributedGraph g = RandomGraph(20, 8, rng);
  const NormalizedAdjacency adj = NormalizeAdjacency(g);
  for (NormMode mode : {NormMode::kCenterNorm, NormMode::kConstNorm, NormMode::kNoNorm}) {
    Rng init(11);
    const RsgnnParams params = RsgnnParams::Initialize(8, 6, 3, init);
    const auto perm = DrawPermutation(20, init);
    const JointObjective obj(g, adj, mode, 0.5);
    const auto eval = obj.Evaluate(params, perm, true);
    const ScalarLoss loss = [&](std::span<const DenseMatrix> p) {
      return obj.Evaluate({p[0], p[1], p[2]}, perm, false).total;
    };
    const std::vector<DenseMatrix> analytic = {
        eval.grad.gcn_weight, eval.grad.disc_weight, eval.grad.rep_embed};
    const std::vector<std::string> names = {"theta", "U", "R"};
    const GradCheckReport r = GradCheck(
        loss, {params.gcn_weight, params.disc_weight, params.rep_embed},
        analytic, names);
    CHECK(r.MaxRelativeError() < 1e-4);
  }
}

TEST_CASE("classifier loss gradient matches finite differences") {
  std::mt19937_64 rng(9);
  const AttributedGraph g = RandomGraph(15, 5, rng);
  const NormalizedAdjacency adj = NormalizeAdjacency(g);
  Rng init(3);
  ClassifierParams p = InitClassifier(5, 4, 3, init);
  // Move slopes and biases off their initial values so every block matters.
  for (double& v : p.b1.values()) v = 0.1;
  for (double& v : p.b2.values()) v = -0.05;
  const std::vector<int> labels = {0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2};
  const std::vector<int> train = {0, 4, 8, 11};
  DenseMatrix mask(15, 4, 2.0);
  mask(3, 1) = mask(7, 2) = 0.0;
  ClassifierParams grad;
  ClassifierLoss(adj, g.features(), labels, train, p, 5e-4, &mask, &grad);
  const ScalarLoss loss = [&](std::span<const DenseMatrix> q) {
    const ClassifierParams c{q[0], q[1], q[2], q[3], q[4]};
    return ClassifierLoss(adj, g.features(), labels, train, c, 5e-4, &mask, nullptr);
  };
  const std::vector<DenseMatrix> analytic = {grad.w1, grad.b1, grad.slope, grad.w2,
                                             grad.b2};
  const std::vector<std::string> names = {"w1", "b1", "slope", "w2", "b2"};
  CHECK(GradCheck(loss, {p.w1, p.b1, p.slope, p.w2, p.b2}, analytic, names)
            .MaxRelativeError() < 1e-6);
}

}  // namespace
}  // namespace rsgnn
