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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "rsgnn/error.h"
#include "rsgnn/eval.h"
#include "rsgnn/graph.h"
#include "rsgnn/metrics.h"

namespace rsgnn {
namespace {

RepresentativeSet FirstK(std::size_t k) {
  RepresentativeSet r{"test", 0, {}};
  for (std::size_t i = 0; i < k; ++i) r.nodes.push_back(static_cast<int>(i * 3));
  return r;
}

TEST_CASE("split sizes and disjointness") {
  const EvalConfig cfg;
  Rng a(1), b(1);
  const RepresentativeSet reps = FirstK(10);
  const EvalSplit s = SplitEval(600, reps, cfg, a);
  CHECK(s.val.size() == 500);
  CHECK(s.test.size() == 90);
  const EvalSplit t = SplitEval(600, reps, cfg, b);
  CHECK(s.val == t.val);
  CHECK(s.test == t.test);
  std::set<int> seen(reps.nodes.begin(), reps.nodes.end());
  for (int v : s.val) CHECK(seen.insert(v).second);
  for (int v : s.test) CHECK(seen.insert(v).second);
  CHECK(seen.size() == 600);
}

TEST_CASE("small graphs halve the remainder for validation") {
  const EvalConfig cfg;
  CHECK(EffectiveValSize(100, 4, cfg) == 48);
  CHECK(EffectiveValSize(510, 10, cfg) == 250);
  CHECK(EffectiveValSize(511, 10, cfg) == 500);
  Rng rng(2);
  CHECK_THROWS_AS(SplitEval(3, RepresentativeSet{"x", 0, {0, 1}}, cfg, rng),
                  ValidationError);
}

AttributedGraph Separable(std::size_t m) {
  DenseMatrix x(m, 2);
  std::vector<int> y(m);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = i % 2;
    x(i, 0) = y[i] ? 1.0 : -1.0;
    x(i, 1) = 0.1 * static_cast<double>(i % 5);
    if (i >= 2) edges.emplace_back(i, i - 2);
  }
  return AttributedGraph::Create(m, edges, std::move(x), y, 2);
}

TEST_CASE("training on every node fits a separable toy") {
  const AttributedGraph g = Separable(12);
  EvalConfig cfg;
  cfg.mode = ClassifierMode::kMlp;
  cfg.max_epochs = 300;
  const NormalizedAdjacency adj = ClassifierAdjacency(g, cfg);
  RepresentativeSet all{"all", 0, {}};
  for (int i = 0; i < 12; ++i) all.nodes.push_back(i);
  Rng rng(3);
  const ClassifierState s = TrainClassifier(g, adj, all, {}, cfg, rng);
  const auto pred = Predict(adj, g.features(), s.params);
  CHECK(pred == *g.labels());
}

TEST_CASE("mlp mode with identical features is at chance") {
  std::mt19937_64 rng(4);
  AttributedGraph sbm = GenerateSbm({.num_blocks = 2, .block_size = 150, .p_in = 0.1,
                                     .p_out = 0.002, .num_features = 4},
                                    rng);
  sbm = sbm.WithFeatures(DenseMatrix(300, 4, 1.0));
  EvalConfig cfg;
  cfg.mode = ClassifierMode::kMlp;
  RepresentativeSet reps{"x", 0, {0, 1, 150, 151}};
  const EvalRecord r = EvaluateSelection(sbm, ClassifierAdjacency(sbm, cfg), reps, cfg, 5);
  CHECK(r.accuracy > 0.35);
  CHECK(r.accuracy < 0.65);
}

TEST_CASE("graph mode learns the blocks from few labels") {
  std::mt19937_64 rng(5);
  const AttributedGraph g = GenerateSbm({.num_blocks = 2, .block_size = 150, .p_in = 0.1,
                                         .p_out = 0.002, .num_features = 8},
                                        rng);
  const EvalConfig cfg;
  RepresentativeSet reps{"x", 0, {0, 1, 150, 151}};
  const EvalRecord r = EvaluateSelection(g, ClassifierAdjacency(g, cfg), reps, cfg, 6);
  CHECK(r.accuracy > 0.8);
  CHECK(r.coverage == 1.0);
  CHECK(r.k == 4);
  const EvalRecord again = EvaluateSelection(g, ClassifierAdjacency(g, cfg), reps, cfg, 6);
  CHECK(again.accuracy == r.accuracy);
}

TEST_CASE("early stopping respects patience") {
  std::mt19937_64 rng(6);
  const AttributedGraph g = GenerateSbm({.num_blocks = 2, .block_size = 60}, rng);
  EvalConfig cfg;
  cfg.patience = 10;
  const NormalizedAdjacency adj = ClassifierAdjacency(g, cfg);
  RepresentativeSet reps{"x", 0, {0, 60}};
  Rng r(7);
  const EvalSplit split = SplitEval(g.num_nodes(), reps, cfg, r);
  const ClassifierState s = TrainClassifier(g, adj, reps, split.val, cfg, r);
  CHECK(s.epochs_run <= s.best_epoch + cfg.patience + 1);
  CHECK(s.epochs_run < cfg.max_epochs);
  // Reported accuracy uses the best-validation parameters.
  const auto pred = Predict(adj, g.features(), s.params);
  CHECK(Accuracy(pred, *g.labels(), split.val) == s.best_val_accuracy);
}

TEST_CASE("classifier adjacency per mode") {
  std::mt19937_64 rng(8);
  const AttributedGraph g = GenerateSbm({.num_blocks = 2, .block_size = 20}, rng);
  EvalConfig cfg;
  cfg.mode = ClassifierMode::kMlp;
  CHECK(ClassifierAdjacency(g, cfg).matrix == CsrMatrix::Identity(40));
  cfg.mode = ClassifierMode::kKnnGraph;
  const CsrMatrix knn = ClassifierAdjacency(g, cfg).matrix;
  for (std::size_t i = 0; i < 40; ++i) CHECK(knn.RowColumns(i).size() >= 16);
  CHECK(ParseClassifierMode("knn_graph") == ClassifierMode::kKnnGraph);
  CHECK_THROWS_AS(ParseClassifierMode("gat"), ValidationError);
}

TEST_CASE("config validation rejects bad values") {
  EvalConfig cfg;
  cfg.dropout = 1.0;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
}

TEST_CASE("csv rows and summaries") {
  EvalRecord a{"rsgnn", 3, 14, 0.7, 1.0, std::nullopt};
  EvalRecord b{"rsgnn", 4, 14, 0.8, 0.5, 0.25};
  CHECK(ToCsvRow(a) == "rsgnn,3,14,0.700000,1.000000,");
  CHECK(ToCsvRow(b) == "rsgnn,4,14,0.800000,0.500000,0.250000");
  CHECK(std::string(kResultsHeader) == "selector,seed,k,accuracy,coverage,nmi");
  const EvalReport r = Summarize({a, b});
  CHECK(r.accuracy == doctest::Approx(0.75));
  CHECK(r.normalized_accuracy == doctest::Approx(0.5));
  CHECK(r.label_coverage == doctest::Approx(0.75));
  CHECK_FALSE(r.nmi.has_value());
  CHECK(r.records.size() == 2);
}

}  // namespace
}  // namespace rsgnn
