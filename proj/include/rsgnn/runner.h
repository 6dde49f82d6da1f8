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

#ifndef RSGNN_RUNNER_H_
#define RSGNN_RUNNER_H_

// End-to-end pipelines shared by the C API and the command-line tool. Every
// entry point takes its options as JSON so both front ends stay thin.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rsgnn/eval.h"
#include "rsgnn/fon.h"
#include "rsgnn/graph.h"
#include "rsgnn/grad_check.h"
#include "rsgnn/representative_set.h"
#include "rsgnn/rsgnn_model.h"
#include "rsgnn/selectors.h"

namespace rsgnn {

enum class ContextKind {
  kFeatures,  // baselines see the raw feature rows
  kDgi,       // baselines see unsupervised DGI embeddings
};

struct RunOptions {
  std::string k = "2c";
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  std::vector<std::string> selectors;
  // Replace the dataset's edges by a cosine kNN graph on the features.
  bool knn_mode = false;
  std::size_t knn_k = 15;
  ContextKind context = ContextKind::kFeatures;
  // Unset: graph when the (prepared) dataset has edges, else knn_graph.
  std::optional<ClassifierMode> classifier;
  std::size_t threads = 0;  // 0 = hardware concurrency
  RsgnnConfig rsgnn;
  SelectorConfig selector;
  EvalConfig eval;
};

// Reads the keys of `j` on top of the defaults; unknown keys are rejected.
RunOptions ParseRunOptions(const nlohmann::json& j);

// "14", "c", "2c", "5c" against the dataset's class count.
std::size_t ResolveBudget(std::string_view spec, int num_classes);

// Applies knn_mode; the result is what selectors and classifiers see.
AttributedGraph PrepareGraph(const AttributedGraph& g, const RunOptions& opts);

struct SelectionOutcome {
  RepresentativeSet reps;
  // Nearest representative of every node in the selector's own space.
  std::vector<int> clusters;
};

// Runs one named selector ("rsgnn" or a baseline) on an already prepared
// graph with budget k.
SelectionOutcome RunSelect(const AttributedGraph& prepared,
                           const RunOptions& opts, std::string_view selector,
                           std::size_t k, std::uint64_t seed);

EvalConfig ResolveEvalConfig(const AttributedGraph& prepared,
                             const RunOptions& opts);

// One classifier run on the labels of `reps`.
EvalRecord RunEval(const AttributedGraph& prepared, const RepresentativeSet& reps,
                   const RunOptions& opts, std::uint64_t seed);

// Flags the selectors that are not significantly worse than the best mean
// (two-sided Welch test at `alpha`). Nothing is flagged unless at least one
// selector is significantly worse.
std::vector<bool> WinnerFlags(const std::vector<std::vector<double>>& samples,
                              double alpha = 0.05);

struct BenchSummary {
  EvalReport report;
  bool winner = false;
};

struct BenchResult {
  std::size_t k = 0;
  std::vector<EvalRecord> records;  // selector order, then seed order
  std::vector<BenchSummary> summaries;
};

BenchResult RunBench(const AttributedGraph& g, const RunOptions& opts);
nlohmann::json ToJson(const BenchResult& result);

// Gap experiment options: k, runs, seed, selectors, rsgnn, selector.
GapReport RunFon(const FonInstance& inst, const nlohmann::json& options);

struct GradcheckResult {
  GradCheckReport report;
  double tolerance = 1e-4;
  bool passed = false;
};

// Joint-loss gradient check on a seeded random graph. Options: seed, nodes,
// features, embed_dim, k, lambda, norm, edge_prob, epsilon, tolerance, and
// corrupt_gradient (perturbs the analytic gradient, for testing the check).
GradcheckResult RunGradcheck(const nlohmann::json& options);
nlohmann::json ToJson(const GradcheckResult& result);

}  // namespace rsgnn

#endif  // RSGNN_RUNNER_H_
