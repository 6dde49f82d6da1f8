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

#ifndef RSGNN_EVAL_H_
#define RSGNN_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsgnn/dense_matrix.h"
#include "rsgnn/graph.h"
#include "rsgnn/representative_set.h"

namespace rsgnn {

enum class ClassifierMode {
  kGraph,     // the dataset's own edges
  kKnnGraph,  // cosine kNN graph built from features
  kMlp,       // self-loops only
};

std::string_view ToString(ClassifierMode mode);
ClassifierMode ParseClassifierMode(std::string_view s);

struct EvalConfig {
  std::size_t hidden_dim = 32;
  double dropout = 0.5;
  double weight_decay = 5e-4;
  std::size_t val_size = 500;
  std::size_t max_epochs = 500;
  std::size_t patience = 50;
  double learning_rate = 1e-2;
  ClassifierMode mode = ClassifierMode::kGraph;
  std::size_t knn_k = 15;

  void Validate() const;
};

struct EvalSplit {
  std::vector<int> val;
  std::vector<int> test;
};

// Validation size actually used: cfg.val_size when it leaves test nodes,
// otherwise floor((m - k) / 2).
std::size_t EffectiveValSize(std::size_t m, std::size_t k, const EvalConfig& cfg);

// Shuffles V \ S and cuts it into validation and test sets.
EvalSplit SplitEval(std::size_t m, const RepresentativeSet& reps,
                    const EvalConfig& cfg, Rng& rng);

// The propagation matrix the classifier uses for `cfg.mode`.
NormalizedAdjacency ClassifierAdjacency(const AttributedGraph& g,
                                        const EvalConfig& cfg);

// Two-layer GCN: logits = A drop(prelu(A X W1 + b1)) W2 + b2. Unrelated to
// the encoder inside the selection model.
struct ClassifierParams {
  DenseMatrix w1;     // features x hidden
  DenseMatrix b1;     // 1 x hidden
  DenseMatrix slope;  // 1 x hidden, prelu
  DenseMatrix w2;     // hidden x classes
  DenseMatrix b2;     // 1 x classes
};

struct ClassifierState {
  ClassifierParams params;  // parameters of the best validation epoch
  std::size_t best_epoch = 0;
  std::size_t epochs_run = 0;
  double best_val_accuracy = 0.0;
};

// Mean cross-entropy over `train` + weight_decay / 2 * (|W1|^2 + |W2|^2).
// `dropout_mask` (m x hidden, entries 0 or 1/(1-rate)) is applied after the
// hidden layer when given. Fills `grad` when non-null.
double ClassifierLoss(const NormalizedAdjacency& adj, const DenseMatrix& x,
                      std::span<const int> labels, std::span<const int> train,
                      const ClassifierParams& params, double weight_decay,
                      const DenseMatrix* dropout_mask,
                      ClassifierParams* grad);

ClassifierParams InitClassifier(std::size_t num_features, std::size_t hidden,
                                std::size_t num_classes, Rng& rng);

DenseMatrix ClassifierLogits(const NormalizedAdjacency& adj, const DenseMatrix& x,
                             const ClassifierParams& params);
std::vector<int> Predict(const NormalizedAdjacency& adj, const DenseMatrix& x,
                         const ClassifierParams& params);

// Trains on the labels of `reps` only, early-stopping on validation accuracy.
ClassifierState TrainClassifier(const AttributedGraph& g,
                                const NormalizedAdjacency& adj,
                                const RepresentativeSet& reps,
                                std::span<const int> val, const EvalConfig& cfg,
                                Rng& rng);

struct EvalRecord {
  std::string selector;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  double accuracy = 0.0;
  double coverage = 0.0;
  std::optional<double> nmi;
};

// Split, train and score one selection.
EvalRecord EvaluateSelection(const AttributedGraph& g,
                             const NormalizedAdjacency& adj,
                             const RepresentativeSet& reps,
                             const EvalConfig& cfg, std::uint64_t seed);

struct EvalReport {
  std::string selector;
  std::size_t k = 0;
  double accuracy = 0.0;
  double accuracy_sd = 0.0;
  double normalized_accuracy = 0.0;
  double label_coverage = 0.0;
  std::optional<double> nmi;
  std::vector<EvalRecord> records;
};

EvalReport Summarize(std::vector<EvalRecord> records);

inline constexpr std::string_view kResultsHeader =
    "selector,seed,k,accuracy,coverage,nmi";
std::string ToCsvRow(const EvalRecord& r);

}  // namespace rsgnn

#endif  // RSGNN_EVAL_H_
