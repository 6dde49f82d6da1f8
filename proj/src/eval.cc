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

#include "rsgnn/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "rsgnn/activations.h"
#include "rsgnn/adam.h"
#include "rsgnn/error.h"
#include "rsgnn/metrics.h"
#include "rsgnn/sparse_matrix.h"

namespace rsgnn {
namespace {

DenseMatrix Glorot(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  DenseMatrix w(fan_in, fan_out);
  for (double& v : w.values()) v = dist(rng);
  return w;
}

void AddRowVector(DenseMatrix& a, const DenseMatrix& bias) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = a.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] += bias(0, j);
  }
}

DenseMatrix ColumnSum(const DenseMatrix& a) {
  DenseMatrix s(1, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto row = a.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) s(0, j) += row[j];
  }
  return s;
}

double SquaredNorm(const DenseMatrix& a) { return Dot(a.values(), a.values()); }

struct Forward {
  DenseMatrix pre_hidden;  // A X W1 + b1
  DenseMatrix hidden;      // prelu, then dropout
  DenseMatrix logits;
};

Forward RunForward(const NormalizedAdjacency& adj, const FeatureOperand& x,
                   const ClassifierParams& p, const DenseMatrix* mask) {
  Forward f;
  f.pre_hidden = Spmm(adj.matrix, x.Times(p.w1));
  AddRowVector(f.pre_hidden, p.b1);
  f.hidden = Prelu(f.pre_hidden, p.slope.row(0));
  if (mask) {
    for (std::size_t t = 0; t < f.hidden.size(); ++t)
      f.hidden.values()[t] *= mask->values()[t];
  }
  f.logits = Spmm(adj.matrix, MatMul(f.hidden, p.w2));
  AddRowVector(f.logits, p.b2);
  return f;
}

double LossAndGrad(const NormalizedAdjacency& adj, const FeatureOperand& x,
                   std::span<const int> labels, std::span<const int> train,
                   const ClassifierParams& p, double weight_decay,
                   const DenseMatrix* mask, ClassifierParams* grad) {
  Require(!train.empty(), "ClassifierLoss: empty training set");
  const Forward f = RunForward(adj, x, p, mask);
  const std::size_t c = p.w2.cols();
  const double inv_t = 1.0 / static_cast<double>(train.size());
  DenseMatrix grad_logits(f.logits.rows(), c);
  double loss = 0.0;
  for (int node : train) {
    const auto i = static_cast<std::size_t>(node);
    const auto z = f.logits.row(i);
    const double zmax = *std::max_element(z.begin(), z.end());
    double denom = 0.0;
    for (double v : z) denom += std::exp(v - zmax);
    const double log_denom = std::log(denom) + zmax;
    const auto y = static_cast<std::size_t>(labels[i]);
    loss += (log_denom - z[y]) * inv_t;
    auto g = grad_logits.row(i);
    for (std::size_t j = 0; j < c; ++j) g[j] += std::exp(z[j] - log_denom) * inv_t;
    g[y] -= inv_t;
  }
  loss += 0.5 * weight_decay * (SquaredNorm(p.w1) + SquaredNorm(p.w2));
  if (!grad) return loss;

  grad->b2 = ColumnSum(grad_logits);
  const DenseMatrix grad_q = SpmmTransA(adj.matrix, grad_logits);
  grad->w2 = MatMulTransA(f.hidden, grad_q);
  for (std::size_t t = 0; t < grad->w2.size(); ++t)
    grad->w2.values()[t] += weight_decay * p.w2.values()[t];
  DenseMatrix grad_hidden = MatMul(grad_q, Transpose(p.w2));
  if (mask) {
    for (std::size_t t = 0; t < grad_hidden.size(); ++t)
      grad_hidden.values()[t] *= mask->values()[t];
  }
  grad->slope = DenseMatrix(1, p.slope.cols());
  DenseMatrix grad_pre = grad_hidden;
  for (std::size_t i = 0; i < grad_pre.rows(); ++i) {
    const auto pre = f.pre_hidden.row(i);
    auto g = grad_pre.row(i);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (pre[j] <= 0.0) {
        grad->slope(0, j) += g[j] * pre[j];
        g[j] *= p.slope(0, j);
      }
    }
  }
  grad->b1 = ColumnSum(grad_pre);
  grad->w1 = x.TransposeTimes(SpmmTransA(adj.matrix, grad_pre));
  for (std::size_t t = 0; t < grad->w1.size(); ++t)
    grad->w1.values()[t] += weight_decay * p.w1.values()[t];
  return loss;
}

std::vector<int> ArgmaxRows(const DenseMatrix& logits) {
  std::vector<int> out(logits.rows());
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    const auto z = logits.row(i);
    out[i] = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
  }
  return out;
}

}  // namespace

std::string_view ToString(ClassifierMode mode) {
  switch (mode) {
    case ClassifierMode::kGraph:
      return "graph";
    case ClassifierMode::kKnnGraph:
      return "knn_graph";
    case ClassifierMode::kMlp:
      return "mlp";
  }
  return "?";
}

ClassifierMode ParseClassifierMode(std::string_view s) {
  if (s == "graph") return ClassifierMode::kGraph;
  if (s == "knn_graph") return ClassifierMode::kKnnGraph;
  if (s == "mlp") return ClassifierMode::kMlp;
  throw ValidationError("unknown classifier mode '" + std::string(s) + "'");
}

void EvalConfig::Validate() const {
  if (!(dropout >= 0.0 && dropout < 1.0))
    throw ValidationError("dropout must be in [0, 1)");
  if (hidden_dim < 1) throw ValidationError("hidden_dim must be >= 1");
  if (max_epochs < 1) throw ValidationError("max_epochs must be >= 1");
  if (!(weight_decay >= 0.0)) throw ValidationError("weight_decay must be >= 0");
  if (!(learning_rate > 0.0)) throw ValidationError("learning rate must be > 0");
}

std::size_t EffectiveValSize(std::size_t m, std::size_t k,
                             const EvalConfig& cfg) {
  const std::size_t rest = m > k ? m - k : 0;
  return rest > cfg.val_size ? cfg.val_size : rest / 2;
}

EvalSplit SplitEval(std::size_t m, const RepresentativeSet& reps,
                    const EvalConfig& cfg, Rng& rng) {
  if (!IsValidSelection(reps.nodes, m)) {
    throw ContractError("SplitEval: representatives must be distinct and in range");
  }
  if (m < reps.k() + 2) {
    throw ValidationError("insufficient nodes: " + std::to_string(m) +
                          " nodes leave no room for validation and test after " +
                          std::to_string(reps.k()) + " representatives");
  }
  std::vector<bool> is_rep(m, false);
  for (int v : reps.nodes) is_rep[static_cast<std::size_t>(v)] = true;
  std::vector<int> rest;
  rest.reserve(m - reps.k());
  for (std::size_t i = 0; i < m; ++i)
    if (!is_rep[i]) rest.push_back(static_cast<int>(i));
  std::shuffle(rest.begin(), rest.end(), rng);
  const std::size_t nval = EffectiveValSize(m, reps.k(), cfg);
  EvalSplit split;
  split.val.assign(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(nval));
  split.test.assign(rest.begin() + static_cast<std::ptrdiff_t>(nval), rest.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

NormalizedAdjacency ClassifierAdjacency(const AttributedGraph& g,
                                        const EvalConfig& cfg) {
  switch (cfg.mode) {
    case ClassifierMode::kGraph:
      return NormalizeAdjacency(g);
    case ClassifierMode::kKnnGraph:
      return NormalizeAdjacency(BuildKnnGraph(g.features(), cfg.knn_k));
    case ClassifierMode::kMlp:
      return IdentityAdjacency(g.num_nodes());
  }
  throw ContractError("ClassifierAdjacency: unknown mode");
}

ClassifierParams InitClassifier(std::size_t num_features, std::size_t hidden,
                                std::size_t num_classes, Rng& rng) {
  ClassifierParams p;
  p.w1 = Glorot(num_features, hidden, rng);
  p.b1 = DenseMatrix(1, hidden);
  p.slope = DenseMatrix(1, hidden, 0.25);
  p.w2 = Glorot(hidden, num_classes, rng);
  p.b2 = DenseMatrix(1, num_classes);
  return p;
}

double ClassifierLoss(const NormalizedAdjacency& adj, const DenseMatrix& x,
                      std::span<const int> labels, std::span<const int> train,
                      const ClassifierParams& params, double weight_decay,
                      const DenseMatrix* dropout_mask, ClassifierParams* grad) {
  const FeatureOperand op(x);
  return LossAndGrad(adj, op, labels, train, params, weight_decay, dropout_mask,
                     grad);
}

DenseMatrix ClassifierLogits(const NormalizedAdjacency& adj,
                             const DenseMatrix& x,
                             const ClassifierParams& params) {
  return RunForward(adj, FeatureOperand(x), params, nullptr).logits;
}

std::vector<int> Predict(const NormalizedAdjacency& adj, const DenseMatrix& x,
                         const ClassifierParams& params) {
  return ArgmaxRows(ClassifierLogits(adj, x, params));
}

ClassifierState TrainClassifier(const AttributedGraph& g,
                                const NormalizedAdjacency& adj,
                                const RepresentativeSet& reps,
                                std::span<const int> val, const EvalConfig& cfg,
                                Rng& rng) {
  cfg.Validate();
  if (!g.has_labels()) throw ContractError("TrainClassifier: graph has no labels");
  Require(!reps.nodes.empty(), "TrainClassifier: empty representative set");
  Require(IsValidSelection(reps.nodes, g.num_nodes()),
          "TrainClassifier: representatives must be distinct and in range");
  Require(adj.matrix.rows() == g.num_nodes(),
          "TrainClassifier: adjacency does not match graph");
  const std::vector<int>& labels = *g.labels();
  const FeatureOperand x(g.features());

  ClassifierParams params = InitClassifier(
      g.num_features(), cfg.hidden_dim,
      static_cast<std::size_t>(std::max(g.num_classes(), 1)), rng);
  ClassifierParams grad;
  const std::vector<ParamBlock> blocks = {{"w1", &params.w1, &grad.w1},
                                          {"b1", &params.b1, &grad.b1},
                                          {"slope", &params.slope, &grad.slope},
                                          {"w2", &params.w2, &grad.w2},
                                          {"b2", &params.b2, &grad.b2}};
  OptimizerState opt =
      MakeOptimizerState({.learning_rate = cfg.learning_rate}, blocks);

  ClassifierState state;
  state.params = params;
  double best_val = -1.0;
  std::bernoulli_distribution keep(1.0 - cfg.dropout);
  const double keep_scale = 1.0 / (1.0 - cfg.dropout);
  DenseMatrix mask(g.num_nodes(), cfg.hidden_dim);

  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    const DenseMatrix* mask_ptr = nullptr;
    if (cfg.dropout > 0.0) {
      for (double& v : mask.values()) v = keep(rng) ? keep_scale : 0.0;
      mask_ptr = &mask;
    }
    LossAndGrad(adj, x, labels, reps.nodes, params, cfg.weight_decay, mask_ptr,
                &grad);
    AdamStep(blocks, opt);
    state.epochs_run = epoch + 1;

    const auto pred = ArgmaxRows(RunForward(adj, x, params, nullptr).logits);
    const double val_acc = val.empty() ? 0.0 : Accuracy(pred, labels, val);
    // Without validation nodes there is nothing to stop on: keep the latest.
    if (val.empty() || val_acc > best_val) {
      best_val = val_acc;
      state.best_epoch = epoch;
      state.params = params;
    }
    if (epoch - state.best_epoch >= cfg.patience) break;
  }
  state.best_val_accuracy = best_val;
  return state;
}

EvalRecord EvaluateSelection(const AttributedGraph& g,
                             const NormalizedAdjacency& adj,
                             const RepresentativeSet& reps,
                             const EvalConfig& cfg, std::uint64_t seed) {
  if (!g.has_labels()) throw ValidationError("evaluation requires labels");
  Rng rng(seed);
  const EvalSplit split = SplitEval(g.num_nodes(), reps, cfg, rng);
  const ClassifierState state = TrainClassifier(g, adj, reps, split.val, cfg, rng);
  const auto pred = Predict(adj, g.features(), state.params);
  EvalRecord r;
  r.selector = reps.selector;
  r.seed = seed;
  r.k = reps.k();
  r.accuracy = Accuracy(pred, *g.labels(), split.test);
  r.coverage = LabelCoverage(reps, *g.labels(), g.num_classes());
  return r;
}

EvalReport Summarize(std::vector<EvalRecord> records) {
  EvalReport report;
  if (records.empty()) return report;
  report.selector = records.front().selector;
  report.k = records.front().k;
  std::vector<double> acc, cov, nmi;
  for (const auto& r : records) {
    acc.push_back(r.accuracy);
    cov.push_back(r.coverage);
    if (r.nmi) nmi.push_back(*r.nmi);
  }
  report.accuracy = Mean(acc);
  report.accuracy_sd = StdDev(acc);
  report.normalized_accuracy = NormalizedAccuracy(report.accuracy);
  report.label_coverage = Mean(cov);
  if (nmi.size() == records.size()) report.nmi = Mean(nmi);
  report.records = std::move(records);
  return report;
}

std::string ToCsvRow(const EvalRecord& r) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), ",%.6f,%.6f,", r.accuracy, r.coverage);
  std::string row = r.selector + "," + std::to_string(r.seed) + "," +
                    std::to_string(r.k) + buf;
  if (r.nmi) {
    std::snprintf(buf, sizeof(buf), "%.6f", *r.nmi);
    row += buf;
  }
  return row;
}

}  // namespace rsgnn
