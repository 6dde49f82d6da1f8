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

#ifndef RSGNN_RSGNN_MODEL_H_
#define RSGNN_RSGNN_MODEL_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "rsgnn/dense_matrix.h"
#include "rsgnn/graph.h"
#include "rsgnn/representative_set.h"
#include "rsgnn/sparse_matrix.h"

namespace rsgnn {

// How node embeddings are rescaled before the selection loss.
enum class NormMode {
  kCenterNorm,  // per-row unit norm around the embedding mean
  kConstNorm,   // one global divisor: mean centred row norm
  kNoNorm,
};

enum class TrainMode {
  kJoint,     // embedding and selection losses optimized together
  kTwoStage,  // embedding first, then representatives on frozen embeddings
};

std::string_view ToString(NormMode mode);
std::string_view ToString(TrainMode mode);
NormMode ParseNormMode(std::string_view s);
TrainMode ParseTrainMode(std::string_view s);

struct RsgnnConfig {
  // 512 on native graphs; callers use 128 for kNN-built graphs.
  std::size_t embed_dim = 512;
  double lambda = 1e-3;
  std::size_t epochs = 2000;
  std::size_t k = 1;
  double learning_rate = 1e-3;
  NormMode norm = NormMode::kCenterNorm;
  TrainMode mode = TrainMode::kJoint;

  void Validate() const;
};

struct RsgnnParams {
  DenseMatrix gcn_weight;   // features x embed_dim
  DenseMatrix disc_weight;  // embed_dim x embed_dim
  DenseMatrix rep_embed;    // k x embed_dim

  // Glorot-uniform weights, N(0, 1/d) representative rows. Draws in the
  // order gcn_weight, disc_weight, rep_embed.
  static RsgnnParams Initialize(std::size_t num_features, std::size_t embed_dim,
                                std::size_t k, Rng& rng);
};

struct LossTerms {
  std::size_t epoch = 0;
  double embedding = 0.0;
  double selection = 0.0;
  double total = 0.0;
};

struct TrainedState {
  DenseMatrix best_rep_embed;   // R at the minimum-loss epoch
  DenseMatrix best_norm_embed;  // normalized H at the minimum-loss epoch
  double best_loss = 0.0;
  std::size_t best_epoch = 0;
  std::vector<LossTerms> loss_trace;
  // Embedding-only losses of the first stage in two-stage mode.
  std::vector<double> pretrain_trace;
  RsgnnParams final_params;
};

// selu(adj * x * w)
DenseMatrix GcnForward(const NormalizedAdjacency& adj, const DenseMatrix& x,
                       const DenseMatrix& w);

inline constexpr double kLogClamp = 1e-12;
inline constexpr double kNormEpsilon = 1e-12;

struct DgiOutput {
  DenseMatrix h;
  DenseMatrix h_corrupt;
  double loss = 0.0;
};

// Draws one feature permutation from `rng`, embeds the real and the shuffled
// graph and scores both against the summary sigmoid(mean_i H_i) through the
// bilinear discriminator.
DgiOutput DgiLoss(const AttributedGraph& g, const NormalizedAdjacency& adj,
                  const RsgnnParams& params, Rng& rng);

// (H - mu) / ||H_i - mu|| per row; rows with norm below kNormEpsilon become 0.
DenseMatrix CenterNorm(const DenseMatrix& h);
DenseMatrix CenterNormBackward(const DenseMatrix& h, const DenseMatrix& grad_out);
// H / mean_i ||H_i - mu||
DenseMatrix ConstNorm(const DenseMatrix& h);
DenseMatrix ConstNormBackward(const DenseMatrix& h, const DenseMatrix& grad_out);

DenseMatrix ApplyNorm(NormMode mode, const DenseMatrix& h);
DenseMatrix ApplyNormBackward(NormMode mode, const DenseMatrix& h,
                              const DenseMatrix& grad_out);

// sum_i min_j ||h_i - r_j||. The subgradient at ties goes to the lowest
// representative index; a node sitting exactly on its representative
// contributes no gradient.
double SelectionLoss(const DenseMatrix& h_norm, const DenseMatrix& r,
                     DenseMatrix* grad_h = nullptr,
                     DenseMatrix* grad_r = nullptr);

// The joint loss L = L_emb + lambda * L_sel for a fixed corruption
// permutation, with its analytic gradient.
class JointObjective {
 public:
  struct Evaluation {
    double embedding_loss = 0.0;
    double selection_loss = 0.0;
    double total = 0.0;
    DenseMatrix h;
    DenseMatrix h_corrupt;
    DenseMatrix h_norm;
    // Filled when requested; same shapes as the parameters.
    RsgnnParams grad;
  };

  JointObjective(const AttributedGraph& g, const NormalizedAdjacency& adj,
                 NormMode norm, double lambda);

  Evaluation Evaluate(const RsgnnParams& params,
                      std::span<const std::size_t> permutation,
                      bool with_grad) const;

 private:
  const AttributedGraph* graph_;
  const NormalizedAdjacency* adj_;
  FeatureOperand features_;
  NormMode norm_;
  double lambda_;
};

// Joint training loop. Each epoch draws a fresh corruption, evaluates L,
// keeps R and the normalized H of the lowest-L epoch, then takes one Adam
// step on all parameters.
TrainedState Train(const AttributedGraph& g, const NormalizedAdjacency& adj,
                   const RsgnnConfig& cfg, Rng& rng);
TrainedState Train(const AttributedGraph& g, const RsgnnConfig& cfg, Rng& rng);

// DGI-only embeddings (lambda = 0, no selection), un-normalized.
DenseMatrix DgiEmbeddings(const AttributedGraph& g,
                          const NormalizedAdjacency& adj,
                          const RsgnnConfig& cfg, Rng& rng);

// Representative j is the not-yet-chosen node closest to row j of the best
// representative embedding, taken in order j = 0..k-1.
RepresentativeSet ExtractRepresentatives(const TrainedState& state,
                                         std::size_t k);

// Nearest representative (by normalized embedding) for every node.
std::vector<int> AssignClusters(const TrainedState& state,
                                const RepresentativeSet& reps);

}  // namespace rsgnn

#endif  // RSGNN_RSGNN_MODEL_H_
