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

#include "rsgnn/rsgnn_model.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "rsgnn/activations.h"
#include "rsgnn/adam.h"
#include "rsgnn/error.h"

namespace rsgnn {
namespace {

DenseMatrix GlorotUniform(std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  DenseMatrix w(fan_in, fan_out);
  for (double& v : w.values()) v = dist(rng);
  return w;
}

// Centered rows and their norms.
struct Centered {
  DenseMatrix c;
  std::vector<double> norms;
};

Centered Center(const DenseMatrix& h) {
  Centered out{h, std::vector<double>(h.rows())};
  const DenseMatrix mu = ColumnMean(h);
  const auto mean = mu.row(0);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto row = out.c.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= mean[j];
    out.norms[i] = Norm(row);
  }
  return out;
}

// Gradient of x -> x - mean(x) applied to `grad_centered`.
DenseMatrix CenterBackward(DenseMatrix grad_centered) {
  const DenseMatrix mean = ColumnMean(grad_centered);
  for (std::size_t i = 0; i < grad_centered.rows(); ++i) {
    auto row = grad_centered.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= mean(0, j);
  }
  return grad_centered;
}

double MeanNorm(const std::vector<double>& norms) {
  double s = 0.0;
  for (double v : norms) s += v;
  return norms.empty() ? 0.0 : s / static_cast<double>(norms.size());
}

std::size_t NearestRow(const DenseMatrix& rows, std::span<const double> x) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rows.rows(); ++j) {
    const double d = SquaredDistance(rows.row(j), x);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

std::string_view ToString(NormMode mode) {
  switch (mode) {
    case NormMode::kCenterNorm:
      return "center_norm";
    case NormMode::kConstNorm:
      return "const_norm";
    case NormMode::kNoNorm:
      return "no_norm";
  }
  return "?";
}

std::string_view ToString(TrainMode mode) {
  return mode == TrainMode::kJoint ? "joint" : "two_stage";
}

NormMode ParseNormMode(std::string_view s) {
  if (s == "center_norm") return NormMode::kCenterNorm;
  if (s == "const_norm") return NormMode::kConstNorm;
  if (s == "no_norm") return NormMode::kNoNorm;
  throw ValidationError("unknown normalization mode '" + std::string(s) + "'");
}

TrainMode ParseTrainMode(std::string_view s) {
  if (s == "joint") return TrainMode::kJoint;
  if (s == "two_stage") return TrainMode::kTwoStage;
  throw ValidationError("unknown training mode '" + std::string(s) + "'");
}

void RsgnnConfig::Validate() const {
  if (!(lambda >= 0.0)) throw ValidationError("lambda must be >= 0");
  if (k < 1) throw ValidationError("k must be >= 1");
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (embed_dim < 1) throw ValidationError("embed_dim must be >= 1");
  if (!(learning_rate > 0.0)) throw ValidationError("learning rate must be > 0");
}

RsgnnParams RsgnnParams::Initialize(std::size_t num_features,
                                    std::size_t embed_dim, std::size_t k,
                                    Rng& rng) {
  RsgnnParams p;
  p.gcn_weight = GlorotUniform(num_features, embed_dim, rng);
  p.disc_weight = GlorotUniform(embed_dim, embed_dim, rng);
  p.rep_embed = DenseMatrix(k, embed_dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(embed_dim));
  for (double& v : p.rep_embed.values()) v = scale * normal(rng);
  return p;
}

DenseMatrix GcnForward(const NormalizedAdjacency& adj, const DenseMatrix& x,
                       const DenseMatrix& w) {
  Require(adj.matrix.rows() == x.rows(),
          "GcnForward: adjacency and feature row counts differ");
  Require(x.cols() == w.rows(),
          "GcnForward: feature width " + std::to_string(x.cols()) +
              " does not match weight rows " + std::to_string(w.rows()));
  return Selu(Spmm(adj.matrix, FeatureOperand(x).Times(w)));
}

DgiOutput DgiLoss(const AttributedGraph& g, const NormalizedAdjacency& adj,
                  const RsgnnParams& params, Rng& rng) {
  const auto perm = DrawPermutation(g.num_nodes(), rng);
  const JointObjective objective(g, adj, NormMode::kNoNorm, 0.0);
  auto eval = objective.Evaluate(params, perm, /*with_grad=*/false);
  return {std::move(eval.h), std::move(eval.h_corrupt), eval.embedding_loss};
}

DenseMatrix CenterNorm(const DenseMatrix& h) {
  Centered ctr = Center(h);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    auto row = ctr.c.row(i);
    const double z = ctr.norms[i];
    if (z < kNormEpsilon) {
      std::fill(row.begin(), row.end(), 0.0);
    } else {
      for (double& v : row) v /= z;
    }
  }
  return std::move(ctr.c);
}

DenseMatrix CenterNormBackward(const DenseMatrix& h,
                               const DenseMatrix& grad_out) {
  Require(SameShape(h, grad_out), "CenterNormBackward: shape mismatch");
  const Centered ctr = Center(h);
  DenseMatrix grad_c(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const double z = ctr.norms[i];
    if (z < kNormEpsilon) continue;
    const auto c = ctr.c.row(i);
    const auto g = grad_out.row(i);
    // d(c/|c|) = (g - u <u, g>) / |c| with u = c / |c|.
    const double ug = Dot(c, g) / z;
    auto out = grad_c.row(i);
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] = (g[j] - (c[j] / z) * ug) / z;
  }
  return CenterBackward(std::move(grad_c));
}

DenseMatrix ConstNorm(const DenseMatrix& h) {
  const double scale = MeanNorm(Center(h).norms);
  DenseMatrix out = h;
  if (scale < kNormEpsilon) {
    out.Fill(0.0);
  } else {
    out *= 1.0 / scale;
  }
  return out;
}

DenseMatrix ConstNormBackward(const DenseMatrix& h,
                              const DenseMatrix& grad_out) {
  Require(SameShape(h, grad_out), "ConstNormBackward: shape mismatch");
  const Centered ctr = Center(h);
  const double scale = MeanNorm(ctr.norms);
  DenseMatrix grad(h.rows(), h.cols());
  if (scale < kNormEpsilon) return grad;
  // Direct path through H / scale.
  grad = grad_out;
  grad *= 1.0 / scale;
  // Path through the scale: dL/dscale = -<G, H> / scale^2, and
  // dscale/dC_i = C_i / (m |C_i|).
  const double dscale =
      -Dot(grad_out.values(), h.values()) / (scale * scale);
  const double m = static_cast<double>(h.rows());
  DenseMatrix grad_c(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const double z = ctr.norms[i];
    if (z < kNormEpsilon) continue;
    const auto c = ctr.c.row(i);
    auto out = grad_c.row(i);
    for (std::size_t j = 0; j < out.size(); ++j)
      out[j] = dscale * c[j] / (m * z);
  }
  grad += CenterBackward(std::move(grad_c));
  return grad;
}

DenseMatrix ApplyNorm(NormMode mode, const DenseMatrix& h) {
  switch (mode) {
    case NormMode::kCenterNorm:
      return CenterNorm(h);
    case NormMode::kConstNorm:
      return ConstNorm(h);
    case NormMode::kNoNorm:
      return h;
  }
  return h;
}

DenseMatrix ApplyNormBackward(NormMode mode, const DenseMatrix& h,
                              const DenseMatrix& grad_out) {
  switch (mode) {
    case NormMode::kCenterNorm:
      return CenterNormBackward(h, grad_out);
    case NormMode::kConstNorm:
      return ConstNormBackward(h, grad_out);
    case NormMode::kNoNorm:
      return grad_out;
  }
  return grad_out;
}

double SelectionLoss(const DenseMatrix& h_norm, const DenseMatrix& r,
                     DenseMatrix* grad_h, DenseMatrix* grad_r) {
  Require(h_norm.cols() == r.cols(),
          "SelectionLoss: node and representative widths differ");
  Require(r.rows() >= 1, "SelectionLoss: no representatives");
  if (grad_h) *grad_h = DenseMatrix(h_norm.rows(), h_norm.cols());
  if (grad_r) *grad_r = DenseMatrix(r.rows(), r.cols());
  double loss = 0.0;
  for (std::size_t i = 0; i < h_norm.rows(); ++i) {
    const auto hi = h_norm.row(i);
    const std::size_t j = NearestRow(r, hi);
    const auto rj = r.row(j);
    const double dist = Distance(hi, rj);
    loss += dist;
    if (dist == 0.0 || (!grad_h && !grad_r)) continue;
    for (std::size_t c = 0; c < hi.size(); ++c) {
      const double g = (hi[c] - rj[c]) / dist;
      if (grad_h) (*grad_h)(i, c) = g;
      if (grad_r) (*grad_r)(j, c) -= g;
    }
  }
  return loss;
}

JointObjective::JointObjective(const AttributedGraph& g,
                               const NormalizedAdjacency& adj, NormMode norm,
                               double lambda)
    : graph_(&g), adj_(&adj), features_(g.features()), norm_(norm),
      lambda_(lambda) {
  Require(adj.matrix.rows() == g.num_nodes(),
          "JointObjective: adjacency does not match graph");
}

JointObjective::Evaluation JointObjective::Evaluate(
    const RsgnnParams& params, std::span<const std::size_t> permutation,
    bool with_grad) const {
  const std::size_t m = graph_->num_nodes();
  const std::size_t d = params.gcn_weight.cols();
  Require(params.gcn_weight.rows() == graph_->num_features(),
          "JointObjective: gcn_weight rows must equal feature count");
  Require(params.disc_weight.rows() == d && params.disc_weight.cols() == d,
          "JointObjective: disc_weight must be d x d");
  Require(params.rep_embed.cols() == d,
          "JointObjective: rep_embed width must equal d");
  Require(permutation.size() == m, "JointObjective: permutation length");

  // Shuffling feature rows commutes with X W, so the corrupted projection is
  // a row gather of the clean one.
  const DenseMatrix z = features_.Times(params.gcn_weight);
  const DenseMatrix z_corrupt = GatherRows(z, permutation);
  const DenseMatrix pre = Spmm(adj_->matrix, z);
  const DenseMatrix pre_corrupt = Spmm(adj_->matrix, z_corrupt);

  Evaluation out;
  out.h = Selu(pre);
  out.h_corrupt = Selu(pre_corrupt);

  const DenseMatrix summary = Sigmoid(ColumnMean(out.h));  // 1 x d
  const auto s = summary.row(0);
  std::vector<double> us(d, 0.0);  // U s
  for (std::size_t a = 0; a < d; ++a) us[a] = Dot(params.disc_weight.row(a), s);

  std::vector<double> grad_score(m), grad_score_corrupt(m);
  double emb = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = Dot(out.h.row(i), us);
    const double p = Sigmoid(a);
    const double not_p = Sigmoid(-a);
    emb -= std::log(std::max(p, kLogClamp));
    grad_score[i] = p > kLogClamp ? -not_p : 0.0;

    const double ac = Dot(out.h_corrupt.row(i), us);
    const double pc = Sigmoid(ac);
    const double not_pc = Sigmoid(-ac);
    emb -= std::log(std::max(not_pc, kLogClamp));
    grad_score_corrupt[i] = not_pc > kLogClamp ? pc : 0.0;
  }
  out.embedding_loss = emb;

  out.h_norm = ApplyNorm(norm_, out.h);
  DenseMatrix grad_hnorm, grad_r;
  out.selection_loss = SelectionLoss(out.h_norm, params.rep_embed,
                                     with_grad ? &grad_hnorm : nullptr,
                                     with_grad ? &grad_r : nullptr);
  out.total = out.embedding_loss + lambda_ * out.selection_loss;
  if (!with_grad) return out;

  // Discriminator scores a_i = <H_i, U s>.
  DenseMatrix grad_h(m, d), grad_hc(m, d);
  std::vector<double> grad_us(d, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double g = grad_score[i];
    const double gc = grad_score_corrupt[i];
    auto gh = grad_h.row(i);
    auto ghc = grad_hc.row(i);
    const auto hi = out.h.row(i);
    const auto hci = out.h_corrupt.row(i);
    for (std::size_t a = 0; a < d; ++a) {
      gh[a] = g * us[a];
      ghc[a] = gc * us[a];
      grad_us[a] += g * hi[a] + gc * hci[a];
    }
  }
  DenseMatrix grad_u(d, d);
  std::vector<double> grad_s(d, 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    const auto u_row = params.disc_weight.row(a);
    auto gu_row = grad_u.row(a);
    for (std::size_t b = 0; b < d; ++b) {
      gu_row[b] = grad_us[a] * s[b];
      grad_s[b] += u_row[b] * grad_us[a];
    }
  }
  // Summary s = sigmoid(mean_i H_i).
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t b = 0; b < d; ++b) {
    const double g_mean = grad_s[b] * s[b] * (1.0 - s[b]) * inv_m;
    for (std::size_t i = 0; i < m; ++i) grad_h(i, b) += g_mean;
  }

  if (lambda_ != 0.0) {
    grad_hnorm *= lambda_;
    grad_h += ApplyNormBackward(norm_, out.h, grad_hnorm);
    grad_r *= lambda_;
  } else {
    grad_r.Fill(0.0);
  }

  // Through selu, the adjacency product and the shared projection.
  for (std::size_t t = 0; t < grad_h.size(); ++t) {
    grad_h.values()[t] *= SeluDerivative(pre.values()[t]);
    grad_hc.values()[t] *= SeluDerivative(pre_corrupt.values()[t]);
  }
  DenseMatrix grad_z = SpmmTransA(adj_->matrix, grad_h);
  const DenseMatrix grad_zc = SpmmTransA(adj_->matrix, grad_hc);
  for (std::size_t i = 0; i < m; ++i) {
    auto dst = grad_z.row(permutation[i]);
    const auto src = grad_zc.row(i);
    for (std::size_t a = 0; a < d; ++a) dst[a] += src[a];
  }

  out.grad.gcn_weight = features_.TransposeTimes(grad_z);
  out.grad.disc_weight = std::move(grad_u);
  out.grad.rep_embed = std::move(grad_r);
  return out;
}

namespace {

[[noreturn]] void ThrowNonFinite(std::size_t epoch, double emb, double sel,
                                 double total) {
  std::ostringstream os;
  os << "non-finite loss at epoch " << epoch << ": L_emb=" << emb
     << " L_sel=" << sel << " L=" << total;
  throw NumericError(os.str());
}

void TrainJoint(const JointObjective& objective, const RsgnnConfig& cfg,
                std::size_t m, RsgnnParams& params, TrainedState& state,
                Rng& rng) {
  RsgnnParams grad;
  const std::vector<ParamBlock> blocks = {
      {"gcn_weight", &params.gcn_weight, &grad.gcn_weight},
      {"disc_weight", &params.disc_weight, &grad.disc_weight},
      {"rep_embed", &params.rep_embed, &grad.rep_embed}};
  OptimizerState opt =
      MakeOptimizerState({.learning_rate = cfg.learning_rate}, blocks);
  state.best_loss = std::numeric_limits<double>::infinity();
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto perm = DrawPermutation(m, rng);
    auto eval = objective.Evaluate(params, perm, /*with_grad=*/true);
    if (!std::isfinite(eval.total)) {
      ThrowNonFinite(epoch, eval.embedding_loss, eval.selection_loss,
                     eval.total);
    }
    state.loss_trace.push_back(
        {epoch, eval.embedding_loss, eval.selection_loss, eval.total});
    if (eval.total < state.best_loss) {
      state.best_loss = eval.total;
      state.best_epoch = epoch;
      state.best_rep_embed = params.rep_embed;
      state.best_norm_embed = std::move(eval.h_norm);
    }
    grad = std::move(eval.grad);
    AdamStep(blocks, opt);
  }
}

// Embedding-only pretraining of gcn_weight and disc_weight.
void TrainEmbeddingStage(const JointObjective& objective,
                         const RsgnnConfig& cfg, std::size_t m,
                         RsgnnParams& params, TrainedState& state, Rng& rng) {
  RsgnnParams grad;
  const std::vector<ParamBlock> blocks = {
      {"gcn_weight", &params.gcn_weight, &grad.gcn_weight},
      {"disc_weight", &params.disc_weight, &grad.disc_weight}};
  OptimizerState opt =
      MakeOptimizerState({.learning_rate = cfg.learning_rate}, blocks);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto perm = DrawPermutation(m, rng);
    auto eval = objective.Evaluate(params, perm, /*with_grad=*/true);
    if (!std::isfinite(eval.embedding_loss)) {
      ThrowNonFinite(epoch, eval.embedding_loss, 0.0, eval.embedding_loss);
    }
    state.pretrain_trace.push_back(eval.embedding_loss);
    grad = std::move(eval.grad);
    AdamStep(blocks, opt);
  }
}

}  // namespace

TrainedState Train(const AttributedGraph& g, const NormalizedAdjacency& adj,
                   const RsgnnConfig& cfg, Rng& rng) {
  cfg.Validate();
  Require(cfg.k <= g.num_nodes(), "Train: k=" + std::to_string(cfg.k) +
                                      " exceeds node count " +
                                      std::to_string(g.num_nodes()));
  const std::size_t m = g.num_nodes();
  RsgnnParams params =
      RsgnnParams::Initialize(g.num_features(), cfg.embed_dim, cfg.k, rng);
  TrainedState state;

  if (cfg.mode == TrainMode::kJoint) {
    const JointObjective objective(g, adj, cfg.norm, cfg.lambda);
    TrainJoint(objective, cfg, m, params, state, rng);
    state.final_params = std::move(params);
    return state;
  }

  const JointObjective embedding_objective(g, adj, cfg.norm, 0.0);
  TrainEmbeddingStage(embedding_objective, cfg, m, params, state, rng);

  // Freeze the encoder; fit R alone on the normalized embeddings.
  const auto perm = DrawPermutation(m, rng);
  const auto frozen = embedding_objective.Evaluate(params, perm, false);
  const DenseMatrix& h_norm = frozen.h_norm;
  DenseMatrix grad_r;
  const std::vector<ParamBlock> blocks = {
      {"rep_embed", &params.rep_embed, &grad_r}};
  OptimizerState opt =
      MakeOptimizerState({.learning_rate = cfg.learning_rate}, blocks);
  state.best_loss = std::numeric_limits<double>::infinity();
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double sel = SelectionLoss(h_norm, params.rep_embed, nullptr, &grad_r);
    const double total = frozen.embedding_loss + cfg.lambda * sel;
    if (!std::isfinite(total))
      ThrowNonFinite(epoch, frozen.embedding_loss, sel, total);
    state.loss_trace.push_back({epoch, frozen.embedding_loss, sel, total});
    if (total < state.best_loss) {
      state.best_loss = total;
      state.best_epoch = epoch;
      state.best_rep_embed = params.rep_embed;
    }
    grad_r *= cfg.lambda;
    AdamStep(blocks, opt);
  }
  state.best_norm_embed = h_norm;
  state.final_params = std::move(params);
  return state;
}

TrainedState Train(const AttributedGraph& g, const RsgnnConfig& cfg, Rng& rng) {
  const NormalizedAdjacency adj = NormalizeAdjacency(g);
  return Train(g, adj, cfg, rng);
}

DenseMatrix DgiEmbeddings(const AttributedGraph& g,
                          const NormalizedAdjacency& adj,
                          const RsgnnConfig& cfg, Rng& rng) {
  cfg.Validate();
  RsgnnParams params =
      RsgnnParams::Initialize(g.num_features(), cfg.embed_dim, cfg.k, rng);
  TrainedState scratch;
  const JointObjective objective(g, adj, NormMode::kNoNorm, 0.0);
  TrainEmbeddingStage(objective, cfg, g.num_nodes(), params, scratch, rng);
  return GcnForward(adj, g.features(), params.gcn_weight);
}

RepresentativeSet ExtractRepresentatives(const TrainedState& state,
                                         std::size_t k) {
  const DenseMatrix& h = state.best_norm_embed;
  const DenseMatrix& r = state.best_rep_embed;
  Require(k <= h.rows(), "ExtractRepresentatives: k=" + std::to_string(k) +
                             " exceeds node count " + std::to_string(h.rows()));
  Require(k <= r.rows(), "ExtractRepresentatives: k=" + std::to_string(k) +
                             " exceeds trained representatives " +
                             std::to_string(r.rows()));
  RepresentativeSet reps;
  reps.selector = "rsgnn";
  std::vector<bool> taken(h.rows(), false);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t best = h.rows();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.rows(); ++i) {
      if (taken[i]) continue;
      const double d = SquaredDistance(h.row(i), r.row(j));
      if (best == h.rows() || d < best_d) {
        best = i;
        best_d = d;
      }
    }
    taken[best] = true;
    reps.nodes.push_back(static_cast<int>(best));
  }
  return reps;
}

std::vector<int> AssignClusters(const TrainedState& state,
                                const RepresentativeSet& reps) {
  Require(!reps.nodes.empty(), "AssignClusters: empty representative set");
  const DenseMatrix& h = state.best_norm_embed;
  std::vector<std::size_t> rows;
  for (int v : reps.nodes) {
    Require(v >= 0 && static_cast<std::size_t>(v) < h.rows(),
            "AssignClusters: representative index out of range");
    rows.push_back(static_cast<std::size_t>(v));
  }
  const DenseMatrix centers = GatherRows(h, rows);
  std::vector<int> out(h.rows());
  for (std::size_t i = 0; i < h.rows(); ++i)
    out[i] = static_cast<int>(NearestRow(centers, h.row(i)));
  return out;
}

}  // namespace rsgnn
