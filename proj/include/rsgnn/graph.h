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

#ifndef RSGNN_GRAPH_H_
#define RSGNN_GRAPH_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "rsgnn/dense_matrix.h"
#include "rsgnn/sparse_matrix.h"

namespace rsgnn {

using Rng = std::mt19937_64;

using Edge = std::pair<std::size_t, std::size_t>;

// Undirected graph with a dense feature row per node and optional class
// labels. Immutable once built; every constructor path validates.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  // Edges are undirected: reversed and repeated pairs collapse to one edge
  // and self-loops are dropped. Throws ValidationError on out-of-range
  // endpoints, label count mismatch, or labels >= num_classes.
  static AttributedGraph Create(std::size_t num_nodes,
                                std::span<const Edge> edges,
                                DenseMatrix features,
                                std::optional<std::vector<int>> labels,
                                int num_classes, bool has_structure = true);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_features() const { return features_.cols(); }
  int num_classes() const { return num_classes_; }
  const CsrMatrix& adjacency() const { return adjacency_; }
  const DenseMatrix& features() const { return features_; }
  const std::optional<std::vector<int>>& labels() const { return labels_; }
  bool has_labels() const { return labels_.has_value(); }
  // False for datasets shipped without an edge list.
  bool has_structure() const { return has_structure_; }

  std::size_t num_edges() const { return adjacency_.nnz() / 2; }
  std::vector<std::size_t> Degrees() const;
  // Each undirected edge once, as (low, high), sorted.
  std::vector<Edge> EdgeList() const;

  // Same nodes and labels with a different feature matrix or edge set.
  AttributedGraph WithFeatures(DenseMatrix features) const;
  AttributedGraph WithEdges(std::span<const Edge> edges) const;

 private:
  std::size_t num_nodes_ = 0;
  int num_classes_ = 0;
  bool has_structure_ = true;
  CsrMatrix adjacency_;
  DenseMatrix features_;
  std::optional<std::vector<int>> labels_;
};

// D^{-1/2} (A + I) D^{-1/2} with D the degree matrix of A + I.
struct NormalizedAdjacency {
  CsrMatrix matrix;
};

NormalizedAdjacency NormalizeAdjacency(const AttributedGraph& g);
// Self-loops only; the normalized matrix is the identity.
NormalizedAdjacency IdentityAdjacency(std::size_t num_nodes);

// Reads meta.json, edges.tsv, features.csv and the optional labels.csv.
// A missing edges.tsv yields a graph without structure.
AttributedGraph LoadDataset(const std::filesystem::path& dir);
void SaveDataset(const AttributedGraph& g, const std::filesystem::path& dir);

// Links every node to its k most cosine-similar other nodes and symmetrizes;
// each undirected edge appears once as (low, high), sorted.
// Zero rows have similarity 0 to everything; ties go to the lower index.
std::vector<Edge> KnnEdges(const DenseMatrix& features, std::size_t k);
AttributedGraph BuildKnnGraph(const DenseMatrix& features, std::size_t k);
// Replaces the structure of `g` by its kNN graph, keeping labels.
AttributedGraph WithKnnStructure(const AttributedGraph& g, std::size_t k);

// Uniform random permutation of [0, m).
std::vector<std::size_t> DrawPermutation(std::size_t m, Rng& rng);
// Feature rows shuffled, adjacency untouched.
AttributedGraph Corrupt(const AttributedGraph& g, Rng& rng);

// Stochastic block model with Gaussian features centred on a per-block mean.
struct SbmOptions {
  std::size_t num_blocks = 4;
  std::size_t block_size = 100;
  double p_in = 0.08;
  double p_out = 0.004;
  std::size_t num_features = 32;
  double mean_scale = 1.0;
  double noise = 1.0;
};

AttributedGraph GenerateSbm(const SbmOptions& options, Rng& rng);

}  // namespace rsgnn

#endif  // RSGNN_GRAPH_H_
