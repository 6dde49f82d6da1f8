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

#ifndef RSGNN_FON_H_
#define RSGNN_FON_H_

// Fit-or-Not instances: binary features with hidden red/blue types, data
// points that switch on exactly two features, and label 1 iff both features
// share a type. Observing a set of labels determines exactly the points whose
// endpoints are connected through observed points.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsgnn/graph.h"
#include "rsgnn/rsgnn_model.h"
#include "rsgnn/selectors.h"

namespace rsgnn {

enum class FeatureType : std::uint8_t { kRed = 0, kBlue = 1 };

struct FonInstance {
  std::size_t num_features = 0;
  std::vector<FeatureType> types;  // hidden from selectors
  std::vector<Edge> points;        // (i, j), i != j

  std::size_t num_points() const { return points.size(); }
  void Validate() const;
};

// Types i.i.d. uniform; m distinct feature pairs drawn uniformly.
FonInstance GenerateRandomFon(std::size_t n, std::size_t m, Rng& rng);
// One feature per vertex and one point per edge, in the given order.
FonInstance FonFromGraph(std::size_t n, std::span<const Edge> edges, Rng& rng);
// Disjoint cliques on consecutive features plus `cross_pairs` distinct random
// pairs between different cliques.
FonInstance PlantedCliqueFon(std::size_t num_cliques, std::size_t clique_size,
                             std::size_t cross_pairs, Rng& rng);

std::vector<int> FonLabels(const FonInstance& inst);

enum class InferredLabel : std::int8_t { kZero = 0, kOne = 1, kUnknown = -1 };

// Label of every point given observed labels on `queried`. Throws
// InconsistencyError naming the offending cycle when observations conflict.
std::vector<InferredLabel> InferLabels(std::size_t num_features,
                                       std::span<const Edge> points,
                                       std::span<const std::size_t> queried,
                                       std::span<const int> observed);

enum class UtilityScope {
  kWholeSet,  // queried points count as known
  kTestOnly,  // only points outside the selection are scored
};

// Fraction of points whose label is determined by the selection. Equals the
// expected normalized accuracy when undetermined points are guessed.
double FonUtility(const FonInstance& inst, std::span<const std::size_t> selected,
                  UtilityScope scope = UtilityScope::kWholeSet);

inline constexpr double kMaxBruteForceSubsets = 2e7;

// Number of k-subsets of m items, as a double.
double Binomial(std::size_t m, std::size_t k);

struct OptimalSelection {
  std::vector<std::size_t> points;  // lexicographically smallest argmax
  double utility = 0.0;
};

OptimalSelection BruteForceOptimal(const FonInstance& inst, std::size_t k);

// Lexicographically smallest vertex set of the given size with the most
// induced points. Exhaustive.
std::vector<std::size_t> DensestSubgraphVertices(std::size_t num_features,
                                                 std::span<const Edge> points,
                                                 std::size_t size);

// Points forming a maximal spanning forest of the subgraph induced by
// `vertices`. Throws ValidationError if the forest needs more than k points.
std::vector<std::size_t> ForestSelect(const FonInstance& inst,
                                      std::span<const std::size_t> vertices,
                                      std::size_t k);

// Attributed-graph view: one node per point, two-hot features, an edge
// between points sharing a feature, FoN labels with c = 2.
AttributedGraph FonToGraph(const FonInstance& inst);
// Inverse of FonToGraph. Types are rebuilt from the labels (any assignment
// consistent with them); without labels every feature is red.
FonInstance FonFromDataset(const AttributedGraph& g);

struct GapOptions {
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  SelectorConfig selector;  // kind and k are overwritten per entry
  RsgnnConfig rsgnn;        // used by the "rsgnn" entry
};

struct GapEntry {
  std::string selector;
  double utility = 0.0;  // mean over runs
  double ratio = 0.0;    // utility / u_star, mean over runs
  double ratio_ci95 = 0.0;
  std::size_t runs = 1;
  std::vector<std::size_t> points;  // selection of the first run
};

struct GapReport {
  std::size_t k = 0;
  double u_star = 0.0;
  std::vector<std::size_t> optimal;
  std::vector<GapEntry> entries;
};

// Selector names: brute_force, forest, rsgnn, or any baseline selector.
GapReport GapExperiment(const FonInstance& inst, std::size_t k,
                        std::span<const std::string> selectors,
                        const GapOptions& options);

nlohmann::json ToJson(const GapReport& report);

}  // namespace rsgnn

#endif  // RSGNN_FON_H_
