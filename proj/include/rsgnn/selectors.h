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

#ifndef RSGNN_SELECTORS_H_
#define RSGNN_SELECTORS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rsgnn/dense_matrix.h"
#include "rsgnn/graph.h"
#include "rsgnn/representative_set.h"
#include "rsgnn/sparse_matrix.h"

namespace rsgnn {

enum class SelectorKind {
  kRandom,
  kPopular,
  kKMeans,
  kKMedoid,
  kFfs,
  kMaxCoverRbf,
  kMaxCoverCos,
};

std::string_view ToString(SelectorKind kind);
std::optional<SelectorKind> ParseSelectorKind(std::string_view name);
// Popular needs edges; every other selector works on a context matrix.
bool RequiresGraph(SelectorKind kind);

struct SelectorConfig {
  SelectorKind kind = SelectorKind::kRandom;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  // RBF width for MaxCover; <= 0 means 1 / context width.
  double rbf_gamma = 0.0;
  std::size_t candidate_knn = 50;
  std::size_t max_iters = 300;
  // FFS only: overrides the seeded first pick.
  std::optional<std::size_t> first_pick;
};

// Largest m for which KMedoid materializes the m x m distance matrix.
inline constexpr std::size_t kMaxKMedoidNodes = 12000;

RepresentativeSet SelectRandom(std::size_t m, const SelectorConfig& cfg);
RepresentativeSet SelectPopular(const AttributedGraph& g,
                                const SelectorConfig& cfg);

struct KMeansTrace {
  // Within-cluster sum of squares after each assignment + update round.
  std::vector<double> sse;
  std::size_t iterations = 0;
};
RepresentativeSet SelectKMeans(const DenseMatrix& ctx, const SelectorConfig& cfg,
                               KMeansTrace* trace = nullptr);
RepresentativeSet SelectKMedoid(const DenseMatrix& ctx,
                                const SelectorConfig& cfg);
RepresentativeSet SelectFfs(const DenseMatrix& ctx, const SelectorConfig& cfg);

// Sparse symmetric similarity restricted to each row's candidate_knn most
// similar rows, with unit self-similarity on the diagonal.
CsrMatrix BuildCandidateSimilarity(const DenseMatrix& ctx, SelectorKind kind,
                                   double rbf_gamma, std::size_t candidate_knn);
// sum_i max_{s in selected} sim(i, s); zero for an empty selection.
double FacilityLocationValue(const CsrMatrix& sim, const std::vector<int>& selected);
// Greedy facility location on a prebuilt similarity. `gains` receives the
// marginal gain of each pick.
std::vector<int> GreedyFacilityLocation(const CsrMatrix& sim, std::size_t k,
                                        std::vector<double>* gains = nullptr);
RepresentativeSet SelectMaxCover(const DenseMatrix& ctx,
                                 const SelectorConfig& cfg,
                                 std::vector<double>* gains = nullptr);

// Dispatch for the non-learned selectors. `ctx` is the context matrix
// (raw features or embeddings); popular reads the edges of `g`.
RepresentativeSet RunSelector(const SelectorConfig& cfg, const AttributedGraph& g,
                              const DenseMatrix& ctx);

}  // namespace rsgnn

#endif  // RSGNN_SELECTORS_H_
