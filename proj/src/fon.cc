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

#include "rsgnn/fon.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rsgnn/error.h"
#include "rsgnn/metrics.h"

namespace rsgnn {
namespace {

// Union-find over features that tracks the parity of each feature relative
// to its root (0 = same type as the root).
class ParityForest {
 public:
  explicit ParityForest(std::size_t n) : parent_(n), parity_(n, 0), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> Find(std::size_t x) {
    int par = 0;
    std::size_t root = x;
    while (parent_[root] != root) {
      par ^= parity_[root];
      root = parent_[root];
    }
    // Path compression with parity fix-up.
    int acc = par;
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      const int own = parity_[x];
      parent_[x] = root;
      parity_[x] = acc;
      acc ^= own;
      x = next;
    }
    return {root, par};
  }

  // Returns false if (a, b) already share a root; `consistent` then reports
  // whether the requested parity agrees with the existing one.
  bool Union(std::size_t a, std::size_t b, int parity, bool* consistent) {
    auto [ra, pa] = Find(a);
    auto [rb, pb] = Find(b);
    if (ra == rb) {
      if (consistent) *consistent = ((pa ^ pb) == parity);
      return false;
    }
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ parity;
    size_[ra] += size_[rb];
    if (consistent) *consistent = true;
    return true;
  }

  bool Connected(std::size_t a, std::size_t b) {
    return Find(a).first == Find(b).first;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> parity_;
  std::vector<std::size_t> size_;
};

void CheckPoints(std::size_t n, std::span<const Edge> points) {
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto [i, j] = points[p];
    if (i >= n || j >= n || i == j) {
      throw ValidationError("point " + std::to_string(p) +
                            " is not a pair of distinct features < " +
                            std::to_string(n));
    }
  }
}

std::vector<FeatureType> DrawTypes(std::size_t n, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<FeatureType> types(n);
  for (auto& t : types) t = coin(rng) ? FeatureType::kBlue : FeatureType::kRed;
  return types;
}

// Path of point indices between features a and b in the forest of accepted
// observations, found by BFS.
std::vector<std::size_t> ForestPath(
    const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj,
    std::size_t a, std::size_t b) {
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> via(adj.size(), none), from(adj.size(), none);
  std::vector<bool> seen(adj.size(), false);
  std::deque<std::size_t> queue{a};
  seen[a] = true;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (u == b) break;
    for (const auto& [v, point] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      from[v] = u;
      via[v] = point;
      queue.push_back(v);
    }
  }
  std::vector<std::size_t> path;
  for (std::size_t v = b; v != a && from[v] != none; v = from[v]) {
    path.push_back(via[v]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::size_t CountInferable(std::size_t n, std::span<const Edge> points,
                           std::span<const std::size_t> selected) {
  ParityForest forest(n);
  for (std::size_t p : selected) {
    forest.Union(points[p].first, points[p].second, 0, nullptr);
  }
  std::size_t count = 0;
  for (const auto& [i, j] : points) count += forest.Connected(i, j) ? 1 : 0;
  return count;
}

// Advances `idx` to the next k-combination of [0, m) in lexicographic order.
bool NextCombination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (idx[pos] < m - k + pos) {
      ++idx[pos];
      for (std::size_t q = pos + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
      return true;
    }
  }
  return false;
}

void GuardEnumeration(std::size_t m, std::size_t k, const char* what) {
  const double count = Binomial(m, k);
  if (count > kMaxBruteForceSubsets) {
    std::ostringstream os;
    os << what << ": C(" << m << "," << k << ") = " << count
       << " subsets exceeds the limit of " << kMaxBruteForceSubsets;
    throw CapacityError(os.str());
  }
}

bool IsStochastic(std::string_view name) {
  return name == "random" || name == "kmeans" || name == "kmedoid" ||
         name == "ffs" || name == "rsgnn";
}

}  // namespace

void FonInstance::Validate() const {
  if (types.size() != num_features) {
    throw ValidationError("types length " + std::to_string(types.size()) +
                          " != num_features " + std::to_string(num_features));
  }
  CheckPoints(num_features, points);
}

FonInstance GenerateRandomFon(std::size_t n, std::size_t m, Rng& rng) {
  Require(n >= 2, "GenerateRandomFon: need n >= 2");
  if (Binomial(n, 2) < static_cast<double>(m)) {
    throw ValidationError("m=" + std::to_string(m) + " exceeds C(" +
                          std::to_string(n) + ",2) distinct pairs");
  }
  FonInstance inst;
  inst.num_features = n;
  inst.types = DrawTypes(n, rng);
  std::vector<Edge> all;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
  }
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(m);
  inst.points = std::move(all);
  return inst;
}

FonInstance FonFromGraph(std::size_t n, std::span<const Edge> edges, Rng& rng) {
  Require(n >= 2, "FonFromGraph: need n >= 2");
  CheckPoints(n, edges);
  FonInstance inst;
  inst.num_features = n;
  inst.types = DrawTypes(n, rng);
  inst.points.assign(edges.begin(), edges.end());
  return inst;
}

FonInstance PlantedCliqueFon(std::size_t num_cliques, std::size_t clique_size,
                             std::size_t cross_pairs, Rng& rng) {
  Require(num_cliques >= 1 && clique_size >= 2,
          "PlantedCliqueFon: need a clique of at least two features");
  const std::size_t n = num_cliques * clique_size;
  std::vector<Edge> edges;
  std::vector<Edge> cross;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (i / clique_size == j / clique_size) {
        edges.emplace_back(i, j);
      } else {
        cross.emplace_back(i, j);
      }
    }
  }
  if (cross_pairs > cross.size()) {
    throw ValidationError("cross_pairs=" + std::to_string(cross_pairs) +
                          " exceeds the " + std::to_string(cross.size()) +
                          " available cross pairs");
  }
  FonInstance inst;
  inst.num_features = n;
  inst.types = DrawTypes(n, rng);
  std::shuffle(cross.begin(), cross.end(), rng);
  cross.resize(cross_pairs);
  std::sort(cross.begin(), cross.end());
  edges.insert(edges.end(), cross.begin(), cross.end());
  inst.points = std::move(edges);
  return inst;
}

std::vector<int> FonLabels(const FonInstance& inst) {
  inst.Validate();
  std::vector<int> labels(inst.points.size());
  for (std::size_t p = 0; p < inst.points.size(); ++p) {
    const auto [i, j] = inst.points[p];
    labels[p] = inst.types[i] == inst.types[j] ? 1 : 0;
  }
  return labels;
}

std::vector<InferredLabel> InferLabels(std::size_t num_features,
                                       std::span<const Edge> points,
                                       std::span<const std::size_t> queried,
                                       std::span<const int> observed) {
  CheckPoints(num_features, points);
  Require(queried.size() == observed.size(),
          "InferLabels: queried and observed differ in length");
  ParityForest forest(num_features);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> tree(
      num_features);
  for (std::size_t q = 0; q < queried.size(); ++q) {
    const std::size_t p = queried[q];
    Require(p < points.size(), "InferLabels: queried index out of range");
    Require(observed[q] == 0 || observed[q] == 1,
            "InferLabels: observed labels must be 0 or 1");
    const auto [i, j] = points[p];
    bool consistent = true;
    if (forest.Union(i, j, 1 - observed[q], &consistent)) {
      tree[i].emplace_back(j, p);
      tree[j].emplace_back(i, p);
    } else if (!consistent) {
      std::ostringstream os;
      os << "inconsistent labels on cycle of points";
      for (std::size_t c : ForestPath(tree, i, j)) os << ' ' << c;
      os << ' ' << p;
      throw InconsistencyError(os.str());
    }
  }
  std::vector<InferredLabel> out(points.size(), InferredLabel::kUnknown);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto [ri, pi] = forest.Find(points[p].first);
    const auto [rj, pj] = forest.Find(points[p].second);
    if (ri != rj) continue;
    out[p] = (pi ^ pj) == 0 ? InferredLabel::kOne : InferredLabel::kZero;
  }
  return out;
}

double FonUtility(const FonInstance& inst, std::span<const std::size_t> selected,
                  UtilityScope scope) {
  CheckPoints(inst.num_features, inst.points);
  const std::size_t m = inst.points.size();
  std::vector<bool> in_set(m, false);
  for (std::size_t p : selected) {
    Require(p < m, "FonUtility: selected index out of range");
    in_set[p] = true;
  }
  if (scope == UtilityScope::kWholeSet) {
    if (m == 0) return 0.0;
    return static_cast<double>(
               CountInferable(inst.num_features, inst.points, selected)) /
           static_cast<double>(m);
  }
  ParityForest forest(inst.num_features);
  for (std::size_t p : selected) {
    forest.Union(inst.points[p].first, inst.points[p].second, 0, nullptr);
  }
  std::size_t total = 0, known = 0;
  for (std::size_t p = 0; p < m; ++p) {
    if (in_set[p]) continue;
    ++total;
    known += forest.Connected(inst.points[p].first, inst.points[p].second);
  }
  // Nothing left to predict counts as fully determined.
  return total == 0 ? 1.0
                    : static_cast<double>(known) / static_cast<double>(total);
}

double Binomial(std::size_t m, std::size_t k) {
  if (k > m) return 0.0;
  k = std::min(k, m - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(m - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

OptimalSelection BruteForceOptimal(const FonInstance& inst, std::size_t k) {
  CheckPoints(inst.num_features, inst.points);
  const std::size_t m = inst.points.size();
  const std::size_t kk = std::min(k, m);
  GuardEnumeration(m, kk, "brute_force_optimal");
  OptimalSelection best;
  if (m == 0) return best;
  std::vector<std::size_t> idx(kk);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::size_t best_count = 0;
  bool first = true;
  do {
    const std::size_t count = CountInferable(inst.num_features, inst.points, idx);
    if (first || count > best_count) {
      best_count = count;
      best.points = idx;
      first = false;
      if (count == m) break;  // cannot be beaten, and later ties lose
    }
  } while (NextCombination(idx, m));
  best.utility = static_cast<double>(best_count) / static_cast<double>(m);
  return best;
}

std::vector<std::size_t> DensestSubgraphVertices(std::size_t num_features,
                                                 std::span<const Edge> points,
                                                 std::size_t size) {
  CheckPoints(num_features, points);
  Require(size <= num_features, "DensestSubgraphVertices: size > n");
  GuardEnumeration(num_features, size, "densest_subgraph");
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<std::size_t> best = idx;
  if (size == 0) return best;
  std::size_t best_count = 0;
  bool first = true;
  std::vector<bool> in_set(num_features);
  do {
    std::fill(in_set.begin(), in_set.end(), false);
    for (std::size_t v : idx) in_set[v] = true;
    std::size_t count = 0;
    for (const auto& [i, j] : points) count += (in_set[i] && in_set[j]) ? 1 : 0;
    if (first || count > best_count) {
      best_count = count;
      best = idx;
      first = false;
    }
  } while (NextCombination(idx, num_features));
  return best;
}

std::vector<std::size_t> ForestSelect(const FonInstance& inst,
                                      std::span<const std::size_t> vertices,
                                      std::size_t k) {
  CheckPoints(inst.num_features, inst.points);
  std::vector<bool> in_set(inst.num_features, false);
  for (std::size_t v : vertices) {
    Require(v < inst.num_features, "ForestSelect: vertex out of range");
    in_set[v] = true;
  }
  ParityForest forest(inst.num_features);
  std::vector<std::size_t> chosen;
  for (std::size_t p = 0; p < inst.points.size(); ++p) {
    const auto [i, j] = inst.points[p];
    if (!in_set[i] || !in_set[j]) continue;
    if (forest.Union(i, j, 0, nullptr)) chosen.push_back(p);
  }
  if (chosen.size() > k) {
    throw ValidationError("spanning forest has " +
                          std::to_string(chosen.size()) +
                          " points; budget k=" + std::to_string(k) +
                          " is too small (requires k >= " +
                          std::to_string(chosen.size()) + ")");
  }
  return chosen;
}

AttributedGraph FonToGraph(const FonInstance& inst) {
  inst.Validate();
  const std::size_t m = inst.points.size();
  DenseMatrix x(m, inst.num_features);
  std::vector<std::vector<std::size_t>> by_feature(inst.num_features);
  for (std::size_t p = 0; p < m; ++p) {
    x(p, inst.points[p].first) = 1.0;
    x(p, inst.points[p].second) = 1.0;
    by_feature[inst.points[p].first].push_back(p);
    by_feature[inst.points[p].second].push_back(p);
  }
  std::vector<Edge> edges;
  for (const auto& group : by_feature) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        edges.emplace_back(group[a], group[b]);
      }
    }
  }
  return AttributedGraph::Create(m, edges, std::move(x), FonLabels(inst), 2);
}

FonInstance FonFromDataset(const AttributedGraph& g) {
  const DenseMatrix& x = g.features();
  FonInstance inst;
  inst.num_features = x.cols();
  inst.points.reserve(x.rows());
  for (std::size_t p = 0; p < x.rows(); ++p) {
    std::vector<std::size_t> on;
    for (std::size_t f = 0; f < x.cols(); ++f) {
      const double v = x(p, f);
      if (v == 1.0) {
        on.push_back(f);
      } else if (v != 0.0) {
        throw ValidationError("row " + std::to_string(p) +
                              " is not a binary feature vector");
      }
    }
    if (on.size() != 2) {
      throw ValidationError("row " + std::to_string(p) + " activates " +
                            std::to_string(on.size()) +
                            " features; expected exactly 2");
    }
    inst.points.emplace_back(on[0], on[1]);
  }
  inst.types.assign(inst.num_features, FeatureType::kRed);
  if (g.has_labels()) {
    const auto& labels = *g.labels();
    std::vector<std::size_t> all(inst.points.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    // Rejects contradictory label files before rebuilding types.
    InferLabels(inst.num_features, inst.points, all, labels);
    std::vector<std::vector<std::pair<std::size_t, int>>> adj(inst.num_features);
    for (std::size_t p = 0; p < inst.points.size(); ++p) {
      const auto [i, j] = inst.points[p];
      adj[i].emplace_back(j, 1 - labels[p]);
      adj[j].emplace_back(i, 1 - labels[p]);
    }
    std::vector<bool> seen(inst.num_features, false);
    for (std::size_t s = 0; s < inst.num_features; ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      std::deque<std::size_t> queue{s};
      while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (const auto& [v, flip] : adj[u]) {
          if (seen[v]) continue;
          seen[v] = true;
          const int t = static_cast<int>(inst.types[u]) ^ flip;
          inst.types[v] = static_cast<FeatureType>(t);
          queue.push_back(v);
        }
      }
    }
  }
  return inst;
}

GapReport GapExperiment(const FonInstance& inst, std::size_t k,
                        std::span<const std::string> selectors,
                        const GapOptions& options) {
  inst.Validate();
  Require(options.runs >= 1, "GapExperiment: runs must be >= 1");
  const std::size_t m = inst.points.size();
  Require(k >= 1 && k <= m, "GapExperiment: need 1 <= k <= m");
  GapReport report;
  report.k = k;
  const OptimalSelection opt = BruteForceOptimal(inst, k);
  report.u_star = opt.utility;
  report.optimal = opt.points;

  const AttributedGraph graph = FonToGraph(inst);
  for (const std::string& name : selectors) {
    const bool stochastic = IsStochastic(name);
    const std::size_t runs = stochastic ? options.runs : 1;
    std::vector<double> utilities, ratios;
    GapEntry entry;
    entry.selector = name;
    entry.runs = runs;
    for (std::size_t r = 0; r < runs; ++r) {
      const std::uint64_t seed = options.seed + r;
      std::vector<std::size_t> chosen;
      if (name == "brute_force") {
        chosen = opt.points;
      } else if (name == "forest") {
        const std::size_t size = std::min(k + 1, inst.num_features);
        chosen = ForestSelect(
            inst, DensestSubgraphVertices(inst.num_features, inst.points, size),
            k);
      } else if (name == "rsgnn") {
        RsgnnConfig cfg = options.rsgnn;
        cfg.k = k;
        Rng rng(seed);
        const TrainedState state = Train(graph, cfg, rng);
        const RepresentativeSet reps = ExtractRepresentatives(state, k);
        chosen.assign(reps.nodes.begin(), reps.nodes.end());
      } else {
        const auto kind = ParseSelectorKind(name);
        if (!kind) throw ValidationError("unknown selector '" + name + "'");
        SelectorConfig cfg = options.selector;
        cfg.kind = *kind;
        cfg.k = k;
        cfg.seed = seed;
        const RepresentativeSet reps = RunSelector(cfg, graph, graph.features());
        chosen.assign(reps.nodes.begin(), reps.nodes.end());
      }
      const double u = FonUtility(inst, chosen);
      utilities.push_back(u);
      ratios.push_back(report.u_star > 0.0 ? u / report.u_star : 1.0);
      if (r == 0) entry.points = chosen;
    }
    entry.utility = Mean(utilities);
    entry.ratio = Mean(ratios);
    entry.ratio_ci95 =
        runs > 1 ? 1.96 * StdDev(ratios) / std::sqrt(static_cast<double>(runs))
                 : 0.0;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

nlohmann::json ToJson(const GapReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const GapEntry& e : report.entries) {
    nlohmann::json j = {{"selector", e.selector},
                        {"utility", e.utility},
                        {"ratio", e.ratio},
                        {"runs", e.runs},
                        {"points", e.points}};
    if (e.runs > 1) j["ratio_ci95"] = e.ratio_ci95;
    entries.push_back(std::move(j));
  }
  return {{"u_star", report.u_star},
          {"k", report.k},
          {"optimal", report.optimal},
          {"entries", std::move(entries)}};
}

}  // namespace rsgnn
