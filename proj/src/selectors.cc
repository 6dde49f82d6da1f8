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

#include "rsgnn/selectors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rsgnn/error.h"
#include "rsgnn/similarity.h"

namespace rsgnn {
namespace {

void CheckBudget(std::size_t k, std::size_t m) {
  if (k < 1 || k > m) {
    throw ValidationError("budget k=" + std::to_string(k) +
                          " is infeasible for " + std::to_string(m) + " nodes");
  }
}

RepresentativeSet MakeSet(const SelectorConfig& cfg, std::vector<int> nodes) {
  return {std::string(ToString(cfg.kind)), cfg.seed, std::move(nodes)};
}

std::size_t NearestCenter(const DenseMatrix& centers, std::span<const double> x,
                          double* dist2 = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < centers.rows(); ++j) {
    const double d = SquaredDistance(centers.row(j), x);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  if (dist2) *dist2 = best_d;
  return best;
}

// D^2-weighted seeding over row indices; falls back to a uniform pick among
// unchosen rows when every remaining distance is zero. `dist2(i, j)` returns
// the squared distance between rows i and j.
template <typename Dist2>
std::vector<std::size_t> WeightedSeeding(std::size_t m, std::size_t k,
                                         Dist2 dist2, Rng& rng) {
  std::vector<std::size_t> chosen;
  std::vector<bool> is_chosen(m, false);
  std::vector<double> nearest(m, std::numeric_limits<double>::infinity());
  std::uniform_int_distribution<std::size_t> first(0, m - 1);
  std::size_t next = first(rng);
  while (true) {
    chosen.push_back(next);
    is_chosen[next] = true;
    if (chosen.size() == k) break;
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      nearest[i] = is_chosen[i] ? 0.0 : std::min(nearest[i], dist2(i, next));
      total += nearest[i];
    }
    if (total > 0.0) {
      std::discrete_distribution<std::size_t> pick(nearest.begin(),
                                                   nearest.end());
      next = pick(rng);
    } else {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < m; ++i)
        if (!is_chosen[i]) open.push_back(i);
      std::uniform_int_distribution<std::size_t> u(0, open.size() - 1);
      next = open[u(rng)];
    }
  }
  return chosen;
}

// For each target in order, the closest not-yet-taken row of `ctx`.
std::vector<int> NearestDistinctRows(const DenseMatrix& ctx,
                                     const DenseMatrix& targets) {
  std::vector<bool> taken(ctx.rows(), false);
  std::vector<int> out;
  for (std::size_t j = 0; j < targets.rows(); ++j) {
    std::size_t best = ctx.rows();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ctx.rows(); ++i) {
      if (taken[i]) continue;
      const double d = SquaredDistance(ctx.row(i), targets.row(j));
      if (best == ctx.rows() || d < best_d) {
        best_d = d;
        best = i;
      }
    }
    taken[best] = true;
    out.push_back(static_cast<int>(best));
  }
  return out;
}

}  // namespace

std::string_view ToString(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::kRandom:
      return "random";
    case SelectorKind::kPopular:
      return "popular";
    case SelectorKind::kKMeans:
      return "kmeans";
    case SelectorKind::kKMedoid:
      return "kmedoid";
    case SelectorKind::kFfs:
      return "ffs";
    case SelectorKind::kMaxCoverRbf:
      return "maxcover_rbf";
    case SelectorKind::kMaxCoverCos:
      return "maxcover_cos";
  }
  return "?";
}

std::optional<SelectorKind> ParseSelectorKind(std::string_view name) {
  for (auto kind : {SelectorKind::kRandom, SelectorKind::kPopular,
                    SelectorKind::kKMeans, SelectorKind::kKMedoid,
                    SelectorKind::kFfs, SelectorKind::kMaxCoverRbf,
                    SelectorKind::kMaxCoverCos}) {
    if (ToString(kind) == name) return kind;
  }
  return std::nullopt;
}

bool RequiresGraph(SelectorKind kind) { return kind == SelectorKind::kPopular; }

RepresentativeSet SelectRandom(std::size_t m, const SelectorConfig& cfg) {
  CheckBudget(cfg.k, m);
  Rng rng(cfg.seed);
  const auto perm = DrawPermutation(m, rng);
  std::vector<int> nodes(perm.begin(),
                         perm.begin() + static_cast<std::ptrdiff_t>(cfg.k));
  return MakeSet(cfg, std::move(nodes));
}

RepresentativeSet SelectPopular(const AttributedGraph& g,
                                const SelectorConfig& cfg) {
  if (!g.has_structure()) throw ValidationError("selector requires graph");
  CheckBudget(cfg.k, g.num_nodes());
  const auto degrees = g.Degrees();
  std::vector<std::size_t> order(g.num_nodes());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return degrees[a] > degrees[b];
                   });
  std::vector<int> nodes(order.begin(),
                         order.begin() + static_cast<std::ptrdiff_t>(cfg.k));
  return MakeSet(cfg, std::move(nodes));
}

RepresentativeSet SelectKMeans(const DenseMatrix& ctx, const SelectorConfig& cfg,
                               KMeansTrace* trace) {
  const std::size_t m = ctx.rows();
  CheckBudget(cfg.k, m);
  Rng rng(cfg.seed);
  const auto seeds = WeightedSeeding(
      m, cfg.k,
      [&](std::size_t i, std::size_t j) {
        return SquaredDistance(ctx.row(i), ctx.row(j));
      },
      rng);
  std::vector<std::size_t> seed_rows(seeds.begin(), seeds.end());
  DenseMatrix centers = GatherRows(ctx, seed_rows);

  std::vector<std::size_t> assign(m, cfg.k);
  std::vector<std::size_t> counts(cfg.k);
  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t c = NearestCenter(centers, ctx.row(i));
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    DenseMatrix sums(cfg.k, ctx.cols());
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      auto s = sums.row(assign[i]);
      const auto x = ctx.row(i);
      for (std::size_t f = 0; f < s.size(); ++f) s[f] += x[f];
      ++counts[assign[i]];
    }
    for (std::size_t c = 0; c < cfg.k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its center
      auto dst = centers.row(c);
      const auto s = sums.row(c);
      for (std::size_t f = 0; f < dst.size(); ++f)
        dst[f] = s[f] / static_cast<double>(counts[c]);
    }
    if (trace) {
      double sse = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        sse += SquaredDistance(ctx.row(i), centers.row(assign[i]));
      trace->sse.push_back(sse);
      trace->iterations = iter + 1;
    }
  }
  return MakeSet(cfg, NearestDistinctRows(ctx, centers));
}

RepresentativeSet SelectKMedoid(const DenseMatrix& ctx,
                                const SelectorConfig& cfg) {
  const std::size_t m = ctx.rows();
  CheckBudget(cfg.k, m);
  if (m > kMaxKMedoidNodes) {
    throw CapacityError("kmedoid needs an m x m distance matrix; m=" +
                        std::to_string(m) + " exceeds the limit of " +
                        std::to_string(kMaxKMedoidNodes));
  }
  DenseMatrix dist(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      dist(i, j) = dist(j, i) = Distance(ctx.row(i), ctx.row(j));

  Rng rng(cfg.seed);
  std::vector<std::size_t> medoids = WeightedSeeding(
      m, cfg.k,
      [&](std::size_t i, std::size_t j) { return dist(i, j) * dist(i, j); },
      rng);

  std::vector<std::size_t> assign(m);
  std::vector<std::vector<std::size_t>> members(cfg.k);
  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    for (auto& mem : members) mem.clear();
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < cfg.k; ++c)
        if (dist(i, medoids[c]) < dist(i, medoids[best])) best = c;
      assign[i] = best;
      members[best].push_back(i);
    }
    bool changed = false;
    for (std::size_t c = 0; c < cfg.k; ++c) {
      if (members[c].empty()) continue;
      std::size_t best = medoids[c];
      double best_cost = std::numeric_limits<double>::infinity();
      for (std::size_t cand : members[c]) {  // ascending index order
        double cost = 0.0;
        for (std::size_t i : members[c]) cost += dist(cand, i);
        if (cost < best_cost) {
          best_cost = cost;
          best = cand;
        }
      }
      if (best != medoids[c]) {
        medoids[c] = best;
        changed = true;
      }
    }
    if (!changed) break;
  }

  // Empty clusters can leave a medoid shared with another cluster; replace
  // repeats by their nearest unused row.
  std::vector<bool> taken(m, false);
  std::vector<int> nodes;
  for (std::size_t c = 0; c < cfg.k; ++c) {
    std::size_t pick = medoids[c];
    if (taken[pick]) {
      std::size_t best = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (taken[i]) continue;
        if (best == m || dist(pick, i) < dist(pick, best)) best = i;
      }
      pick = best;
    }
    taken[pick] = true;
    nodes.push_back(static_cast<int>(pick));
  }
  return MakeSet(cfg, std::move(nodes));
}

RepresentativeSet SelectFfs(const DenseMatrix& ctx, const SelectorConfig& cfg) {
  const std::size_t m = ctx.rows();
  CheckBudget(cfg.k, m);
  std::size_t first = 0;
  if (cfg.first_pick) {
    Require(*cfg.first_pick < m, "SelectFfs: first_pick out of range");
    first = *cfg.first_pick;
  } else {
    Rng rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> u(0, m - 1);
    first = u(rng);
  }
  std::vector<int> nodes{static_cast<int>(first)};
  std::vector<bool> taken(m, false);
  taken[first] = true;
  std::vector<double> nearest(m);
  for (std::size_t i = 0; i < m; ++i)
    nearest[i] = SquaredDistance(ctx.row(i), ctx.row(first));
  while (nodes.size() < cfg.k) {
    std::size_t best = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (taken[i]) continue;
      if (best == m || nearest[i] > nearest[best]) best = i;
    }
    taken[best] = true;
    nodes.push_back(static_cast<int>(best));
    for (std::size_t i = 0; i < m; ++i)
      nearest[i] = std::min(nearest[i], SquaredDistance(ctx.row(i), ctx.row(best)));
  }
  return MakeSet(cfg, std::move(nodes));
}

CsrMatrix BuildCandidateSimilarity(const DenseMatrix& ctx, SelectorKind kind,
                                   double rbf_gamma,
                                   std::size_t candidate_knn) {
  Require(kind == SelectorKind::kMaxCoverCos || kind == SelectorKind::kMaxCoverRbf,
          "BuildCandidateSimilarity: not a MaxCover selector");
  const std::size_t m = ctx.rows();
  const std::size_t knn = std::min(candidate_knn, m - 1);
  const double gamma =
      rbf_gamma > 0.0 ? rbf_gamma : 1.0 / static_cast<double>(std::max<std::size_t>(ctx.cols(), 1));
  const RowDotEngine engine(ctx);
  const auto sq = engine.squared_norms();
  std::vector<double> sims(m);
  std::vector<std::size_t> order;
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < m; ++i) {
    if (kind == SelectorKind::kMaxCoverCos) {
      CosineRow(engine, i, sims);
      for (double& s : sims) s = std::clamp(s, 0.0, 1.0);
    } else {
      engine.DotsWith(i, sims);
      for (std::size_t j = 0; j < m; ++j) {
        const double d2 = std::max(0.0, sq[i] + sq[j] - 2.0 * sims[j]);
        sims[j] = std::exp(-gamma * d2);
      }
    }
    order.resize(m);
    std::iota(order.begin(), order.end(), 0);
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(i));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(knn),
                      order.end(), [&](std::size_t a, std::size_t b) {
                        return sims[a] != sims[b] ? sims[a] > sims[b] : a < b;
                      });
    triplets.push_back({i, i, 1.0});
    for (std::size_t t = 0; t < knn; ++t) {
      const std::size_t j = order[t];
      if (sims[j] <= 0.0) continue;
      triplets.push_back({i, j, sims[j]});
      triplets.push_back({j, i, sims[j]});
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  triplets.erase(std::unique(triplets.begin(), triplets.end(),
                             [](const Triplet& a, const Triplet& b) {
                               return a.row == b.row && a.col == b.col;
                             }),
                 triplets.end());
  return CsrMatrix::FromTriplets(m, m, std::move(triplets));
}

double FacilityLocationValue(const CsrMatrix& sim,
                             const std::vector<int>& selected) {
  std::vector<double> cover(sim.rows(), 0.0);
  for (int s : selected) {
    const auto cols = sim.RowColumns(static_cast<std::size_t>(s));
    const auto vals = sim.RowValues(static_cast<std::size_t>(s));
    for (std::size_t p = 0; p < cols.size(); ++p)
      cover[cols[p]] = std::max(cover[cols[p]], vals[p]);
  }
  return std::accumulate(cover.begin(), cover.end(), 0.0);
}

std::vector<int> GreedyFacilityLocation(const CsrMatrix& sim, std::size_t k,
                                        std::vector<double>* gains) {
  const std::size_t m = sim.rows();
  CheckBudget(k, m);
  std::vector<double> cover(m, 0.0);
  std::vector<bool> taken(m, false);
  std::vector<int> picked;
  if (gains) gains->clear();
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = m;
    double best_gain = -1.0;
    for (std::size_t v = 0; v < m; ++v) {
      if (taken[v]) continue;
      const auto cols = sim.RowColumns(v);
      const auto vals = sim.RowValues(v);
      double gain = 0.0;
      for (std::size_t p = 0; p < cols.size(); ++p)
        gain += std::max(0.0, vals[p] - cover[cols[p]]);
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    taken[best] = true;
    picked.push_back(static_cast<int>(best));
    if (gains) gains->push_back(best_gain);
    const auto cols = sim.RowColumns(best);
    const auto vals = sim.RowValues(best);
    for (std::size_t p = 0; p < cols.size(); ++p)
      cover[cols[p]] = std::max(cover[cols[p]], vals[p]);
  }
  return picked;
}

RepresentativeSet SelectMaxCover(const DenseMatrix& ctx,
                                 const SelectorConfig& cfg,
                                 std::vector<double>* gains) {
  CheckBudget(cfg.k, ctx.rows());
  if (ctx.rows() == 1) return MakeSet(cfg, {0});
  const CsrMatrix sim =
      BuildCandidateSimilarity(ctx, cfg.kind, cfg.rbf_gamma, cfg.candidate_knn);
  return MakeSet(cfg, GreedyFacilityLocation(sim, cfg.k, gains));
}

RepresentativeSet RunSelector(const SelectorConfig& cfg,
                              const AttributedGraph& g, const DenseMatrix& ctx) {
  switch (cfg.kind) {
    case SelectorKind::kRandom:
      return SelectRandom(g.num_nodes(), cfg);
    case SelectorKind::kPopular:
      return SelectPopular(g, cfg);
    case SelectorKind::kKMeans:
      return SelectKMeans(ctx, cfg);
    case SelectorKind::kKMedoid:
      return SelectKMedoid(ctx, cfg);
    case SelectorKind::kFfs:
      return SelectFfs(ctx, cfg);
    case SelectorKind::kMaxCoverRbf:
    case SelectorKind::kMaxCoverCos:
      return SelectMaxCover(ctx, cfg);
  }
  throw ContractError("RunSelector: unknown selector");
}

}  // namespace rsgnn
