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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "rsgnn/error.h"
#include "rsgnn/graph.h"
#include "rsgnn/selectors.h"

namespace rsgnn {
namespace {

constexpr SelectorKind kAllKinds[] = {
    SelectorKind::kRandom, SelectorKind::kPopular,     SelectorKind::kKMeans,
    SelectorKind::kKMedoid, SelectorKind::kFfs,        SelectorKind::kMaxCoverRbf,
    SelectorKind::kMaxCoverCos};

DenseMatrix Line(std::initializer_list<double> xs) {
  DenseMatrix m(xs.size(), 1);
  std::size_t i = 0;
  for (double x : xs) m(i++, 0) = x;
  return m;
}

SelectorConfig Cfg(SelectorKind kind, std::size_t k, std::uint64_t seed = 0) {
  SelectorConfig c;
  c.kind = kind;
  c.k = k;
  c.seed = seed;
  return c;
}

AttributedGraph PlainGraph(std::size_t m, const std::vector<Edge>& edges,
                           DenseMatrix x = DenseMatrix()) {
  if (x.empty()) x = DenseMatrix(m, 1, 1.0);
  return AttributedGraph::Create(m, edges, std::move(x), std::nullopt, 0);
}

std::set<int> AsSet(const RepresentativeSet& r) {
  return {r.nodes.begin(), r.nodes.end()};
}

TEST_CASE("every selector is deterministic and returns k distinct nodes") {
  std::mt19937_64 rng(1);
  const AttributedGraph g = GenerateSbm({.block_size = 30, .num_features = 6}, rng);
  for (SelectorKind kind : kAllKinds) {
    for (std::size_t k : {1u, 5u, 17u}) {
      for (std::uint64_t seed : {0u, 9u}) {
        const auto cfg = Cfg(kind, k, seed);
        const RepresentativeSet a = RunSelector(cfg, g, g.features());
        const RepresentativeSet b = RunSelector(cfg, g, g.features());
        CHECK(a == b);
        CHECK(a.k() == k);
        CHECK(IsValidSelection(a.nodes, g.num_nodes()));
        CHECK(a.selector == ToString(kind));
      }
    }
    CHECK_THROWS_AS(RunSelector(Cfg(kind, g.num_nodes() + 1), g, g.features()),
                    ValidationError);
  }
}

TEST_CASE("selector names round-trip") {
  for (SelectorKind kind : kAllKinds) CHECK(ParseSelectorKind(ToString(kind)) == kind);
  CHECK_FALSE(ParseSelectorKind("mincut").has_value());
  CHECK(RequiresGraph(SelectorKind::kPopular));
  CHECK_FALSE(RequiresGraph(SelectorKind::kFfs));
}

TEST_CASE("random selection") {
  CHECK(AsSet(SelectRandom(6, Cfg(SelectorKind::kRandom, 6))).size() == 6);
  std::vector<int> counts(4, 0);
  const int draws = 10000;
  for (int s = 0; s < draws; ++s)
    counts[SelectRandom(4, Cfg(SelectorKind::kRandom, 1, s)).nodes[0]]++;
  const double sigma = std::sqrt(draws * 0.25 * 0.75);
  for (int c : counts) CHECK(std::abs(c - draws * 0.25) < 3 * sigma);
}

TEST_CASE("popular selection") {
  // degrees [3, 1, 1, 2]
  const AttributedGraph g = PlainGraph(4, {{0, 1}, {0, 2}, {0, 3}, {3, 1}});
  const auto degs = g.Degrees();
  CHECK(degs == std::vector<std::size_t>{3, 2, 1, 2});
  const AttributedGraph h = PlainGraph(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
  CHECK(h.Degrees() == std::vector<std::size_t>{3, 1, 1, 2, 1});
  CHECK(SelectPopular(h, Cfg(SelectorKind::kPopular, 2)).nodes == std::vector<int>{0, 3});
  const AttributedGraph ring = PlainGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(SelectPopular(ring, Cfg(SelectorKind::kPopular, 2)).nodes == std::vector<int>{0, 1});
  const AttributedGraph star = PlainGraph(5, {{2, 0}, {2, 1}, {2, 3}, {2, 4}});
  CHECK(SelectPopular(star, Cfg(SelectorKind::kPopular, 1)).nodes == std::vector<int>{2});
  const AttributedGraph bare = AttributedGraph::Create(
      3, {}, DenseMatrix(3, 1, 1.0), std::nullopt, 0, /*has_structure=*/false);
  try {
    SelectPopular(bare, Cfg(SelectorKind::kPopular, 1));
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "selector requires graph");
  }
}

TEST_CASE("kmeans examples") {
  const DenseMatrix pts = DenseMatrix::FromRows({{0, 0}, {0.1, 0}, {10, 10}, {10, 10.1}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto reps = SelectKMeans(pts, Cfg(SelectorKind::kKMeans, 2, seed));
    const std::set<int> s = AsSet(reps);
    CHECK((s.count(0) + s.count(1)) == 1);
    CHECK((s.count(2) + s.count(3)) == 1);
  }
  CHECK(AsSet(SelectKMeans(pts, Cfg(SelectorKind::kKMeans, 4))).size() == 4);
  const DenseMatrix dup(5, 3, 2.0);
  CHECK(AsSet(SelectKMeans(dup, Cfg(SelectorKind::kKMeans, 2))).size() == 2);
}

TEST_CASE("kmeans within-cluster error never increases") {
  std::mt19937_64 rng(2);
  const AttributedGraph g = GenerateSbm({.block_size = 50, .num_features = 5}, rng);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    KMeansTrace trace;
    SelectKMeans(g.features(), Cfg(SelectorKind::kKMeans, 6, seed), &trace);
    CHECK(trace.iterations >= 1);
    for (std::size_t i = 1; i < trace.sse.size(); ++i)
      CHECK(trace.sse[i] <= trace.sse[i - 1] * (1 + 1e-12));
  }
}

TEST_CASE("kmedoid examples") {
  CHECK(SelectKMedoid(Line({0, 1, 10}), Cfg(SelectorKind::kKMedoid, 1)).nodes ==
        std::vector<int>{1});
  CHECK(AsSet(SelectKMedoid(Line({0, 1, 10}), Cfg(SelectorKind::kKMedoid, 3))).size() == 3);
  const DenseMatrix two = Line({0, 1, 3, 100, 104, 105});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    // Exhaustive medoids: {0,1,3} -> 1 (cost 3), {100,104,105} -> 104 (cost 5).
    CHECK(AsSet(SelectKMedoid(two, Cfg(SelectorKind::kKMedoid, 2, seed))) ==
          std::set<int>{1, 4});
  }
  CHECK_THROWS_AS(SelectKMedoid(DenseMatrix(kMaxKMedoidNodes + 1, 1),
                                Cfg(SelectorKind::kKMedoid, 2)),
                  CapacityError);
}

TEST_CASE("farthest-first examples") {
  auto cfg = Cfg(SelectorKind::kFfs, 2);
  cfg.first_pick = 0;
  CHECK(SelectFfs(Line({0, 1, 10}), cfg).nodes == std::vector<int>{0, 2});
  const auto one = SelectFfs(Line({0, 1, 10}), Cfg(SelectorKind::kFfs, 1, 5));
  CHECK(one.k() == 1);
  CHECK(SelectFfs(Line({0, 1, 10}), Cfg(SelectorKind::kFfs, 2, 5)).nodes[0] ==
        one.nodes[0]);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    DenseMatrix pts(5, 2);
    for (double& v : pts.values()) v = u(rng);
    auto c = Cfg(SelectorKind::kFfs, 3);
    c.first_pick = static_cast<std::size_t>(t % 5);
    std::vector<int> want = {t % 5};
    while (want.size() < 3) {
      int best = -1;
      double bd = -1;
      for (int i = 0; i < 5; ++i) {
        if (std::find(want.begin(), want.end(), i) != want.end()) continue;
        double near = 1e300;
        for (int s : want) near = std::min(near, Distance(pts.row(i), pts.row(s)));
        if (near > bd) {
          bd = near;
          best = i;
        }
      }
      want.push_back(best);
    }
    CHECK(SelectFfs(pts, c).nodes == want);
  }
}

TEST_CASE("maxcover with uniform similarity picks the lowest index") {
  const DenseMatrix same(6, 3, 1.0);
  CHECK(SelectMaxCover(same, Cfg(SelectorKind::kMaxCoverCos, 1)).nodes ==
        std::vector<int>{0});
  CHECK(SelectMaxCover(same, Cfg(SelectorKind::kMaxCoverRbf, 1)).nodes ==
        std::vector<int>{0});
}

TEST_CASE("maxcover on two similarity cliques takes one node from each") {
  const DenseMatrix pts = DenseMatrix::FromRows(
      {{1, 0}, {1, 0.05}, {0.98, 0}, {0, 1}, {0.05, 1}, {0, 0.97}});
  for (SelectorKind kind : {SelectorKind::kMaxCoverCos, SelectorKind::kMaxCoverRbf}) {
    const std::set<int> s = AsSet(SelectMaxCover(pts, Cfg(kind, 2)));
    CHECK((s.count(0) + s.count(1) + s.count(2)) == 1);
    CHECK((s.count(3) + s.count(4) + s.count(5)) == 1);
  }
}

TEST_CASE("maxcover gains are non-increasing") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const AttributedGraph g = GenerateSbm({.block_size = 20, .num_features = 4}, rng);
    for (SelectorKind kind : {SelectorKind::kMaxCoverCos, SelectorKind::kMaxCoverRbf}) {
      std::vector<double> gains;
      SelectMaxCover(g.features(), Cfg(kind, 10), &gains);
      REQUIRE(gains.size() == 10);
      for (std::size_t i = 1; i < gains.size(); ++i) CHECK(gains[i] <= gains[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("greedy maxcover reaches 1 - 1/e of the exhaustive optimum") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size(2, 8);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t m = static_cast<std::size_t>(size(rng));
    DenseMatrix x(m, 3);
    for (double& v : x.values()) v = n(rng);
    const SelectorKind kind = t % 2 ? SelectorKind::kMaxCoverCos : SelectorKind::kMaxCoverRbf;
    const CsrMatrix sim = BuildCandidateSimilarity(x, kind, 0.0, 50);
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, m); ++k) {
      const double greedy = FacilityLocationValue(sim, GreedyFacilityLocation(sim, k));
      double best = 0;
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        std::vector<int> s;
        for (std::size_t i = 0; i < m; ++i)
          if (mask >> i & 1u) s.push_back(static_cast<int>(i));
        best = std::max(best, FacilityLocationValue(sim, s));
      }
      CHECK(greedy >= (1 - 1 / std::exp(1.0)) * best - 1e-12);
    }
  }
}

TEST_CASE("candidate similarity is symmetric with unit diagonal") {
  std::mt19937_64 rng(6);
  const AttributedGraph g = GenerateSbm({.block_size = 15, .num_features = 4}, rng);
  for (SelectorKind kind : {SelectorKind::kMaxCoverCos, SelectorKind::kMaxCoverRbf}) {
    const CsrMatrix sim = BuildCandidateSimilarity(g.features(), kind, 0.0, 5);
    CHECK(sim.IsSymmetric());
    for (std::size_t i = 0; i < sim.rows(); ++i) {
      CHECK(sim.At(i, i) == 1.0);
      for (double v : sim.RowValues(i)) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace rsgnn
