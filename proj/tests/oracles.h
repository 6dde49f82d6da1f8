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

#ifndef RSGNN_TESTS_ORACLES_H_
#define RSGNN_TESTS_ORACLES_H_

// Slow, independent reference implementations used only to check the
// library. None of these share code with src/.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using Pair = std::pair<std::size_t, std::size_t>;

// Row-major dense product c = a * b with plain triple loops.
inline std::vector<double> DenseProduct(const std::vector<double>& a,
                                        const std::vector<double>& b,
                                        std::size_t n, std::size_t k,
                                        std::size_t m) {
  std::vector<double> c(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < k; ++t) c[i * m + j] += a[i * k + t] * b[t * m + j];
  return c;
}

// Student t density.
inline double TPdf(double x, double nu) {
  const double logc = std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2) -
                      0.5 * std::log(nu * std::numbers::pi);
  return std::exp(logc - (nu + 1) / 2 * std::log1p(x * x / nu));
}

// P(T > t) by composite Simpson integration of the density over [t, t + 200].
inline double TUpperTail(double t, double nu) {
  const int n = 400000;
  const double a = t, b = t + 200.0, h = (b - a) / n;
  double s = TPdf(a, nu) + TPdf(b, nu);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * TPdf(a + i * h, nu);
  return s * h / 3.0;
}

// Welch statistic and Welch-Satterthwaite degrees of freedom from scratch.
inline std::pair<double, double> WelchStatistic(const std::vector<double>& a,
                                                const std::vector<double>& b) {
  auto moments = [](const std::vector<double>& x) {
    double mean = 0;
    for (double v : x) mean += v;
    mean /= x.size();
    double ss = 0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::pair{mean, ss / (x.size() - 1)};
  };
  const auto [ma, va] = moments(a);
  const auto [mb, vb] = moments(b);
  const double qa = va / a.size(), qb = vb / b.size();
  const double t = (ma - mb) / std::sqrt(qa + qb);
  const double dof = (qa + qb) * (qa + qb) /
                     (qa * qa / (a.size() - 1) + qb * qb / (b.size() - 1));
  return {t, dof};
}

// Fit-or-Not by enumerating every type vector. `known[p]` is 0 or 1 when all
// type assignments agreeing with the observed labels give point p that label,
// and -1 when both labels occur.
inline std::vector<int> EnumerateInference(std::size_t n,
                                           const std::vector<Pair>& points,
                                           const std::vector<std::size_t>& queried,
                                           const std::vector<int>& observed) {
  std::vector<int> seen(points.size(), 0);  // bit 0: label 0 seen, bit 1: 1
  for (std::uint32_t types = 0; types < (1u << n); ++types) {
    auto label = [&](const Pair& p) {
      return ((types >> p.first) & 1u) == ((types >> p.second) & 1u) ? 1 : 0;
    };
    bool consistent = true;
    for (std::size_t q = 0; q < queried.size() && consistent; ++q) {
      consistent = label(points[queried[q]]) == observed[q];
    }
    if (!consistent) continue;
    for (std::size_t p = 0; p < points.size(); ++p) seen[p] |= 1 << label(points[p]);
  }
  std::vector<int> known(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    known[p] = seen[p] == 1 ? 0 : seen[p] == 2 ? 1 : -1;
  }
  return known;
}

inline std::vector<int> TrueLabels(const std::vector<int>& types,
                                   const std::vector<Pair>& points) {
  std::vector<int> out;
  for (const auto& [i, j] : points) out.push_back(types[i] == types[j] ? 1 : 0);
  return out;
}

// Utility by enumeration: fraction of points whose label is forced by the
// labels of `queried`.
inline double EnumeratedUtility(std::size_t n, const std::vector<Pair>& points,
                                const std::vector<int>& labels,
                                const std::vector<std::size_t>& queried) {
  std::vector<int> observed;
  for (std::size_t q : queried) observed.push_back(labels[q]);
  const auto known = EnumerateInference(n, points, queried, observed);
  return static_cast<double>(std::count_if(known.begin(), known.end(),
                                           [](int v) { return v >= 0; })) /
         points.size();
}

// Best k-subset by bitmask sweep; ties resolved to the lexicographically
// smallest sorted index list.
inline std::pair<std::vector<std::size_t>, double> ExhaustiveOptimum(
    std::size_t n, const std::vector<Pair>& points, const std::vector<int>& labels,
    std::size_t k) {
  const std::size_t m = points.size();
  k = std::min(k, m);
  std::vector<std::size_t> best;
  double best_u = -1.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    std::vector<std::size_t> subset;
    for (std::size_t p = 0; p < m; ++p)
      if (mask >> p & 1u) subset.push_back(p);
    const double u = EnumeratedUtility(n, points, labels, subset);
    if (u > best_u + 1e-12 || (std::abs(u - best_u) <= 1e-12 && subset < best)) {
      best_u = u;
      best = subset;
    }
  }
  return {best, best_u};
}

}  // namespace oracle

#endif  // RSGNN_TESTS_ORACLES_H_
