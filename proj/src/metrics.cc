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

#include "rsgnn/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>

#include <boost/math/distributions/students_t.hpp>

#include "rsgnn/error.h"

namespace rsgnn {

double Accuracy(std::span<const int> pred, std::span<const int> truth,
                std::span<const int> test) {
  Require(pred.size() == truth.size(), "Accuracy: length mismatch");
  if (test.empty()) throw ValidationError("Accuracy: empty test set");
  std::size_t correct = 0;
  for (int i : test) {
    Require(i >= 0 && static_cast<std::size_t>(i) < pred.size(),
            "Accuracy: test index out of range");
    correct += pred[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

double NormalizedAccuracy(double accuracy) { return 2.0 * (accuracy - 0.5); }

double LabelCoverage(const RepresentativeSet& reps, std::span<const int> labels,
                     int num_classes) {
  Require(num_classes >= 1, "LabelCoverage: need at least one class");
  std::set<int> hit;
  for (int v : reps.nodes) {
    Require(v >= 0 && static_cast<std::size_t>(v) < labels.size(),
            "LabelCoverage: representative index out of range");
    hit.insert(labels[static_cast<std::size_t>(v)]);
  }
  return static_cast<double>(hit.size()) / static_cast<double>(num_classes);
}

double Nmi(std::span<const int> assign, std::span<const int> labels) {
  Require(assign.size() == labels.size(), "Nmi: length mismatch");
  const double n = static_cast<double>(assign.size());
  if (assign.empty()) return 0.0;
  std::map<int, double> pa, py;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < assign.size(); ++i) {
    pa[assign[i]] += 1.0;
    py[labels[i]] += 1.0;
    joint[{assign[i], labels[i]}] += 1.0;
  }
  auto entropy = [n](const std::map<int, double>& counts) {
    double h = 0.0;
    for (const auto& [_, c] : counts) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double ha = entropy(pa);
  const double hy = entropy(py);
  if (ha <= 0.0 || hy <= 0.0) return 0.0;
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    const double pxy = c / n;
    mi += pxy * std::log(pxy / ((pa[key.first] / n) * (py[key.second] / n)));
  }
  return std::clamp(mi / std::sqrt(ha * hy), 0.0, 1.0);
}

double Mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

double StdDev(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double mu = Mean(x);
  double s = 0.0;
  for (double v : x) s += (v - mu) * (v - mu);
  return std::sqrt(s / static_cast<double>(x.size() - 1));
}

WelchResult WelchTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw ValidationError("Welch test needs at least two values per sample");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = StdDev(a) * StdDev(a) / na;
  const double vb = StdDev(b) * StdDev(b) / nb;
  const double diff = Mean(a) - Mean(b);
  WelchResult r;
  if (va + vb == 0.0) {
    if (diff != 0.0) {
      throw ValidationError("Welch test undefined: both samples are constant");
    }
    return r;  // identical constant samples: no evidence of a difference
  }
  r.t = diff / std::sqrt(va + vb);
  r.dof = (va + vb) * (va + vb) /
          (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  const boost::math::students_t dist(r.dof);
  r.p_greater = boost::math::cdf(boost::math::complement(dist, r.t));
  r.p_two_sided =
      std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
  return r;
}

double WelchTTest(std::span<const double> a, std::span<const double> b) {
  return WelchTest(a, b).p_two_sided;
}

}  // namespace rsgnn
