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

#ifndef RSGNN_METRICS_H_
#define RSGNN_METRICS_H_

#include <span>

#include "rsgnn/representative_set.h"

namespace rsgnn {

// Fraction of `test` indices where pred == truth. Throws on an empty set.
double Accuracy(std::span<const int> pred, std::span<const int> truth,
                std::span<const int> test);
// 2 (acc - 1/2): zero at chance for a binary task.
double NormalizedAccuracy(double accuracy);
// Fraction of the c classes hit by at least one representative.
double LabelCoverage(const RepresentativeSet& reps, std::span<const int> labels,
                     int num_classes);
// I(A; Y) / sqrt(H(A) H(Y)); 0 when either entropy vanishes.
double Nmi(std::span<const int> assign, std::span<const int> labels);

struct WelchResult {
  double t = 0.0;
  double dof = 0.0;
  double p_two_sided = 1.0;
  // P-value for the alternative mean(a) > mean(b).
  double p_greater = 0.5;
};

// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
// freedom. Needs at least two values per sample and some variance.
WelchResult WelchTest(std::span<const double> a, std::span<const double> b);
double WelchTTest(std::span<const double> a, std::span<const double> b);

double Mean(std::span<const double> x);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double StdDev(std::span<const double> x);

}  // namespace rsgnn

#endif  // RSGNN_METRICS_H_
