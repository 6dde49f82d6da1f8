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

#include "rsgnn/grad_check.h"

#include <algorithm>
#include <cmath>

#include "rsgnn/error.h"

namespace rsgnn {

double RelativeError(double analytic, double numeric) {
  const double scale =
      std::max({1.0, std::abs(analytic), std::abs(numeric)});
  return std::abs(analytic - numeric) / scale;
}

double GradCheckReport::MaxRelativeError() const {
  double m = 0.0;
  for (const auto& b : blocks) m = std::max(m, b.max_relative_error);
  return m;
}

GradCheckReport GradCheck(const ScalarLoss& loss,
                          std::vector<DenseMatrix> params,
                          std::span<const DenseMatrix> analytic,
                          std::span<const std::string> names,
                          double epsilon) {
  Require(params.size() == analytic.size() && params.size() == names.size(),
          "GradCheck: params, gradients and names must align");
  GradCheckReport report;
  for (std::size_t b = 0; b < params.size(); ++b) {
    Require(SameShape(params[b], analytic[b]),
            "GradCheck: gradient shape mismatch for block '" + names[b] + "'");
    GradCheckBlock block{names[b], 0.0, 0};
    auto values = params[b].values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + epsilon;
      const double up = loss(params);
      values[i] = saved - epsilon;
      const double down = loss(params);
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * epsilon);
      const double err = RelativeError(analytic[b].values()[i], numeric);
      if (!(err <= block.max_relative_error)) {
        block.max_relative_error = std::isnan(err) ? INFINITY : err;
        block.worst_index = i;
      }
    }
    report.blocks.push_back(block);
  }
  return report;
}

}  // namespace rsgnn
