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

#include "rsgnn/adam.h"

#include <cmath>

#include "rsgnn/error.h"

namespace rsgnn {

OptimizerState MakeOptimizerState(const AdamOptions& options,
                                  std::span<const ParamBlock> params) {
  OptimizerState state;
  state.options = options;
  for (const ParamBlock& p : params) {
    state.first_moment.emplace_back(p.value->rows(), p.value->cols());
    state.second_moment.emplace_back(p.value->rows(), p.value->cols());
  }
  return state;
}

void AdamStep(std::span<const ParamBlock> params, OptimizerState& state) {
  Require(params.size() == state.first_moment.size(),
          "AdamStep: parameter count does not match optimizer state");
  for (std::size_t b = 0; b < params.size(); ++b) {
    const ParamBlock& p = params[b];
    Require(SameShape(*p.value, *p.grad) &&
                SameShape(*p.value, state.first_moment[b]),
            "AdamStep: shape mismatch in block '" + p.name + "'");
    if (!AllFinite(*p.grad)) {
      throw NumericError("AdamStep: non-finite gradient in block '" + p.name +
                         "'");
    }
  }

  ++state.step;
  const AdamOptions& o = state.options;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(o.beta1, t);
  const double correction2 = 1.0 - std::pow(o.beta2, t);
  for (std::size_t b = 0; b < params.size(); ++b) {
    auto value = params[b].value->values();
    const auto grad = params[b].grad->values();
    auto m = state.first_moment[b].values();
    auto v = state.second_moment[b].values();
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double g = grad[i];
      m[i] = o.beta1 * m[i] + (1.0 - o.beta1) * g;
      v[i] = o.beta2 * v[i] + (1.0 - o.beta2) * g * g;
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      value[i] -= o.learning_rate * m_hat / (std::sqrt(v_hat) + o.epsilon);
    }
  }
}

}  // namespace rsgnn
