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

#include "rsgnn/representative_set.h"

#include <algorithm>

#include "rsgnn/error.h"

namespace rsgnn {

nlohmann::json ToJson(const RepresentativeSet& reps) {
  return {{"selector", reps.selector},
          {"seed", reps.seed},
          {"k", reps.nodes.size()},
          {"nodes", reps.nodes}};
}

RepresentativeSet RepresentativeSetFromJson(const nlohmann::json& j) {
  RepresentativeSet reps;
  try {
    reps.selector = j.at("selector").get<std::string>();
    reps.seed = j.at("seed").get<std::uint64_t>();
    reps.nodes = j.at("nodes").get<std::vector<int>>();
    const auto k = j.at("k").get<std::size_t>();
    if (k != reps.nodes.size()) {
      throw ValidationError("representative set: k=" + std::to_string(k) +
                            " but " + std::to_string(reps.nodes.size()) +
                            " nodes listed");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("representative set: ") + e.what());
  }
  return reps;
}

bool IsValidSelection(const std::vector<int>& nodes, std::size_t m) {
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return false;
  return std::all_of(sorted.begin(), sorted.end(), [m](int v) {
    return v >= 0 && static_cast<std::size_t>(v) < m;
  });
}

}  // namespace rsgnn
