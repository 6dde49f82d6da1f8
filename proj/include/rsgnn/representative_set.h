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

#ifndef RSGNN_REPRESENTATIVE_SET_H_
#define RSGNN_REPRESENTATIVE_SET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace rsgnn {

// Ordered node indices chosen by a selector, plus where they came from.
struct RepresentativeSet {
  std::string selector;
  std::uint64_t seed = 0;
  std::vector<int> nodes;

  std::size_t k() const { return nodes.size(); }
  bool operator==(const RepresentativeSet&) const = default;
};

// {"selector": ..., "seed": ..., "k": ..., "nodes": [...]}
nlohmann::json ToJson(const RepresentativeSet& reps);
// Throws ValidationError on missing fields or k != nodes.size().
RepresentativeSet RepresentativeSetFromJson(const nlohmann::json& j);

// True if every index is in [0, m) and no index repeats.
bool IsValidSelection(const std::vector<int>& nodes, std::size_t m);

}  // namespace rsgnn

#endif  // RSGNN_REPRESENTATIVE_SET_H_
