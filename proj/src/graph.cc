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

#include "rsgnn/graph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rsgnn/error.h"
#include "rsgnn/similarity.h"

namespace rsgnn {
namespace {

std::vector<Edge> CanonicalEdges(std::size_t num_nodes,
                                 std::span<const Edge> edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    if (a >= num_nodes || b >= num_nodes) {
      throw ValidationError("edge " + std::to_string(i) + " (" +
                            std::to_string(a) + ", " + std::to_string(b) +
                            ") has an endpoint outside [0, " +
                            std::to_string(num_nodes) + ")");
    }
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CsrMatrix SymmetricPattern(std::size_t num_nodes,
                           std::span<const Edge> canonical) {
  std::vector<Triplet> t;
  t.reserve(2 * canonical.size());
  for (const auto& [a, b] : canonical) {
    t.push_back({a, b, 1.0});
    t.push_back({b, a, 1.0});
  }
  return CsrMatrix::FromTriplets(num_nodes, num_nodes, std::move(t));
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool ParseNumber(std::string_view token, T& out) {
  token = Trim(token);
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  return in;
}

std::string LineRef(const std::filesystem::path& path, std::size_t line) {
  return path.filename().string() + ":" + std::to_string(line);
}

}  // namespace

AttributedGraph AttributedGraph::Create(std::size_t num_nodes,
                                        std::span<const Edge> edges,
                                        DenseMatrix features,
                                        std::optional<std::vector<int>> labels,
                                        int num_classes, bool has_structure) {
  if (features.rows() != num_nodes) {
    throw ValidationError("feature matrix has " +
                          std::to_string(features.rows()) + " rows, expected " +
                          std::to_string(num_nodes));
  }
  if (!AllFinite(features)) throw ValidationError("non-finite feature value");
  if (num_classes < 0) throw ValidationError("negative class count");
  if (labels) {
    if (labels->size() != num_nodes) {
      throw ValidationError("label count " + std::to_string(labels->size()) +
                            " does not match node count " +
                            std::to_string(num_nodes));
    }
    for (std::size_t i = 0; i < labels->size(); ++i) {
      const int y = (*labels)[i];
      if (y < 0 || y >= num_classes) {
        throw ValidationError("label of node " + std::to_string(i) + " is " +
                              std::to_string(y) + ", outside [0, " +
                              std::to_string(num_classes) + ")");
      }
    }
  }
  AttributedGraph g;
  g.num_nodes_ = num_nodes;
  g.num_classes_ = num_classes;
  g.has_structure_ = has_structure;
  g.adjacency_ = SymmetricPattern(num_nodes, CanonicalEdges(num_nodes, edges));
  g.features_ = std::move(features);
  g.labels_ = std::move(labels);
  return g;
}

std::vector<std::size_t> AttributedGraph::Degrees() const {
  std::vector<std::size_t> d(num_nodes_);
  for (std::size_t i = 0; i < num_nodes_; ++i)
    d[i] = adjacency_.RowColumns(i).size();
  return d;
}

std::vector<Edge> AttributedGraph::EdgeList() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t i = 0; i < num_nodes_; ++i)
    for (std::size_t j : adjacency_.RowColumns(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

AttributedGraph AttributedGraph::WithFeatures(DenseMatrix features) const {
  Require(features.rows() == num_nodes_,
          "WithFeatures: row count must equal node count");
  AttributedGraph g = *this;
  g.features_ = std::move(features);
  return g;
}

AttributedGraph AttributedGraph::WithEdges(std::span<const Edge> edges) const {
  AttributedGraph g = *this;
  g.adjacency_ = SymmetricPattern(num_nodes_, CanonicalEdges(num_nodes_, edges));
  g.has_structure_ = true;
  return g;
}

NormalizedAdjacency NormalizeAdjacency(const AttributedGraph& g) {
  const std::size_t m = g.num_nodes();
  const auto degrees = g.Degrees();
  std::vector<std::size_t> row_ptr(m + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(g.adjacency().nnz() + m);
  values.reserve(g.adjacency().nnz() + m);
  for (std::size_t i = 0; i < m; ++i) {
    const double di = static_cast<double>(degrees[i] + 1);
    bool diagonal_done = false;
    auto emit = [&](std::size_t j) {
      const double dj = static_cast<double>(degrees[j] + 1);
      col_idx.push_back(j);
      // di * dj is commutative in floating point, so (i, j) and (j, i) agree
      // bit for bit.
      values.push_back(1.0 / std::sqrt(di * dj));
    };
    for (std::size_t j : g.adjacency().RowColumns(i)) {
      if (!diagonal_done && j > i) {
        emit(i);
        diagonal_done = true;
      }
      emit(j);
    }
    if (!diagonal_done) emit(i);
    row_ptr[i + 1] = col_idx.size();
  }
  return {CsrMatrix(m, m, std::move(row_ptr), std::move(col_idx),
                    std::move(values))};
}

NormalizedAdjacency IdentityAdjacency(std::size_t num_nodes) {
  return {CsrMatrix::Identity(num_nodes)};
}

AttributedGraph LoadDataset(const std::filesystem::path& dir) {
  const auto meta_path = dir / "meta.json";
  auto meta_in = OpenOrThrow(meta_path);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(meta_in);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(meta_path.string() + ": " + e.what());
  }
  std::size_t num_nodes = 0, num_features = 0;
  int num_classes = 0;
  try {
    num_nodes = meta.at("num_nodes").get<std::size_t>();
    num_features = meta.at("num_features").get<std::size_t>();
    num_classes = meta.at("num_classes").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(meta_path.string() + ": " + e.what());
  }

  std::vector<Edge> edges;
  const auto edges_path = dir / "edges.tsv";
  const bool has_structure = std::filesystem::exists(edges_path);
  if (has_structure) {
    auto in = OpenOrThrow(edges_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto body = Trim(line);
      if (body.empty()) continue;
      const auto split = body.find_first_of(" \t");
      std::size_t a = 0, b = 0;
      if (split == std::string_view::npos ||
          !ParseNumber(body.substr(0, split), a) ||
          !ParseNumber(body.substr(split + 1), b)) {
        throw ValidationError(LineRef(edges_path, line_no) +
                              ": expected two node indices");
      }
      if (a >= num_nodes || b >= num_nodes) {
        throw ValidationError(LineRef(edges_path, line_no) +
                              ": node index out of range [0, " +
                              std::to_string(num_nodes) + ")");
      }
      edges.emplace_back(a, b);
    }
  }

  const auto features_path = dir / "features.csv";
  DenseMatrix features(num_nodes, num_features);
  {
    auto in = OpenOrThrow(features_path);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
      if (Trim(line).empty()) continue;
      if (row >= num_nodes) {
        throw ValidationError(LineRef(features_path, row + 1) +
                              ": more rows than num_nodes");
      }
      std::string_view rest(line);
      for (std::size_t c = 0; c < num_features; ++c) {
        const auto comma = rest.find(',');
        const auto token = rest.substr(0, comma);
        if (!ParseNumber(token, features(row, c))) {
          throw ValidationError(LineRef(features_path, row + 1) +
                                ": bad value in column " + std::to_string(c));
        }
        if (comma == std::string_view::npos) {
          if (c + 1 != num_features) {
            throw ValidationError(LineRef(features_path, row + 1) +
                                  ": expected " + std::to_string(num_features) +
                                  " values");
          }
          rest = {};
        } else {
          rest.remove_prefix(comma + 1);
        }
      }
      if (!Trim(rest).empty()) {
        throw ValidationError(LineRef(features_path, row + 1) +
                              ": more than " + std::to_string(num_features) +
                              " values");
      }
      ++row;
    }
    if (row != num_nodes) {
      throw ValidationError(features_path.filename().string() + ": " +
                            std::to_string(row) + " rows, expected " +
                            std::to_string(num_nodes));
    }
  }

  std::optional<std::vector<int>> labels;
  const auto labels_path = dir / "labels.csv";
  if (std::filesystem::exists(labels_path)) {
    auto in = OpenOrThrow(labels_path);
    labels.emplace();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (Trim(line).empty()) continue;
      int y = 0;
      if (!ParseNumber(std::string_view(line), y)) {
        throw ValidationError(LineRef(labels_path, line_no) +
                              ": expected an integer label");
      }
      if (y < 0 || y >= num_classes) {
        throw ValidationError(LineRef(labels_path, line_no) + ": label " +
                              std::to_string(y) + " outside [0, " +
                              std::to_string(num_classes) + ")");
      }
      labels->push_back(y);
    }
    if (labels->size() != num_nodes) {
      throw ValidationError(labels_path.filename().string() + ": " +
                            std::to_string(labels->size()) +
                            " labels, expected " + std::to_string(num_nodes));
    }
  }

  return AttributedGraph::Create(num_nodes, edges, std::move(features),
                                 std::move(labels), num_classes,
                                 has_structure);
}

void SaveDataset(const AttributedGraph& g, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    nlohmann::json meta = {{"num_nodes", g.num_nodes()},
                           {"num_features", g.num_features()},
                           {"num_classes", g.num_classes()}};
    std::ofstream out(dir / "meta.json");
    out << meta.dump(2) << "\n";
  }
  if (g.has_structure()) {
    std::ofstream out(dir / "edges.tsv");
    for (const auto& [a, b] : g.EdgeList()) out << a << '\t' << b << '\n';
  }
  {
    std::ofstream out(dir / "features.csv");
    char buf[64];
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
      const auto row = g.features().row(i);
      for (std::size_t j = 0; j < row.size(); ++j) {
        const auto res = std::to_chars(buf, buf + sizeof(buf), row[j]);
        if (j) out << ',';
        out.write(buf, res.ptr - buf);
      }
      out << '\n';
    }
  }
  if (g.has_labels()) {
    std::ofstream out(dir / "labels.csv");
    for (int y : *g.labels()) out << y << '\n';
  }
}

std::vector<Edge> KnnEdges(const DenseMatrix& features, std::size_t k) {
  const std::size_t m = features.rows();
  Require(k >= 1 && k < m, "KnnEdges: need 1 <= k < num_nodes (k=" +
                               std::to_string(k) + ", m=" + std::to_string(m) +
                               ")");
  const RowDotEngine engine(features);
  std::vector<double> sims(m);
  std::vector<std::size_t> order(m);
  std::vector<Edge> edges;
  edges.reserve(m * k);
  for (std::size_t i = 0; i < m; ++i) {
    CosineRow(engine, i, sims);
    std::iota(order.begin(), order.end(), 0);
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(i));
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                      order.end(), [&](std::size_t a, std::size_t b) {
                        return sims[a] != sims[b] ? sims[a] > sims[b] : a < b;
                      });
    for (std::size_t t = 0; t < k; ++t) {
      edges.emplace_back(std::min(i, order[t]), std::max(i, order[t]));
    }
    order.resize(m);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

AttributedGraph BuildKnnGraph(const DenseMatrix& features, std::size_t k) {
  const auto edges = KnnEdges(features, k);
  return AttributedGraph::Create(features.rows(), edges, features, std::nullopt,
                                 0);
}

AttributedGraph WithKnnStructure(const AttributedGraph& g, std::size_t k) {
  return g.WithEdges(KnnEdges(g.features(), k));
}

std::vector<std::size_t> DrawPermutation(std::size_t m, Rng& rng) {
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

AttributedGraph Corrupt(const AttributedGraph& g, Rng& rng) {
  const auto perm = DrawPermutation(g.num_nodes(), rng);
  return g.WithFeatures(GatherRows(g.features(), perm));
}

AttributedGraph GenerateSbm(const SbmOptions& options, Rng& rng) {
  Require(options.num_blocks >= 1 && options.block_size >= 1,
          "GenerateSbm: empty block structure");
  const std::size_t m = options.num_blocks * options.block_size;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  DenseMatrix means(options.num_blocks, options.num_features);
  for (double& v : means.values()) v = options.mean_scale * normal(rng);

  std::vector<int> labels(m);
  for (std::size_t i = 0; i < m; ++i)
    labels[i] = static_cast<int>(i / options.block_size);

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double p = labels[i] == labels[j] ? options.p_in : options.p_out;
      if (unit(rng) < p) edges.emplace_back(i, j);
    }
  }

  DenseMatrix features(m, options.num_features);
  for (std::size_t i = 0; i < m; ++i) {
    const auto mu = means.row(static_cast<std::size_t>(labels[i]));
    auto row = features.row(i);
    for (std::size_t f = 0; f < row.size(); ++f)
      row[f] = mu[f] + options.noise * normal(rng);
  }
  return AttributedGraph::Create(m, edges, std::move(features),
                                 std::move(labels),
                                 static_cast<int>(options.num_blocks));
}

}  // namespace rsgnn
