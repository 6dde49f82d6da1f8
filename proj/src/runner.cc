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

#include "rsgnn/runner.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rsgnn/error.h"
#include "rsgnn/metrics.h"

namespace rsgnn {
namespace {

using nlohmann::json;

void RejectUnknownKeys(const json& j, std::string_view where,
                       std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    throw ValidationError(std::string(where) + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(std::string(where) + ": unknown option '" + key +
                            "'");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("option '") + key + "': " + e.what());
  }
}

void ParseRsgnn(const json& j, RsgnnConfig& cfg) {
  RejectUnknownKeys(j, "rsgnn",
                    {"embed_dim", "lambda", "epochs", "lr", "norm", "mode"});
  Read(j, "embed_dim", cfg.embed_dim);
  Read(j, "lambda", cfg.lambda);
  Read(j, "epochs", cfg.epochs);
  Read(j, "lr", cfg.learning_rate);
  if (j.contains("norm")) cfg.norm = ParseNormMode(j.at("norm").get<std::string>());
  if (j.contains("mode")) cfg.mode = ParseTrainMode(j.at("mode").get<std::string>());
}

void ParseSelector(const json& j, SelectorConfig& cfg) {
  RejectUnknownKeys(j, "selector",
                    {"rbf_gamma", "candidate_knn", "max_iters", "first_pick"});
  Read(j, "rbf_gamma", cfg.rbf_gamma);
  Read(j, "candidate_knn", cfg.candidate_knn);
  Read(j, "max_iters", cfg.max_iters);
  if (j.contains("first_pick") && !j.at("first_pick").is_null()) {
    cfg.first_pick = j.at("first_pick").get<std::size_t>();
  }
}

void ParseEval(const json& j, EvalConfig& cfg) {
  RejectUnknownKeys(j, "eval",
                    {"hidden", "dropout", "weight_decay", "val_size",
                     "max_epochs", "patience", "lr", "knn_k"});
  Read(j, "hidden", cfg.hidden_dim);
  Read(j, "dropout", cfg.dropout);
  Read(j, "weight_decay", cfg.weight_decay);
  Read(j, "val_size", cfg.val_size);
  Read(j, "max_epochs", cfg.max_epochs);
  Read(j, "patience", cfg.patience);
  Read(j, "lr", cfg.learning_rate);
  Read(j, "knn_k", cfg.knn_k);
}

bool IsKnownSelector(std::string_view name) {
  return name == "rsgnn" || ParseSelectorKind(name).has_value();
}

// Index of the closest row of `centers` to `x`, lowest index on ties.
int NearestCenter(const DenseMatrix& centers, std::span<const double> x) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.rows(); ++c) {
    const double d = SquaredDistance(centers.row(c), x);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

std::vector<int> NearestAssignment(const DenseMatrix& ctx,
                                   const std::vector<int>& nodes) {
  std::vector<std::size_t> rows(nodes.begin(), nodes.end());
  const DenseMatrix centers = GatherRows(ctx, rows);
  std::vector<int> out(ctx.rows());
  for (std::size_t i = 0; i < ctx.rows(); ++i) {
    out[i] = NearestCenter(centers, ctx.row(i));
  }
  return out;
}

double WelchPValue(const std::vector<double>& a, const std::vector<double>& b) {
  try {
    return WelchTTest(a, b);
  } catch (const ValidationError&) {
    // Two constant samples with different values: separated without doubt.
    return 0.0;
  }
}

}  // namespace

RunOptions ParseRunOptions(const json& j) {
  RunOptions opts;
  if (j.is_null()) return opts;
  RejectUnknownKeys(j, "options",
                    {"k", "seed", "runs", "selectors", "selector_names",
                     "knn_mode", "knn_k", "context", "classifier", "threads",
                     "precision", "rsgnn", "selector", "eval"});
  if (j.contains("k")) {
    const json& k = j.at("k");
    if (k.is_number_unsigned() || k.is_number_integer()) {
      const long long v = k.get<long long>();
      if (v < 1) throw ValidationError("k must be >= 1");
      opts.k = std::to_string(v);
    } else if (k.is_string()) {
      opts.k = k.get<std::string>();
    } else {
      throw ValidationError("k must be an integer or a string like \"2c\"");
    }
  }
  Read(j, "seed", opts.seed);
  Read(j, "runs", opts.runs);
  if (opts.runs < 1) throw ValidationError("runs must be >= 1");
  if (j.contains("selectors")) {
    const json& s = j.at("selectors");
    if (s.is_string()) {
      opts.selectors = {s.get<std::string>()};
    } else {
      Read(j, "selectors", opts.selectors);
    }
  }
  for (const std::string& name : opts.selectors) {
    if (!IsKnownSelector(name)) {
      throw ValidationError("unknown selector '" + name + "'");
    }
  }
  Read(j, "knn_mode", opts.knn_mode);
  Read(j, "knn_k", opts.knn_k);
  if (j.contains("context")) {
    const std::string c = j.at("context").get<std::string>();
    if (c == "features") {
      opts.context = ContextKind::kFeatures;
    } else if (c == "dgi") {
      opts.context = ContextKind::kDgi;
    } else {
      throw ValidationError("context must be 'features' or 'dgi', got '" + c +
                            "'");
    }
  }
  if (j.contains("classifier") && !j.at("classifier").is_null()) {
    opts.classifier =
        ParseClassifierMode(j.at("classifier").get<std::string>());
  }
  Read(j, "threads", opts.threads);
  if (j.contains("precision")) {
    const std::string p = j.at("precision").get<std::string>();
    if (p != "f64") {
      throw ValidationError("precision '" + p +
                            "' is not supported; only f64 is implemented");
    }
  }
  // Smaller embeddings on kNN-built graphs unless the caller says otherwise.
  const bool dim_given = j.contains("rsgnn") && j.at("rsgnn").contains("embed_dim");
  if (opts.knn_mode && !dim_given) opts.rsgnn.embed_dim = 128;
  if (j.contains("rsgnn")) ParseRsgnn(j.at("rsgnn"), opts.rsgnn);
  if (j.contains("selector")) ParseSelector(j.at("selector"), opts.selector);
  if (j.contains("eval")) ParseEval(j.at("eval"), opts.eval);
  return opts;
}

std::size_t ResolveBudget(std::string_view spec, int num_classes) {
  auto fail = [&] {
    return ValidationError("cannot parse budget '" + std::string(spec) +
                           "'; expected an integer or a multiple of c");
  };
  if (spec.empty()) throw fail();
  std::size_t k = 0;
  if (spec.back() == 'c') {
    std::string_view mult = spec.substr(0, spec.size() - 1);
    std::size_t factor = 1;
    if (!mult.empty()) {
      auto [p, ec] = std::from_chars(mult.data(), mult.data() + mult.size(), factor);
      if (ec != std::errc() || p != mult.data() + mult.size()) throw fail();
    }
    if (num_classes <= 0) {
      throw ValidationError("budget '" + std::string(spec) +
                            "' needs a dataset with num_classes > 0");
    }
    k = factor * static_cast<std::size_t>(num_classes);
  } else {
    auto [p, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), k);
    if (ec != std::errc() || p != spec.data() + spec.size()) throw fail();
  }
  if (k < 1) throw ValidationError("budget resolves to k=0");
  return k;
}

AttributedGraph PrepareGraph(const AttributedGraph& g, const RunOptions& opts) {
  if (!opts.knn_mode) return g;
  return WithKnnStructure(g, opts.knn_k);
}

SelectionOutcome RunSelect(const AttributedGraph& prepared,
                           const RunOptions& opts, std::string_view selector,
                           std::size_t k, std::uint64_t seed) {
  const std::size_t m = prepared.num_nodes();
  if (k < 1 || k > m) {
    throw ValidationError("budget k=" + std::to_string(k) +
                          " is infeasible for " + std::to_string(m) + " nodes");
  }
  SelectionOutcome out;
  if (selector == "rsgnn") {
    RsgnnConfig cfg = opts.rsgnn;
    cfg.k = k;
    Rng rng(seed);
    const TrainedState state = Train(prepared, cfg, rng);
    out.reps = ExtractRepresentatives(state, k);
    out.reps.seed = seed;
    out.clusters = AssignClusters(state, out.reps);
    return out;
  }
  const auto kind = ParseSelectorKind(selector);
  if (!kind) {
    throw ValidationError("unknown selector '" + std::string(selector) + "'");
  }
  SelectorConfig cfg = opts.selector;
  cfg.kind = *kind;
  cfg.k = k;
  cfg.seed = seed;
  if (RequiresGraph(*kind) && !prepared.has_structure()) {
    throw ValidationError("selector requires graph");
  }
  DenseMatrix ctx;
  if (opts.context == ContextKind::kDgi) {
    RsgnnConfig dgi = opts.rsgnn;
    dgi.k = k;
    Rng rng(seed);
    ctx = DgiEmbeddings(prepared, NormalizeAdjacency(prepared), dgi, rng);
  } else {
    ctx = prepared.features();
  }
  out.reps = RunSelector(cfg, prepared, ctx);
  out.clusters = NearestAssignment(ctx, out.reps.nodes);
  return out;
}

EvalConfig ResolveEvalConfig(const AttributedGraph& prepared,
                             const RunOptions& opts) {
  EvalConfig cfg = opts.eval;
  if (opts.classifier) {
    cfg.mode = *opts.classifier;
  } else {
    cfg.mode = prepared.has_structure() ? ClassifierMode::kGraph
                                        : ClassifierMode::kKnnGraph;
  }
  if (cfg.mode == ClassifierMode::kGraph && !prepared.has_structure()) {
    throw ValidationError("classifier mode 'graph' requires graph");
  }
  return cfg;
}

EvalRecord RunEval(const AttributedGraph& prepared, const RepresentativeSet& reps,
                   const RunOptions& opts, std::uint64_t seed) {
  if (!prepared.has_labels()) {
    throw ValidationError("evaluation needs labels (labels.csv is missing)");
  }
  if (!IsValidSelection(reps.nodes, prepared.num_nodes())) {
    throw ValidationError("representative set is not a valid selection of " +
                          std::to_string(prepared.num_nodes()) + " nodes");
  }
  const EvalConfig cfg = ResolveEvalConfig(prepared, opts);
  return EvaluateSelection(prepared, ClassifierAdjacency(prepared, cfg), reps,
                           cfg, seed);
}

std::vector<bool> WinnerFlags(const std::vector<std::vector<double>>& samples,
                              double alpha) {
  std::vector<bool> flags(samples.size(), false);
  if (samples.size() < 2) return flags;
  std::size_t best = 0;
  for (std::size_t s = 1; s < samples.size(); ++s) {
    if (Mean(samples[s]) > Mean(samples[best])) best = s;
  }
  bool any_worse = false;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    if (s == best) {
      flags[s] = true;
      continue;
    }
    const double p = WelchPValue(samples[best], samples[s]);
    if (p < alpha) {
      any_worse = true;
    } else {
      flags[s] = true;
    }
  }
  if (!any_worse) std::fill(flags.begin(), flags.end(), false);
  return flags;
}

BenchResult RunBench(const AttributedGraph& g, const RunOptions& opts) {
  if (opts.selectors.size() < 2) {
    throw ValidationError("bench needs at least two selectors");
  }
  if (opts.runs < 2) throw ValidationError("bench needs runs >= 2");
  if (!g.has_labels()) {
    throw ValidationError("bench needs labels (labels.csv is missing)");
  }
  const AttributedGraph prepared = PrepareGraph(g, opts);
  BenchResult result;
  result.k = ResolveBudget(opts.k, g.num_classes());
  const EvalConfig eval_cfg = ResolveEvalConfig(prepared, opts);
  const NormalizedAdjacency eval_adj = ClassifierAdjacency(prepared, eval_cfg);

  const std::size_t num_tasks = opts.selectors.size() * opts.runs;
  std::vector<EvalRecord> records(num_tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= num_tasks) return;
      {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (failure) return;
      }
      try {
        const std::string& name = opts.selectors[t / opts.runs];
        const std::uint64_t seed = opts.seed + t % opts.runs;
        const SelectionOutcome sel = RunSelect(prepared, opts, name, result.k, seed);
        EvalRecord rec =
            EvaluateSelection(prepared, eval_adj, sel.reps, eval_cfg, seed);
        rec.selector = name;
        rec.nmi = Nmi(sel.clusters, *prepared.labels());
        records[t] = std::move(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::size_t threads = opts.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, num_tasks);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<std::vector<double>> accuracies;
  for (std::size_t s = 0; s < opts.selectors.size(); ++s) {
    std::vector<EvalRecord> mine(records.begin() + s * opts.runs,
                                 records.begin() + (s + 1) * opts.runs);
    BenchSummary summary;
    summary.report = Summarize(mine);
    summary.report.selector = opts.selectors[s];
    std::vector<double> acc;
    for (const EvalRecord& r : mine) acc.push_back(r.accuracy);
    accuracies.push_back(std::move(acc));
    result.summaries.push_back(std::move(summary));
  }
  const std::vector<bool> flags = WinnerFlags(accuracies);
  for (std::size_t s = 0; s < flags.size(); ++s) {
    result.summaries[s].winner = flags[s];
  }
  result.records = std::move(records);
  return result;
}

json ToJson(const BenchResult& result) {
  json summaries = json::array();
  for (const BenchSummary& s : result.summaries) {
    json j = {{"selector", s.report.selector},
              {"k", s.report.k},
              {"runs", s.report.records.size()},
              {"accuracy_mean", s.report.accuracy},
              {"accuracy_sd", s.report.accuracy_sd},
              {"normalized_accuracy", s.report.normalized_accuracy},
              {"label_coverage", s.report.label_coverage},
              {"winner", s.winner}};
    j["nmi"] = s.report.nmi ? json(*s.report.nmi) : json(nullptr);
    summaries.push_back(std::move(j));
  }
  return {{"k", result.k}, {"summaries", std::move(summaries)}};
}

GapReport RunFon(const FonInstance& inst, const json& options) {
  const json j = options.is_null() ? json::object() : options;
  RejectUnknownKeys(j, "fon",
                    {"k", "runs", "seed", "selectors", "rsgnn", "selector"});
  std::size_t k = 0;
  Read(j, "k", k);
  if (k < 1) throw ValidationError("fon: k must be >= 1");
  GapOptions gap;
  Read(j, "runs", gap.runs);
  Read(j, "seed", gap.seed);
  if (gap.runs < 1) throw ValidationError("fon: runs must be >= 1");
  if (j.contains("rsgnn")) ParseRsgnn(j.at("rsgnn"), gap.rsgnn);
  if (j.contains("selector")) ParseSelector(j.at("selector"), gap.selector);
  std::vector<std::string> selectors = {
      "brute_force", "forest", "random",       "popular",     "kmeans",
      "kmedoid",     "ffs",    "maxcover_rbf", "maxcover_cos"};
  Read(j, "selectors", selectors);
  for (const std::string& name : selectors) {
    if (name != "brute_force" && name != "forest" && !IsKnownSelector(name)) {
      throw ValidationError("unknown selector '" + name + "'");
    }
  }
  if (k > inst.num_points()) {
    throw ValidationError("budget k=" + std::to_string(k) +
                          " is infeasible for " +
                          std::to_string(inst.num_points()) + " points");
  }
  return GapExperiment(inst, k, selectors, gap);
}

GradcheckResult RunGradcheck(const json& options) {
  const json j = options.is_null() ? json::object() : options;
  RejectUnknownKeys(j, "gradcheck",
                    {"seed", "nodes", "features", "embed_dim", "k", "lambda",
                     "norm", "edge_prob", "epsilon", "tolerance",
                     "corrupt_gradient"});
  std::uint64_t seed = 0;
  std::size_t nodes = 20, features = 8, embed_dim = 6, k = 3;
  double lambda = 0.5, edge_prob = 0.2, epsilon = 1e-6;
  bool corrupt = false;
  std::string norm = "center_norm";
  GradcheckResult result;
  Read(j, "seed", seed);
  Read(j, "nodes", nodes);
  Read(j, "features", features);
  Read(j, "embed_dim", embed_dim);
  Read(j, "k", k);
  Read(j, "lambda", lambda);
  Read(j, "norm", norm);
  Read(j, "edge_prob", edge_prob);
  Read(j, "epsilon", epsilon);
  Read(j, "tolerance", result.tolerance);
  Read(j, "corrupt_gradient", corrupt);
  if (nodes < 2 || features < 1 || embed_dim < 1 || k < 1 || k > nodes) {
    throw ValidationError("gradcheck: invalid problem size");
  }

  Rng rng(seed);
  std::bernoulli_distribution coin(edge_prob);
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < nodes; ++a) {
    for (std::size_t b = a + 1; b < nodes; ++b) {
      if (coin(rng)) edges.emplace_back(a, b);
    }
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  DenseMatrix x(nodes, features);
  for (double& v : x.values()) v = gauss(rng);
  const AttributedGraph g =
      AttributedGraph::Create(nodes, edges, std::move(x), std::nullopt, 0);
  const NormalizedAdjacency adj = NormalizeAdjacency(g);
  const RsgnnParams params = RsgnnParams::Initialize(features, embed_dim, k, rng);
  const std::vector<std::size_t> perm = DrawPermutation(nodes, rng);
  const JointObjective objective(g, adj, ParseNormMode(norm), lambda);

  const auto eval = objective.Evaluate(params, perm, true);
  std::vector<DenseMatrix> analytic = {eval.grad.gcn_weight, eval.grad.disc_weight,
                                       eval.grad.rep_embed};
  if (corrupt) analytic[0].values()[0] += 1e-2;
  const std::vector<std::string> names = {"theta", "U", "R"};
  const ScalarLoss loss = [&](std::span<const DenseMatrix> p) {
    const RsgnnParams trial{p[0], p[1], p[2]};
    return objective.Evaluate(trial, perm, false).total;
  };
  result.report = GradCheck(
      loss, {params.gcn_weight, params.disc_weight, params.rep_embed}, analytic,
      names, epsilon);
  result.passed = result.report.Passed(result.tolerance);
  return result;
}

json ToJson(const GradcheckResult& result) {
  json blocks = json::array();
  for (const GradCheckBlock& b : result.report.blocks) {
    blocks.push_back({{"name", b.name},
                      {"max_relative_error", b.max_relative_error},
                      {"worst_index", b.worst_index}});
  }
  return {{"blocks", std::move(blocks)},
          {"max_relative_error", result.report.MaxRelativeError()},
          {"tolerance", result.tolerance},
          {"passed", result.passed}};
}

}  // namespace rsgnn
