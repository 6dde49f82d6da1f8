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

#include "rsgnn/rsgnn_c.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rsgnn/error.h"
#include "rsgnn/eval.h"
#include "rsgnn/fon.h"
#include "rsgnn/graph.h"
#include "rsgnn/representative_set.h"
#include "rsgnn/runner.h"

struct rsgnn_dataset {
  rsgnn::AttributedGraph graph;
};

namespace {

using nlohmann::json;

thread_local std::string last_error;

json ParseJson(const char* text, const char* what) {
  if (text == nullptr || *text == '\0') return json::object();
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw rsgnn::ValidationError(std::string(what) + " is not valid JSON: " +
                                 e.what());
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
rsgnn_status Guard(F&& body) {
  try {
    last_error.clear();
    body();
    return RSGNN_OK;
  } catch (const rsgnn::Error& e) {
    last_error = e.what();
    return static_cast<rsgnn_status>(static_cast<int>(e.code()));
  } catch (const json::exception& e) {
    last_error = std::string("invalid option value: ") + e.what();
    return RSGNN_ERR_VALIDATION;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RSGNN_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return RSGNN_ERR_INTERNAL;
  }
}

void RequireArg(bool ok, const char* message) {
  if (!ok) throw rsgnn::ContractError(message);
}

json RecordsJson(const std::vector<rsgnn::EvalRecord>& records) {
  json list = json::array();
  json rows = json::array();
  for (const rsgnn::EvalRecord& r : records) {
    json j = {{"selector", r.selector},
              {"seed", r.seed},
              {"k", r.k},
              {"accuracy", r.accuracy},
              {"coverage", r.coverage}};
    j["nmi"] = r.nmi ? json(*r.nmi) : json(nullptr);
    list.push_back(std::move(j));
    rows.push_back(rsgnn::ToCsvRow(r));
  }
  return {{"records", std::move(list)},
          {"csv_header", std::string(rsgnn::kResultsHeader)},
          {"csv_rows", std::move(rows)}};
}

rsgnn::FonInstance GenerateInstance(const json& spec) {
  const std::string mode = spec.value("mode", std::string("planted"));
  rsgnn::Rng rng(spec.value("seed", std::uint64_t{0}));
  if (mode == "planted") {
    return rsgnn::PlantedCliqueFon(spec.value("num_cliques", std::size_t{2}),
                                   spec.value("clique_size", std::size_t{5}),
                                   spec.value("cross_pairs", std::size_t{10}),
                                   rng);
  }
  if (mode == "random_pairs") {
    return rsgnn::GenerateRandomFon(spec.at("n").get<std::size_t>(),
                                    spec.at("m").get<std::size_t>(), rng);
  }
  if (mode == "from_graph") {
    const auto edges = spec.at("edges").get<std::vector<rsgnn::Edge>>();
    return rsgnn::FonFromGraph(spec.at("n").get<std::size_t>(), edges, rng);
  }
  throw rsgnn::ValidationError("unknown instance mode '" + mode + "'");
}

}  // namespace

extern "C" {

rsgnn_status rsgnn_dataset_load(const char* dir, rsgnn_dataset** out) {
  return Guard([&] {
    RequireArg(dir != nullptr && out != nullptr,
               "rsgnn_dataset_load: null argument");
    *out = nullptr;
    auto ds = std::make_unique<rsgnn_dataset>();
    ds->graph = rsgnn::LoadDataset(dir);
    *out = ds.release();
  });
}

void rsgnn_dataset_free(rsgnn_dataset* dataset) { delete dataset; }

size_t rsgnn_dataset_num_nodes(const rsgnn_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->graph.num_nodes();
}

int rsgnn_dataset_num_classes(const rsgnn_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->graph.num_classes();
}

rsgnn_status rsgnn_resolve_budget(const char* spec, int num_classes, size_t* k) {
  return Guard([&] {
    RequireArg(spec != nullptr && k != nullptr,
               "rsgnn_resolve_budget: null argument");
    *k = rsgnn::ResolveBudget(spec, num_classes);
  });
}

rsgnn_status rsgnn_select(const rsgnn_dataset* dataset, const char* selector,
                          const char* options_json, char** reps_json) {
  return Guard([&] {
    RequireArg(dataset != nullptr && selector != nullptr && reps_json != nullptr,
               "rsgnn_select: null argument");
    *reps_json = nullptr;
    const rsgnn::RunOptions opts =
        rsgnn::ParseRunOptions(ParseJson(options_json, "options"));
    const rsgnn::AttributedGraph prepared =
        rsgnn::PrepareGraph(dataset->graph, opts);
    const std::size_t k =
        rsgnn::ResolveBudget(opts.k, dataset->graph.num_classes());
    const rsgnn::SelectionOutcome out =
        rsgnn::RunSelect(prepared, opts, selector, k, opts.seed);
    *reps_json = CopyString(rsgnn::ToJson(out.reps).dump());
  });
}

rsgnn_status rsgnn_evaluate(const rsgnn_dataset* dataset, const char* reps_json,
                            const char* options_json, char** result_json) {
  return Guard([&] {
    RequireArg(dataset != nullptr && reps_json != nullptr &&
                   result_json != nullptr,
               "rsgnn_evaluate: null argument");
    *result_json = nullptr;
    const rsgnn::RunOptions opts =
        rsgnn::ParseRunOptions(ParseJson(options_json, "options"));
    const rsgnn::RepresentativeSet reps =
        rsgnn::RepresentativeSetFromJson(ParseJson(reps_json, "representatives"));
    const rsgnn::AttributedGraph prepared =
        rsgnn::PrepareGraph(dataset->graph, opts);
    std::vector<rsgnn::EvalRecord> records;
    for (std::size_t r = 0; r < opts.runs; ++r) {
      records.push_back(rsgnn::RunEval(prepared, reps, opts, opts.seed + r));
    }
    *result_json = CopyString(RecordsJson(records).dump());
  });
}

rsgnn_status rsgnn_bench(const rsgnn_dataset* dataset, const char* options_json,
                         char** result_json) {
  return Guard([&] {
    RequireArg(dataset != nullptr && result_json != nullptr,
               "rsgnn_bench: null argument");
    *result_json = nullptr;
    const rsgnn::RunOptions opts =
        rsgnn::ParseRunOptions(ParseJson(options_json, "options"));
    const rsgnn::BenchResult result = rsgnn::RunBench(dataset->graph, opts);
    json j = RecordsJson(result.records);
    j.update(rsgnn::ToJson(result));
    *result_json = CopyString(j.dump());
  });
}

rsgnn_status rsgnn_fon_generate(const char* spec_json, const char* out_dir) {
  return Guard([&] {
    RequireArg(out_dir != nullptr, "rsgnn_fon_generate: null output directory");
    const rsgnn::FonInstance inst =
        GenerateInstance(ParseJson(spec_json, "instance spec"));
    rsgnn::SaveDataset(rsgnn::FonToGraph(inst), out_dir);
  });
}

rsgnn_status rsgnn_fon_gap(const char* dataset_dir, const char* options_json,
                           char** report_json) {
  return Guard([&] {
    RequireArg(dataset_dir != nullptr && report_json != nullptr,
               "rsgnn_fon_gap: null argument");
    *report_json = nullptr;
    const rsgnn::FonInstance inst =
        rsgnn::FonFromDataset(rsgnn::LoadDataset(dataset_dir));
    const rsgnn::GapReport report =
        rsgnn::RunFon(inst, ParseJson(options_json, "options"));
    *report_json = CopyString(rsgnn::ToJson(report).dump());
  });
}

rsgnn_status rsgnn_gradcheck(const char* options_json, char** report_json,
                             int* passed) {
  return Guard([&] {
    RequireArg(report_json != nullptr && passed != nullptr,
               "rsgnn_gradcheck: null argument");
    *report_json = nullptr;
    const rsgnn::GradcheckResult result =
        rsgnn::RunGradcheck(ParseJson(options_json, "options"));
    *passed = result.passed ? 1 : 0;
    *report_json = CopyString(rsgnn::ToJson(result).dump());
  });
}

const char* rsgnn_last_error(void) { return last_error.c_str(); }

void rsgnn_string_free(char* s) { std::free(s); }

}  // extern "C"
