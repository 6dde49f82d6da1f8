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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsgnn/rsgnn_c.h"

namespace {

using nlohmann::json;

constexpr int kExitGradcheckFailed = 4;

// Nonzero status from the library, carried to main as an exit code.
struct Failure {
  int code;
};

void Check(rsgnn_status status) {
  if (status != RSGNN_OK) {
    std::cerr << "error: " << rsgnn_last_error() << "\n";
    throw Failure{static_cast<int>(status)};
  }
}

std::string TakeString(char* s) {
  std::string out(s == nullptr ? "" : s);
  rsgnn_string_free(s);
  return out;
}

struct DatasetHandle {
  explicit DatasetHandle(const std::string& dir) {
    Check(rsgnn_dataset_load(dir.c_str(), &ptr));
  }
  ~DatasetHandle() { rsgnn_dataset_free(ptr); }
  DatasetHandle(const DatasetHandle&) = delete;
  DatasetHandle& operator=(const DatasetHandle&) = delete;
  rsgnn_dataset* ptr = nullptr;
};

json ReadConfig(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open config file " << path << "\n";
    throw Failure{RSGNN_ERR_VALIDATION};
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    std::cerr << "error: config " << path << ": " << e.what() << "\n";
    throw Failure{RSGNN_ERR_VALIDATION};
  }
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    throw Failure{RSGNN_ERR_VALIDATION};
  }
  out << text;
}

// Appends rows, writing the header only when the file is new or empty.
void AppendCsv(const std::string& path, const json& result) {
  namespace fs = std::filesystem;
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    throw Failure{RSGNN_ERR_VALIDATION};
  }
  if (fresh) out << result.at("csv_header").get<std::string>() << "\n";
  for (const auto& row : result.at("csv_rows")) {
    out << row.get<std::string>() << "\n";
  }
}

// Flags shared by the commands that train or select. Values land in the
// options JSON only when given, so they override the config file.
struct ModelFlags {
  std::string k;
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  bool knn_mode = false;
  std::size_t knn_k = 15;
  std::string context;
  std::string classifier;
  std::string precision;
  std::size_t embed_dim = 0;
  double lambda = 0.0;
  std::size_t epochs = 0;
  double lr = 0.0;
  std::string norm;
  std::string train_mode;

  std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> setters;

  template <typename T>
  void Add(CLI::App* app, const std::string& flag, T& value,
           const std::string& help, std::function<void(json&)> set) {
    setters.emplace_back(app->add_option(flag, value, help), std::move(set));
  }

  void Register(CLI::App* app, bool with_k, bool with_runs) {
    if (with_k) {
      Add(app, "--k", k, "Budget: an integer or a multiple of c such as 2c",
          [this](json& j) { j["k"] = k; });
    }
    Add(app, "--seed", seed, "Seed (base seed for multi-run commands)",
        [this](json& j) { j["seed"] = seed; });
    if (with_runs) {
      Add(app, "--runs", runs, "Number of seeded runs",
          [this](json& j) { j["runs"] = runs; });
    }
    setters.emplace_back(
        app->add_flag("--knn-mode", knn_mode,
                      "Replace the edges by a cosine kNN graph of the features"),
        [this](json& j) { j["knn_mode"] = knn_mode; });
    Add(app, "--knn-k", knn_k, "Neighbours per node in kNN mode",
        [this](json& j) { j["knn_k"] = knn_k; });
    Add(app, "--context", context, "Baseline context: features or dgi",
        [this](json& j) { j["context"] = context; });
    Add(app, "--classifier", classifier, "Classifier mode: graph, knn_graph, mlp",
        [this](json& j) { j["classifier"] = classifier; });
    Add(app, "--precision", precision, "Numeric precision (f64 only)",
        [this](json& j) { j["precision"] = precision; });
    Add(app, "--embed-dim", embed_dim, "RS-GNN embedding width",
        [this](json& j) { j["rsgnn"]["embed_dim"] = embed_dim; });
    Add(app, "--lambda", lambda, "Selection loss weight",
        [this](json& j) { j["rsgnn"]["lambda"] = lambda; });
    Add(app, "--epochs", epochs, "RS-GNN training epochs",
        [this](json& j) { j["rsgnn"]["epochs"] = epochs; });
    Add(app, "--lr", lr, "RS-GNN learning rate",
        [this](json& j) { j["rsgnn"]["lr"] = lr; });
    Add(app, "--norm", norm, "center_norm, const_norm or no_norm",
        [this](json& j) { j["rsgnn"]["norm"] = norm; });
    Add(app, "--train-mode", train_mode, "joint or two_stage",
        [this](json& j) { j["rsgnn"]["mode"] = train_mode; });
  }

  void Apply(json& j) const {
    for (const auto& [opt, set] : setters) {
      if (opt->count() > 0) set(j);
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representative node selection for attributed graphs"};
  app.require_subcommand(1);

  std::string dataset, out, csv_out, config, selector, reps_path, summary_path;
  std::string selectors_csv, instance_dir, generate_spec;
  std::size_t threads = 0;
  std::size_t fon_k = 0, fon_runs = 1;
  std::uint64_t fon_seed = 0;
  bool corrupt_gradient = false;

  auto* select = app.add_subcommand("select", "Select representatives");
  select->add_option("--dataset", dataset, "Dataset directory")->required();
  select->add_option("--selector", selector, "Selector name")->required();
  select->add_option("--out", out, "Output JSON file")->required();
  select->add_option("--config", config, "JSON config file");
  ModelFlags select_flags;
  select_flags.Register(select, true, false);

  auto* eval = app.add_subcommand("eval", "Train the classifier on selected labels");
  eval->add_option("--dataset", dataset, "Dataset directory")->required();
  eval->add_option("--reps", reps_path, "Representative set JSON")->required();
  eval->add_option("--out", csv_out, "Results CSV (appended)")
      ->default_val("results.csv");
  eval->add_option("--config", config, "JSON config file");
  ModelFlags eval_flags;
  eval_flags.Register(eval, false, true);

  auto* bench = app.add_subcommand("bench", "Compare selectors over seeded runs");
  bench->add_option("--dataset", dataset, "Dataset directory")->required();
  auto* bench_selectors = bench->add_option(
      "--selectors", selectors_csv, "Comma-separated selector names");
  bench->add_option("--out", csv_out, "Results CSV (appended)")
      ->default_val("results.csv");
  bench->add_option("--summary", summary_path, "Summary JSON file");
  auto* bench_threads =
      bench->add_option("--threads", threads, "Worker threads (0 = all cores)");
  bench->add_option("--config", config, "JSON config file");
  ModelFlags bench_flags;
  bench_flags.Register(bench, true, true);

  auto* fon = app.add_subcommand("fon", "Fit-or-Not gap experiment");
  fon->add_option("--instance", instance_dir, "Instance directory")->required();
  fon->add_option("--generate", generate_spec,
                  "Write a generated instance to --instance first (JSON spec)");
  auto* fon_k_opt = fon->add_option("--k", fon_k, "Budget");
  auto* fon_runs_opt = fon->add_option("--runs", fon_runs, "Runs for stochastic selectors");
  auto* fon_seed_opt = fon->add_option("--seed", fon_seed, "Base seed");
  auto* fon_selectors = fon->add_option("--selectors", selectors_csv,
                                        "Comma-separated selector names");
  fon->add_option("--out", out, "Gap report JSON (stdout if omitted)");
  fon->add_option("--config", config, "JSON config file");

  auto* grad = app.add_subcommand("gradcheck", "Finite-difference gradient check");
  std::uint64_t grad_seed = 0;
  auto* grad_seed_opt = grad->add_option("--seed", grad_seed, "Seed");
  grad->add_flag("--corrupt-gradient", corrupt_gradient,
                 "Perturb the analytic gradient (checks the checker)");
  grad->add_option("--out", out, "Report JSON (stdout if omitted)");
  grad->add_option("--config", config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : RSGNN_ERR_VALIDATION;
  }

  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) parts.push_back(item);
    }
    return parts;
  };

  try {
    json options = ReadConfig(config);
    if (select->parsed()) {
      select_flags.Apply(options);
      DatasetHandle ds(dataset);
      char* reps = nullptr;
      Check(rsgnn_select(ds.ptr, selector.c_str(), options.dump().c_str(), &reps));
      const std::string text = TakeString(reps);
      WriteFile(out, json::parse(text).dump(2) + "\n");
      std::cout << text << "\n";
    } else if (eval->parsed()) {
      eval_flags.Apply(options);
      DatasetHandle ds(dataset);
      std::ifstream in(reps_path);
      if (!in) {
        std::cerr << "error: cannot open " << reps_path << "\n";
        return RSGNN_ERR_VALIDATION;
      }
      const std::string reps((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
      char* result = nullptr;
      Check(rsgnn_evaluate(ds.ptr, reps.c_str(), options.dump().c_str(), &result));
      const json j = json::parse(TakeString(result));
      AppendCsv(csv_out, j);
      for (const auto& row : j.at("csv_rows")) {
        std::cout << row.get<std::string>() << "\n";
      }
    } else if (bench->parsed()) {
      bench_flags.Apply(options);
      if (bench_selectors->count() > 0) options["selectors"] = split(selectors_csv);
      if (bench_threads->count() > 0) options["threads"] = threads;
      DatasetHandle ds(dataset);
      char* result = nullptr;
      Check(rsgnn_bench(ds.ptr, options.dump().c_str(), &result));
      const json j = json::parse(TakeString(result));
      AppendCsv(csv_out, j);
      json summary = {{"k", j.at("k")}, {"summaries", j.at("summaries")}};
      if (!summary_path.empty()) WriteFile(summary_path, summary.dump(2) + "\n");
      std::printf("%-14s %8s %8s %8s %8s %s\n", "selector", "acc", "sd",
                  "cover", "nmi", "winner");
      for (const auto& s : j.at("summaries")) {
        std::printf("%-14s %8.4f %8.4f %8.4f %8s %s\n",
                    s.at("selector").get<std::string>().c_str(),
                    s.at("accuracy_mean").get<double>(),
                    s.at("accuracy_sd").get<double>(),
                    s.at("label_coverage").get<double>(),
                    s.at("nmi").is_null()
                        ? "-"
                        : std::to_string(s.at("nmi").get<double>()).substr(0, 6).c_str(),
                    s.at("winner").get<bool>() ? "*" : "");
      }
    } else if (fon->parsed()) {
      if (!generate_spec.empty()) {
        Check(rsgnn_fon_generate(generate_spec.c_str(), instance_dir.c_str()));
      }
      if (fon_k_opt->count() > 0) options["k"] = fon_k;
      if (fon_runs_opt->count() > 0) options["runs"] = fon_runs;
      if (fon_seed_opt->count() > 0) options["seed"] = fon_seed;
      if (fon_selectors->count() > 0) options["selectors"] = split(selectors_csv);
      if (!generate_spec.empty() && !options.contains("k")) return 0;
      char* report = nullptr;
      Check(rsgnn_fon_gap(instance_dir.c_str(), options.dump().c_str(), &report));
      const std::string text = json::parse(TakeString(report)).dump(2) + "\n";
      if (out.empty()) {
        std::cout << text;
      } else {
        WriteFile(out, text);
      }
    } else if (grad->parsed()) {
      if (grad_seed_opt->count() > 0) options["seed"] = grad_seed;
      if (corrupt_gradient) options["corrupt_gradient"] = true;
      char* report = nullptr;
      int passed = 0;
      Check(rsgnn_gradcheck(options.dump().c_str(), &report, &passed));
      const std::string text = json::parse(TakeString(report)).dump(2) + "\n";
      if (out.empty()) {
        std::cout << text;
      } else {
        WriteFile(out, text);
      }
      std::cerr << (passed ? "gradcheck passed" : "gradcheck FAILED") << "\n";
      return passed ? 0 : kExitGradcheckFailed;
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return RSGNN_ERR_INTERNAL;
  }
  return 0;
}
