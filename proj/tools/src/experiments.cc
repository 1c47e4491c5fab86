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

#include "experiments.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lbw/common/errors.h"
#include "lbw/netmodel/architecture.h"
#include "lbw/netmodel/checkpoint.h"
#include "lbw/netmodel/network.h"
#include "lbw/oracle/logistic.h"
#include "lbw/optim/sag.h"
#include "lbw/optim/single_layer.h"
#include "lbw/optim/train.h"
#include "lbw/quantcore/weight_file.h"

namespace lbw::app {
namespace fs = std::filesystem;
namespace {

using Clock = std::chrono::steady_clock;

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PathError("cannot write " + path.string());
  out << text;
}

void WriteJson(const fs::path& path, const nlohmann::json& j) {
  WriteText(path, j.dump(2) + "\n");
}

std::string SeedDir(uint64_t seed) { return "seed_" + std::to_string(seed); }

std::string CsvLine(int sweep, double train_loss, double test_loss,
                    double test_acc, double seconds) {
  std::ostringstream s;
  s << std::setprecision(17) << sweep << ',' << train_loss << ',' << test_loss
    << ',' << test_acc << ',' << seconds << '\n';
  return s.str();
}

void WriteManifest(const RunConfig& cfg, const std::string& command,
                   const std::vector<std::string>& files) {
  WriteJson(fs::path(cfg.out) / "manifest.json",
            {{"command", command},
             {"config", ToJson(cfg)},
             {"config_hash", ConfigHash(cfg)},
             {"build_id", BuildId()},
             {"seeds", cfg.seeds},
             {"files", files}});
}

nlohmann::json SummaryJson(const std::vector<double>& values) {
  const auto s = Summarize(values);
  return {{"mean", s.mean}, {"std", s.std}};
}

// Aggregate document shared by all commands: per-seed metric objects and
// mean/std of every numeric metric.
nlohmann::json Aggregate(const std::string& command, const RunConfig& cfg,
                         const std::vector<nlohmann::json>& runs) {
  nlohmann::json summary = nlohmann::json::object();
  for (const char* key :
       {"train_loss", "train_acc", "test_loss", "test_acc"}) {
    std::vector<double> values;
    for (const auto& r : runs) values.push_back(r.at(key).get<double>());
    summary[key] = SummaryJson(values);
  }
  return {{"command", command},
          {"config_hash", ConfigHash(cfg)},
          {"runs", runs},
          {"summary", summary}};
}

void WriteTiming(const RunConfig& cfg, const std::vector<double>& seconds) {
  nlohmann::json per_seed = nlohmann::json::object();
  for (size_t i = 0; i < cfg.seeds.size(); ++i) {
    per_seed[std::to_string(cfg.seeds[i])] = seconds[i];
  }
  WriteJson(fs::path(cfg.out) / "timing.json",
            {{"seconds", per_seed}, {"summary", SummaryJson(seconds)}});
}

// Dense weights as a CSV grid of the input image (one line per image row,
// channels stacked), for plotting.
std::string WeightGridCsv(const std::vector<double>& w,
                          const ImageShape& shape) {
  std::ostringstream s;
  s << std::setprecision(17);
  const size_t width = static_cast<size_t>(shape.width);
  const bool grid = static_cast<size_t>(shape.size()) == w.size() && width > 0;
  const size_t per_line = grid ? width : w.size();
  for (size_t i = 0; i < w.size(); ++i) {
    s << w[i] << ((i + 1) % per_line == 0 ? '\n' : ',');
  }
  return s.str();
}

Method SingleMethod(const RunConfig& cfg) {
  switch (cfg.optimizer.plan) {
    case MethodPlan::kGcd:
      return Method::kGcd;
    case MethodPlan::kRsm:
      return Method::kRsm;
    case MethodPlan::kHybrid:
      break;
  }
  throw ConfigError("hybrid needs a multi-layer model; use gcd or rsm");
}

Architecture ResolveArchitecture(const std::string& spec) {
  for (const auto& name : BuiltinArchitectureNames()) {
    if (name == spec) return BuiltinArchitecture(name);
  }
  if (!fs::exists(spec)) {
    throw ConfigError("unknown architecture '" + spec +
                      "' (not a builtin name and no such file)");
  }
  std::ifstream in(spec);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("architecture file " + spec + ": " + e.what());
  }
  return ArchitectureFromJson(j);
}

struct LinearMetrics {
  double loss = 0.0;
  double acc = 0.0;
};

LinearMetrics EvaluateAffine(const std::vector<double>& w, double b,
                             const BinaryTask& task) {
  std::vector<double> z(task.n(), b);
  for (size_t s = 0; s < task.n(); ++s) {
    const auto row = task.features.row(s);
    for (size_t i = 0; i < w.size(); ++i) z[s] += w[i] * row[i];
  }
  if (task.n() == 0) return {};
  return {LogisticLoss(z, task.y) / static_cast<double>(task.n()),
          Accuracy(z, task.y)};
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream s(line);
  std::string cell;
  while (std::getline(s, cell, ',')) cells.push_back(cell);
  return cells;
}

std::string Pm(const Summary& s, double factor, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f ± %.*f", digits, s.mean * factor,
                digits, s.std * factor);
  return buf;
}

}  // namespace

TaskPair LoadTasks(const RunConfig& cfg) {
  cfg.Validate();
  const fs::path root = ResolveDataDir(cfg);
  Dataset train_ds;
  Dataset test_ds;
  if (cfg.task.dataset == "mnist") {
    const auto files = MnistFilesUnder(root);
    train_ds = LoadMnist(files.train_images, files.train_labels);
    test_ds = LoadMnist(files.test_images, files.test_labels);
  } else {
    if (!cfg.allow_cifar) {
      throw ConfigError(
          "CIFAR-10 runs take a long time; pass --allow-cifar (or set "
          "\"allow_cifar\": true) to run them");
    }
    const auto files = CifarFilesUnder(root);
    train_ds = LoadCifar10(files.train_batches);
    test_ds = LoadCifar10(files.test_batches);
  }
  TaskPair tasks{MakeBinaryTask(train_ds, cfg.task.positive, cfg.task.negative),
                 MakeBinaryTask(test_ds, cfg.task.positive, cfg.task.negative)};
  if (cfg.task.subsample < 1.0) {
    tasks.train =
        Subsample(tasks.train, cfg.task.subsample, cfg.task.subsample_seed);
  }
  return tasks;
}

Summary Summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return s;
}

nlohmann::json RunTrainSingle(const RunConfig& cfg, const TaskPair& tasks,
                              std::ostream& log) {
  cfg.Validate();
  const Method method = SingleMethod(cfg);
  fs::create_directories(cfg.out);
  std::vector<nlohmann::json> runs;
  std::vector<double> seconds;
  std::vector<std::string> files;
  for (uint64_t seed : cfg.seeds) {
    SingleLayerConfig sc;
    sc.bits = cfg.bits;
    sc.method = method;
    sc.level = cfg.level;
    sc.component_scale = cfg.component_scale;
    sc.n_iter = cfg.optimizer.n_iter;
    sc.order = cfg.optimizer.order;
    sc.seed = seed;
    const auto r = TrainSingleLayer(tasks.train, tasks.test, sc);

    const fs::path dir = fs::path(cfg.out) / SeedDir(seed);
    fs::create_directories(dir);
    WriteText(dir / "metrics.csv",
              std::string(kTrainCsvHeader) + "\n" +
                  CsvLine(sc.n_iter, r.train.mean_loss, r.test.mean_loss,
                          r.test.accuracy, r.seconds));
    WriteWeightFile(dir / "weights.lbwq", r.weights);
    WriteText(dir / "weights.csv",
              WeightGridCsv(r.weights.Compose(), tasks.train.shape));
    files.push_back(SeedDir(seed) + "/metrics.csv");
    files.push_back(SeedDir(seed) + "/weights.lbwq");
    files.push_back(SeedDir(seed) + "/weights.csv");

    runs.push_back({{"seed", seed},
                    {"train_loss", r.train.mean_loss},
                    {"train_acc", r.train.accuracy},
                    {"test_loss", r.test.mean_loss},
                    {"test_acc", r.test.accuracy},
                    {"marginal_calls", r.marginal_calls}});
    seconds.push_back(r.seconds);
    log << "seed " << seed << ": test acc " << 100.0 * r.test.accuracy
        << "%, test loss " << r.test.mean_loss << " (" << r.seconds << " s)"
        << std::endl;
  }
  auto agg = Aggregate("train-single", cfg, runs);
  WriteJson(fs::path(cfg.out) / "aggregate.json", agg);
  WriteTiming(cfg, seconds);
  WriteManifest(cfg, "train-single", files);
  return agg;
}

nlohmann::json RunBaselineSag(const RunConfig& cfg, const TaskPair& tasks,
                              std::ostream& log) {
  cfg.Validate();
  fs::create_directories(cfg.out);
  std::vector<nlohmann::json> runs;
  std::vector<double> seconds;
  std::vector<std::string> files;
  for (uint64_t seed : cfg.seeds) {
    const auto start = Clock::now();
    SagConfig sag = cfg.optimizer.sag;
    sag.seed = seed;
    const auto fit = Sag(tasks.train.features, tasks.train.y, sag);
    const double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    const auto tr = EvaluateAffine(fit.w, fit.intercept, tasks.train);
    const auto te = EvaluateAffine(fit.w, fit.intercept, tasks.test);

    const fs::path dir = fs::path(cfg.out) / SeedDir(seed);
    fs::create_directories(dir);
    WriteText(dir / "metrics.csv",
              std::string(kTrainCsvHeader) + "\n" +
                  CsvLine(sag.epochs, tr.loss, te.loss, te.acc, secs));
    WriteText(dir / "weights.csv", WeightGridCsv(fit.w, tasks.train.shape));
    files.push_back(SeedDir(seed) + "/metrics.csv");
    files.push_back(SeedDir(seed) + "/weights.csv");

    runs.push_back({{"seed", seed},
                    {"train_loss", tr.loss},
                    {"train_acc", tr.acc},
                    {"test_loss", te.loss},
                    {"test_acc", te.acc},
                    {"intercept", fit.intercept}});
    seconds.push_back(secs);
    log << "seed " << seed << ": test acc " << 100.0 * te.acc
        << "%, test loss " << te.loss << " (" << secs << " s)" << std::endl;
  }
  auto agg = Aggregate("baseline-sag", cfg, runs);
  WriteJson(fs::path(cfg.out) / "aggregate.json", agg);
  WriteTiming(cfg, seconds);
  WriteManifest(cfg, "baseline-sag", files);
  return agg;
}

nlohmann::json RunTrainMlp(const RunConfig& cfg, const TaskPair& tasks,
                           std::ostream& log) {
  cfg.Validate();
  const Architecture arch = ResolveArchitecture(cfg.architecture);
  fs::create_directories(cfg.out);
  std::vector<nlohmann::json> runs;
  std::vector<double> seconds;
  std::vector<std::string> files;
  for (uint64_t seed : cfg.seeds) {
    NetworkModel model =
        NetworkModel::Create(arch, tasks.train.shape, cfg.bits, seed);
    OptimizerConfig opt = cfg.optimizer;
    opt.seed = seed;
    TrainReport report = TrainNetwork(model, tasks.train, tasks.test, opt);

    const fs::path dir = fs::path(cfg.out) / SeedDir(seed);
    fs::create_directories(dir);
    SaveCheckpoint(model, dir / "model");
    report.weights_ref = SeedDir(seed) + "/model";
    std::ostringstream csv;
    csv << kTrainCsvHeader << '\n';
    AppendCsvRows(report, csv);
    WriteText(dir / "metrics.csv", csv.str());
    WriteJson(dir / "report.json", ToJson(report, /*include_timing=*/false));
    files.push_back(SeedDir(seed) + "/metrics.csv");
    files.push_back(SeedDir(seed) + "/report.json");
    files.push_back(report.weights_ref);

    double per_sweep = 0.0;
    for (size_t i = 1; i < report.sweeps.size(); ++i) {
      per_sweep += report.sweeps[i].seconds;
    }
    per_sweep /= static_cast<double>(report.sweeps.size() - 1);
    const auto& last = report.final_record();
    const auto train_eval = EvaluateNetwork(model, tasks.train);
    runs.push_back({{"seed", seed},
                    {"train_loss", last.train_loss},
                    {"train_acc", train_eval.accuracy},
                    {"test_loss", last.test_loss},
                    {"test_acc", last.test_acc},
                    {"layer_methods", report.layer_methods}});
    seconds.push_back(per_sweep);
    log << "seed " << seed << ": test acc " << 100.0 * last.test_acc
        << "%, test loss " << last.test_loss << " (" << per_sweep
        << " s/sweep)" << std::endl;
  }
  auto agg = Aggregate("train-mlp", cfg, runs);
  agg["architecture"] = ToJson(arch);
  WriteJson(fs::path(cfg.out) / "aggregate.json", agg);
  WriteTiming(cfg, seconds);
  WriteManifest(cfg, "train-mlp", files);
  return agg;
}

std::string ReportTable(const std::vector<std::string>& run_dirs) {
  std::ostringstream md;
  md << "| Run | Model | Method | Bits | Seeds | Acc. (%) | Loss | "
        "Time(s)/Iter |\n";
  md << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& run : run_dirs) {
    fs::path dir = fs::path(run).lexically_normal();
    if (dir.filename().empty()) dir = dir.parent_path();
    std::ifstream in(dir / "manifest.json");
    if (!in) throw PathError("no manifest.json under " + run);
    nlohmann::json manifest;
    in >> manifest;
    const auto cfg = RunConfigFromJson(manifest.at("config"), RunConfig{});
    const std::string command = manifest.at("command");

    std::vector<double> acc, loss, time;
    for (uint64_t seed : cfg.seeds) {
      std::ifstream csv(dir / SeedDir(seed) / "metrics.csv");
      if (!csv) throw PathError("missing metrics.csv for seed " +
                                std::to_string(seed) + " under " + run);
      std::string line;
      std::getline(csv, line);  // header
      std::vector<std::vector<std::string>> rows;
      while (std::getline(csv, line)) {
        if (!line.empty()) rows.push_back(SplitCsvLine(line));
      }
      if (rows.empty() || rows.back().size() != 5) {
        throw Error("malformed metrics.csv under " + run);
      }
      acc.push_back(std::stod(rows.back()[3]));
      loss.push_back(std::stod(rows.back()[2]));
      // Multi-sweep files start with the sweep-0 warm-up row.
      const size_t first = rows.size() > 1 ? 1 : 0;
      double t = 0.0;
      for (size_t i = first; i < rows.size(); ++i) t += std::stod(rows[i][4]);
      time.push_back(t / static_cast<double>(rows.size() - first));
    }
    std::string model = "linear";
    std::string method = ToString(cfg.optimizer.plan);
    if (command == "train-mlp") model = cfg.architecture;
    if (command == "baseline-sag") method = "sag";
    const std::string bits =
        command == "baseline-sag" ? "full" : std::to_string(cfg.bits);
    md << "| " << dir.filename().string() << " | " << model << " | " << method
       << " | " << bits << " | " << cfg.seeds.size() << " | "
       << Pm(Summarize(acc), 100.0, 1) << " | " << Pm(Summarize(loss), 1.0, 3)
       << " | " << Pm(Summarize(time), 1.0, 3) << " |\n";
  }
  return md.str();
}

}  // namespace lbw::app
