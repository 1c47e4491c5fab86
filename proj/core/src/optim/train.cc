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

#include "lbw/optim/train.h"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <memory>

#include "lbw/common/errors.h"
#include "lbw/oracle/logistic.h"
#include "lbw/oracle/margin_cache.h"
#include "lbw/oracle/neuron_oracle.h"
#include "lbw/optim/gcd.h"
#include "lbw/optim/rsm.h"
#include "lbw/optim/sag.h"

namespace lbw {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::shared_ptr<const ColumnSource> LayerColumns(const Layer& layer,
                                                 const Matrix<double>& input) {
  if (layer.config.kind == LayerKind::kConv) {
    return std::make_shared<ConvColumns>(input, layer.geometry);
  }
  return std::make_shared<DenseColumns64>(input);
}

// Output scores a . features + b for every row of `features`.
std::vector<double> Scores(const NetworkModel& model,
                           const Matrix<double>& features) {
  const auto& a = model.output_weights();
  std::vector<double> f(features.rows(), model.output_bias());
  for (size_t s = 0; s < features.rows(); ++s) {
    const auto row = features.row(s);
    for (size_t j = 0; j < a.size(); ++j) f[s] += a[j] * row[j];
  }
  return f;
}

}  // namespace

NetworkEval EvaluateNetwork(const NetworkModel& model, const BinaryTask& task) {
  NetworkEval e;
  if (task.n() == 0) return e;
  const auto f = model.Outputs(task.features);
  e.mean_loss = LogisticLoss(f, task.y) / static_cast<double>(task.n());
  e.accuracy = Accuracy(f, task.y);
  return e;
}

LayerStats TrainLayer(NetworkModel& model, const BinaryTask& train,
                      const BatchTrace& trace, int q, Method method,
                      const OptimizerConfig& cfg, Rng& rng) {
  const size_t li = static_cast<size_t>(model.layer_index(q));
  const Layer& layer = model.layers()[li];
  const size_t n = train.n();
  const int units = layer.units();
  const size_t positions = static_cast<size_t>(layer.positions());
  const int d = layer.fan_in();
  if (trace.activations.size() != model.layers().size() + 1 ||
      trace.activations[li].rows() != n) {
    throw ShapeError("trace does not match the model and task");
  }

  // a_hat per sample over this layer's outputs, and the running f_hat.
  Matrix<double> a_hat(n, static_cast<size_t>(layer.out_size()));
  std::vector<std::span<const double>> views(trace.activations.size());
  for (size_t s = 0; s < n; ++s) {
    for (size_t i = 0; i < views.size(); ++i) {
      views[i] = trace.activations[i].row(s);
    }
    const auto g = model.GradWrtActivation(views, q);
    std::copy(g.begin(), g.end(), a_hat.row(s).begin());
  }
  std::vector<double> f_hat = trace.outputs;
  Matrix<double> out = trace.activations[li + 1];

  const auto columns = LayerColumns(layer, trace.activations[li]);
  const NeuronObjective objective = method == Method::kGcd
                                        ? NeuronObjective::kExact
                                        : ObjectiveFor(cfg.surrogate);
  const double inv_n = 1.0 / static_cast<double>(n);
  LayerStats stats;

  for (int k = 0; k < units; ++k) {
    const size_t base = static_cast<size_t>(k) * positions;
    auto qv = std::make_shared<std::vector<double>>(n * positions);
    auto cv = std::make_shared<std::vector<double>>(n);
    for (size_t s = 0; s < n; ++s) {
      double own = 0.0;
      for (size_t p = 0; p < positions; ++p) {
        const double ah = a_hat(s, base + p);
        (*qv)[s * positions + p] = -train.y[s] * ah;
        own += ah * out(s, base + p);
      }
      (*cv)[s] = -train.y[s] * (f_hat[s] - own);
    }

    MultiComponentWeight row = model.row(q, k);
    const int parts = row.num_components();
    const double bias = layer.bias[static_cast<size_t>(k)];
    std::vector<std::vector<double>> part_margins(static_cast<size_t>(parts));
    for (int j = 0; j < parts; ++j) {
      part_margins[static_cast<size_t>(j)] = MarginsOf(
          *columns, row.component(j), {}, row.ComponentCoefficient(j));
    }

    for (int j = 0; j < parts; ++j) {
      std::vector<double> offset(n * positions, bias);
      for (int other = 0; other < parts; ++other) {
        if (other == j) continue;
        const auto& z = part_margins[static_cast<size_t>(other)];
        for (size_t r = 0; r < offset.size(); ++r) offset[r] += z[r];
      }
      const double coef = row.ComponentCoefficient(j);
      NeuronProblem problem{columns, static_cast<int>(positions), qv, cv,
                            offset, coef, objective};
      const auto seq = CoordinateSequence(d, cfg.order, rng.NextU64());

      double before = 0.0;
      double after = 0.0;
      BinaryWeightVector candidate = row.component(j);
      std::vector<double> t_new;
      if (method == Method::kGcd) {
        NeuronOracle oracle(problem, row.component(j));
        const auto pass = Gcd(oracle, seq);
        before = pass.initial_value;
        after = pass.final_value;
        candidate = oracle.weights();
        const auto t = oracle.pre_activations();
        t_new.assign(t.begin(), t.end());
      } else {
        NeuronOracle prototype(problem, row.component(j));
        auto draw = Rsm(FactoryFrom(prototype), row.component(j).levels(), d,
                        seq, rng);
        before = prototype.Value();
        after = draw.value;
        candidate = std::move(draw.weights);
        t_new = MarginsOf(*columns, candidate, offset, coef);
      }

      ++stats.updates;
      const double diff = (after - before) * inv_n;
      if (cfg.accept_reject && diff > 0.0 &&
          rng.Uniform() < 1.0 - Sigmoid(diff / cfg.temperature)) {
        ++stats.reverted;
        continue;
      }
      stats.objective_change += diff;

      for (size_t s = 0; s < n; ++s) {
        double shift = 0.0;
        for (size_t p = 0; p < positions; ++p) {
          const double y_new = std::max(0.0, t_new[s * positions + p]);
          double& y_old = out(s, base + p);
          shift += a_hat(s, base + p) * (y_new - y_old);
          y_old = y_new;
        }
        f_hat[s] += shift;
      }
      auto& own = part_margins[static_cast<size_t>(j)];
      for (size_t r = 0; r < own.size(); ++r) own[r] = t_new[r] - offset[r];
      row.mutable_component(j) = std::move(candidate);
    }
    model.SetRow(q, k, std::move(row));
  }
  return stats;
}

void FitOutputLayer(NetworkModel& model, const Matrix<double>& features,
                    std::span<const double> y, const SagConfig& sag) {
  const auto fit = Sag(features, y, sag, model.output_weights(),
                       model.output_bias());
  model.set_output(fit.w, fit.intercept);
}

nlohmann::json ToJson(const TrainReport& report, bool include_timing) {
  nlohmann::json sweeps = nlohmann::json::array();
  for (const auto& r : report.sweeps) {
    nlohmann::json j = {{"sweep", r.sweep},
                        {"train_loss", r.train_loss},
                        {"test_loss", r.test_loss},
                        {"test_acc", r.test_acc},
                        {"updates", r.updates},
                        {"reverted", r.reverted}};
    if (include_timing) j["seconds"] = r.seconds;
    sweeps.push_back(std::move(j));
  }
  return {{"seed", report.seed},
          {"weights", report.weights_ref},
          {"layer_methods", report.layer_methods},
          {"sweeps", std::move(sweeps)}};
}

void AppendCsvRows(const TrainReport& report, std::ostream& out) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  for (const auto& r : report.sweeps) {
    out << r.sweep << ',' << r.train_loss << ',' << r.test_loss << ','
        << r.test_acc << ',' << r.seconds << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

TrainReport TrainNetwork(NetworkModel& model, const BinaryTask& train,
                         const BinaryTask& test, const OptimizerConfig& cfg) {
  cfg.Validate();
  const int num_layers = model.num_quantized();
  if (num_layers < 1) throw ConfigError("model has no quantized layer");
  if (train.d() != static_cast<size_t>(model.input_size()) ||
      test.d() != static_cast<size_t>(model.input_size())) {
    throw ShapeError("task features do not match the model input");
  }
  const auto methods = ResolveMethods(cfg.plan, num_layers);
  Rng rng = Rng::Derive(cfg.seed, 0xA1);
  uint64_t sag_calls = 0;
  auto sag_for_call = [&] {
    SagConfig s = cfg.sag;
    s.seed = Rng::SplitMix(cfg.sag.seed ^ Rng::SplitMix(cfg.seed + sag_calls));
    ++sag_calls;
    return s;
  };

  TrainReport report;
  report.seed = cfg.seed;
  for (Method m : methods) report.layer_methods.push_back(ToString(m));

  auto record = [&](int sweep, double seconds, const LayerStats& st) {
    const auto tr = EvaluateNetwork(model, train);
    const auto te = EvaluateNetwork(model, test);
    report.sweeps.push_back({sweep, tr.mean_loss, te.mean_loss, te.accuracy,
                             seconds, st.updates, st.reverted});
  };

  auto start = Clock::now();
  BatchTrace trace = model.ForwardBatch(train.features);
  FitOutputLayer(model, trace.activations.back(), train.y, sag_for_call());
  trace.outputs = Scores(model, trace.activations.back());
  record(0, SecondsSince(start), {});

  for (int sweep = 1; sweep <= cfg.n_iter; ++sweep) {
    start = Clock::now();
    LayerStats total;
    for (int q = 0; q < num_layers; ++q) {
      const auto st = TrainLayer(model, train, trace, q,
                                 methods[static_cast<size_t>(q)], cfg, rng);
      total.updates += st.updates;
      total.reverted += st.reverted;
      trace = model.ForwardBatch(train.features);
      FitOutputLayer(model, trace.activations.back(), train.y,
                     sag_for_call());
      // Activations do not depend on the output weights; only scores do.
      trace.outputs = Scores(model, trace.activations.back());
    }
    record(sweep, SecondsSince(start), total);
  }
  return report;
}

TrainReport TrainTwoLayer(NetworkModel& model, const BinaryTask& train,
                          const BinaryTask& test, const OptimizerConfig& cfg) {
  if (model.num_quantized() != 1) {
    throw ConfigError("two-layer training needs exactly one quantized layer");
  }
  return TrainNetwork(model, train, test, cfg);
}

}  // namespace lbw
