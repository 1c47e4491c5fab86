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

#include "verify.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "lbw/common/errors.h"
#include "lbw/common/rng.h"
#include "lbw/netmodel/network.h"
#include "lbw/oracle/linear_oracle.h"
#include "lbw/oracle/logistic.h"
#include "lbw/oracle/modularity_check.h"
#include "lbw/oracle/neuron_oracle.h"
#include "lbw/oracle/surrogates.h"
#include "lbw/optim/gcd.h"
#include "lbw/optim/rsm.h"

namespace lbw::app {
namespace {

constexpr double kModularityTol = 1e-9;
constexpr double kBoundTol = 1e-9;
constexpr double kCacheTol = 1e-8;
constexpr double kAnchorTol = 1e-10;
constexpr double kGradRelTol = 1e-4;
constexpr double kRsmRatio = 0.48;

Matrix<double> RandomMatrix(size_t n, size_t d, double lo, double hi,
                            Rng& rng) {
  Matrix<double> m(n, d);
  for (auto& v : m.data()) v = lo + (hi - lo) * rng.Uniform();
  return m;
}

std::vector<double> RandomLabels(size_t n, Rng& rng) {
  std::vector<double> y(n);
  for (auto& v : y) v = rng.Bernoulli(0.5) ? 1.0 : -1.0;
  return y;
}

FeatureMatrix ToFloat(const Matrix<double>& m) {
  FeatureMatrix f(m.rows(), m.cols());
  for (size_t i = 0; i < m.data().size(); ++i) {
    f.data()[i] = static_cast<float>(m.data()[i]);
  }
  return f;
}

QuantLevels RandomLevels(Rng& rng) {
  const double alpha = -rng.Uniform();
  return QuantLevels::Make(alpha, alpha + 0.1 + rng.Uniform());
}

LinearOracle MakeOracle(const Matrix<double>& x, std::vector<double> y,
                        BinaryWeightVector start, OracleOptions options = {}) {
  return LinearOracle(std::make_shared<DenseColumns64>(x),
                      std::make_shared<const std::vector<double>>(std::move(y)),
                      std::move(start), {}, 1.0, options);
}

std::vector<double> Table(const SetFunctionOracle& oracle) {
  const int d = oracle.dimension();
  const auto levels = oracle.weights().levels();
  return EnumerateSetFunction(d, [&](uint64_t mask) {
    return oracle.Evaluate(BinaryWeightVector::FromMask(mask, d, levels));
  });
}

CheckResult Result(std::string name, bool ok, std::string detail,
                   nlohmann::json data = nlohmann::json::object()) {
  return {std::move(name), ok, std::move(detail), std::move(data)};
}

CheckResult LinearSupermodular(Rng& rng) {
  uint64_t violations = 0;
  uint64_t triples = 0;
  const int instances = 100;
  for (int k = 0; k < instances; ++k) {
    const int d = 2 + k % 5;
    const auto x = RandomMatrix(10, static_cast<size_t>(d), 0.0, 1.0, rng);
    const auto oracle = MakeOracle(
        x, RandomLabels(10, rng),
        BinaryWeightVector::Create(d, RandomLevels(rng), WeightInit::AllAlpha()));
    const auto r = CheckSupermodular(oracle, {ModularityKind::kSupermodular,
                                              kModularityTol, 4});
    violations += r.violation_count;
    triples += r.triples_checked;
  }
  std::ostringstream s;
  s << instances << " non-negative instances (d <= 6), " << triples
    << " triples, " << violations << " violations";
  return Result("supermodular_linear", violations == 0, s.str(),
                {{"violations", violations}, {"triples", triples}});
}

CheckResult NeuronSupermodular(SurrogateVariant variant, Rng& rng) {
  uint64_t violations = 0;
  const int instances = 60;
  for (int k = 0; k < instances; ++k) {
    const int d = 2 + k % 5;
    const size_t n = 8;
    const auto x = RandomMatrix(n, static_cast<size_t>(d), 0.0, 1.0, rng);
    auto q = std::make_shared<std::vector<double>>(n);
    auto c = std::make_shared<std::vector<double>>(n);
    for (size_t s = 0; s < n; ++s) {
      (*q)[s] = -2.0 + 4.0 * rng.Uniform();
      (*c)[s] = -2.0 + 4.0 * rng.Uniform();
    }
    NeuronProblem problem{std::make_shared<DenseColumns64>(x), 1, q, c,
                          {}, 1.0, ObjectiveFor(variant)};
    NeuronOracle oracle(problem, BinaryWeightVector::Create(
                                     d, RandomLevels(rng),
                                     WeightInit::AllAlpha()));
    violations += CheckSupermodular(oracle, {ModularityKind::kSupermodular,
                                             kModularityTol, 4})
                      .violation_count;
  }
  std::ostringstream s;
  s << instances << " single-neuron instances with mixed-sign output "
    << "coefficients, " << violations << " violations";
  return Result("supermodular_neuron_" + ToString(variant), violations == 0,
                s.str(), {{"violations", violations}});
}

CheckResult MixedSignViolation(Rng& rng) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    const auto x = RandomMatrix(6, 4, -1.0, 1.0, rng);
    const auto oracle = MakeOracle(
        x, RandomLabels(6, rng),
        BinaryWeightVector::Create(4, QuantLevels::Symmetric(1.0),
                                   WeightInit::AllAlpha()));
    const auto table = Table(oracle);
    const auto super = CheckModularity(
        table, 4, {ModularityKind::kSupermodular, kModularityTol, 1});
    const auto sub = CheckModularity(
        table, 4, {ModularityKind::kSubmodular, kModularityTol, 1});
    if (!super.ok() && !sub.ok()) {
      std::ostringstream s;
      s << "instance " << attempt << " violates both supermodularity ("
        << super.violation_count << " triples) and submodularity ("
        << sub.violation_count << " triples)";
      return Result("mixed_sign_violation", true, s.str(),
                    {{"supermodular", ToJson(super)},
                     {"submodular", ToJson(sub)}});
    }
  }
  return Result("mixed_sign_violation", false,
                "no mixed-sign instance violating both properties found");
}

CheckResult SurrogateBounds(Rng& rng) {
  uint64_t checked = 0;
  uint64_t violations = 0;
  double worst = 0.0;
  auto note = [&](double bound, double target) {
    ++checked;
    const double excess = target - bound;
    if (excess > kBoundTol) ++violations;
    worst = std::max(worst, excess);
  };

  for (int k = 0; k < 30; ++k) {
    const int d = 2 + k % 4;
    const size_t n = 6;
    const auto xd = RandomMatrix(n, static_cast<size_t>(d), -1.0, 1.0, rng);
    const auto x = ToFloat(xd);
    const auto y = RandomLabels(n, rng);
    const auto levels = RandomLevels(rng);
    for (uint64_t mask = 0; mask < (1ULL << d); ++mask) {
      const auto w = BinaryWeightVector::FromMask(mask, d, levels);
      const auto dense = w.Dense();
      std::vector<double> z(n, 0.0);
      for (size_t s = 0; s < n; ++s) {
        for (int i = 0; i < d; ++i) z[s] += dense[i] * x(s, i);
      }
      note(PosnegSurrogateLoss(w, x, y), ZeroOneLoss(z, y));
    }
    for (uint64_t m1 = 0; m1 < (1ULL << d); ++m1) {
      for (uint64_t m2 = 0; m2 < (1ULL << d); ++m2) {
        const auto w1 = BinaryWeightVector::FromMask(m1, d, QuantLevels::ZeroOne());
        const auto w2 = BinaryWeightVector::FromMask(m2, d, QuantLevels::ZeroOne());
        note(TernarySurrogateLoss(w1, w2, x, y), TernaryTrueLoss(w1, w2, x, y));
      }
    }
    for (int bits = 2; bits <= 3; ++bits) {
      auto m = MultiComponentWeight::Scheme(d, bits, 1.0, WeightInit::AllAlpha());
      for (int j = 0; j < bits; ++j) {
        m.mutable_component(j) = BinaryWeightVector::Create(
            d, QuantLevels::ZeroOne(), WeightInit::SeededRandom(rng.NextU64()));
      }
      note(MultibitSurrogateLoss(m, x, y), MultibitTrueLoss(m, x, y));
    }
  }

  for (int k = 0; k < 100; ++k) {
    const NeuronSubproblem sub{-0.01 - 3.0 * rng.Uniform(),
                               -3.0 + 6.0 * rng.Uniform()};
    for (int g = 0; g < 1000; ++g) {
      const double t = -10.0 + 20.0 * g / 999.0;
      const double exact = NeuronLoss(sub, t);
      note(NeuronSurrogate(sub, t, SurrogateVariant::kTangent), exact);
      note(NeuronSurrogate(sub, t, SurrogateVariant::kNoRelu), exact);
    }
  }
  std::ostringstream s;
  s << checked << " bound comparisons, " << violations
    << " violations, worst excess " << worst;
  return Result("surrogate_bounds", violations == 0, s.str(),
                {{"checked", checked}, {"violations", violations}});
}

CheckResult RsmApproximation(Rng& rng, int runs) {
  double worst_ratio = 1.0;
  nlohmann::json per_instance = nlohmann::json::array();
  for (int k = 0; k < 3; ++k) {
    const int d = 8;
    const auto x = RandomMatrix(12, d, 0.0, 1.0, rng);
    const auto levels = RandomLevels(rng);
    const auto proto = MakeOracle(
        x, RandomLabels(12, rng),
        BinaryWeightVector::Create(d, levels, WeightInit::AllAlpha()));
    const auto table = Table(proto);
    const double hi = *std::max_element(table.begin(), table.end());
    const double lo = *std::min_element(table.begin(), table.end());
    const auto factory = FactoryFrom(proto);
    double sum = 0.0;
    for (int r = 0; r < runs; ++r) {
      Rng run_rng(rng.NextU64());
      sum += Rsm(factory, levels, d, run_rng).value;
    }
    const double mean = sum / runs;
    const double ratio = hi > lo ? (hi - mean) / (hi - lo) : 1.0;
    worst_ratio = std::min(worst_ratio, ratio);
    per_instance.push_back({{"l_max", hi}, {"l_min", lo}, {"mean", mean},
                            {"ratio", ratio}});
  }
  std::ostringstream s;
  s << "worst mean gain ratio " << worst_ratio << " over " << runs
    << " runs per instance (need >= " << kRsmRatio << ")";
  return Result("rsm_half_approximation", worst_ratio >= kRsmRatio, s.str(),
                {{"instances", per_instance}});
}

CheckResult CacheConsistency(Rng& rng, bool inject_fault) {
  const int d = 16;
  const size_t n = 40;
  auto x = RandomMatrix(n, d, 0.0, 1.0, rng);
  for (auto& v : x.data()) {
    if (rng.Bernoulli(0.3)) v = 0.0;
  }
  OracleOptions options;
  options.inject_sign_fault = inject_fault;
  auto oracle = MakeOracle(
      x, RandomLabels(n, rng),
      BinaryWeightVector::Create(d, RandomLevels(rng),
                                 WeightInit::SeededRandom(rng.NextU64())),
      options);
  double margin_err = 0.0;
  double marginal_err = 0.0;
  for (int t = 1; t <= 10000; ++t) {
    const int i = static_cast<int>(rng.UniformIndex(d));
    if (t % 50 == 0) {
      const auto flipped = Flipped(oracle.weights(), i).weights;
      const double expected =
          oracle.Evaluate(flipped) - oracle.Evaluate(oracle.weights());
      marginal_err =
          std::max(marginal_err, std::abs(oracle.Marginal(i) - expected));
    }
    oracle.ApplyFlip(i);
    if (t % 50 == 0 || t == 10000) {
      const auto fresh = oracle.cache().MarginsFor(oracle.weights());
      const auto cached = oracle.cache().margins();
      for (size_t r = 0; r < n; ++r) {
        margin_err = std::max(margin_err, std::abs(fresh[r] - cached[r]));
      }
    }
  }
  std::ostringstream s;
  s << "10000 flips: max margin error " << margin_err
    << ", max marginal error " << marginal_err
    << (inject_fault ? " (sign fault injected)" : "");
  return Result("cache_consistency",
                margin_err <= kCacheTol && marginal_err <= kCacheTol, s.str(),
                {{"margin_error", margin_err},
                 {"marginal_error", marginal_err}});
}

CheckResult GcdMonotone(Rng& rng) {
  bool monotone = true;
  bool above_min = true;
  double max_gap = 0.0;
  double sum_gap = 0.0;
  const int instances = 20;
  for (int k = 0; k < instances; ++k) {
    const int d = 10;
    const auto x = RandomMatrix(30, d, -1.0, 1.0, rng);
    auto oracle = MakeOracle(
        x, RandomLabels(30, rng),
        BinaryWeightVector::Create(d, RandomLevels(rng),
                                   WeightInit::SeededRandom(rng.NextU64())));
    const auto table = Table(oracle);
    const double best = *std::min_element(table.begin(), table.end());
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    const auto r = Gcd(oracle, order, /*record_trace=*/true);
    double prev = r.initial_value;
    for (double v : r.trace) {
      if (v > prev) monotone = false;
      prev = v;
    }
    if (r.final_value < best - kModularityTol) above_min = false;
    const double gap = r.final_value - best;
    max_gap = std::max(max_gap, gap);
    sum_gap += gap;
  }
  std::ostringstream s;
  s << instances << " instances (d = 10): monotone " << (monotone ? "yes" : "no")
    << ", gap to optimum mean " << sum_gap / instances << " max " << max_gap;
  return Result("gcd_monotone", monotone && above_min, s.str(),
                {{"mean_gap", sum_gap / instances}, {"max_gap", max_gap}});
}

// f from the activations feeding layers()[start].
double ForwardFrom(const NetworkModel& model, size_t start,
                   std::vector<double> cur) {
  for (size_t j = start; j < model.layers().size(); ++j) {
    std::vector<double> out(
        static_cast<size_t>(model.layers()[j].out_size()));
    model.layers()[j].Apply(cur, out);
    cur.swap(out);
  }
  double f = model.output_bias();
  for (size_t j = 0; j < cur.size(); ++j) {
    f += model.output_weights()[j] * cur[j];
  }
  return f;
}

CheckResult LinearizationCheck(Rng& rng) {
  struct Case {
    Architecture arch;
    ImageShape input;
  };
  const std::vector<Case> cases = {
      {{"tiny_fc", {LayerConfig::Dense(6), LayerConfig::Dense(5),
                    LayerConfig::Dense(4)}},
       {1, 3, 3}},
      {{"tiny_conv", {LayerConfig::Conv(3, 3, 1, 1), LayerConfig::MaxPool(2),
                      LayerConfig::Dense(4)}},
       {1, 6, 6}},
  };
  double anchor_err = 0.0;
  double grad_err = 0.0;
  int compared = 0;
  const double h = 1e-6;
  for (const auto& c : cases) {
    for (int bits = 1; bits <= 2; ++bits) {
      auto model = NetworkModel::Create(c.arch, c.input, bits, rng.NextU64());
      std::vector<double> a(static_cast<size_t>(model.feature_size()));
      for (auto& v : a) v = -1.0 + 2.0 * rng.Uniform();
      model.set_output(a, -0.5 + rng.Uniform());
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> x(static_cast<size_t>(c.input.size()));
        for (auto& v : x) v = rng.Uniform();
        const double f = model.Forward(x);
        const auto acts = model.Trace(x);
        for (int q = 0; q < model.num_quantized(); ++q) {
          const auto lin = model.Linearize(x, q);
          anchor_err = std::max(
              anchor_err, std::abs(model.EvaluateLinearization(lin, x, q) - f));
          const size_t next = static_cast<size_t>(model.layer_index(q)) + 1;
          const auto& y = acts[next];
          for (size_t u = 0; u < y.size(); ++u) {
            auto up = y;
            auto down = y;
            up[u] += h;
            down[u] -= h;
            const double fwd = (ForwardFrom(model, next, up) - f) / h;
            const double bwd = (f - ForwardFrom(model, next, down)) / h;
            // One-sided slopes disagree at a kink above layer q.
            if (std::abs(fwd - bwd) > 1e-6 * std::max(1.0, std::abs(fwd))) {
              continue;
            }
            const double fd = 0.5 * (fwd + bwd);
            grad_err = std::max(grad_err, std::abs(fd - lin.a_hat[u]) /
                                              std::max(1.0, std::abs(fd)));
            ++compared;
          }
        }
      }
    }
  }
  std::ostringstream s;
  s << "anchor error " << anchor_err << ", max relative gradient error "
    << grad_err << " over " << compared << " coordinates";
  return Result("linearization",
                anchor_err <= kAnchorTol && grad_err <= kGradRelTol &&
                    compared > 0,
                s.str(),
                {{"anchor_error", anchor_err}, {"gradient_error", grad_err}});
}

CheckResult SizeRefusal() {
  try {
    EnumerateSetFunction(kMaxExhaustiveDimension + 1,
                         [](uint64_t) { return 0.0; });
  } catch (const SizeError& e) {
    return Result("exhaustive_size_refusal", true,
                  std::string("d = 14 refused: ") + e.what());
  }
  return Result("exhaustive_size_refusal", false,
                "d = 14 enumeration was not refused");
}

}  // namespace

CheckResult ExhaustiveSupermodularCheck(int d, uint64_t seed) {
  if (d < 1 || d > kMaxExhaustiveDimension) {
    throw SizeError("exhaustive checks support 1 <= d <= " +
                    std::to_string(kMaxExhaustiveDimension) + ", got " +
                    std::to_string(d));
  }
  Rng rng(seed);
  const auto x = RandomMatrix(10, static_cast<size_t>(d), 0.0, 1.0, rng);
  const auto oracle = MakeOracle(
      x, RandomLabels(10, rng),
      BinaryWeightVector::Create(d, RandomLevels(rng), WeightInit::AllAlpha()));
  const auto r = CheckSupermodular(oracle);
  std::ostringstream s;
  s << "d = " << d << ": " << r.triples_checked << " triples, "
    << r.violation_count << " violations";
  return Result("exhaustive_supermodular", r.ok(), s.str(), ToJson(r));
}

std::vector<CheckResult> RunVerifySuite(const VerifyOptions& options) {
  Rng rng(options.seed);
  std::vector<CheckResult> out;
  out.push_back(LinearSupermodular(rng));
  out.push_back(NeuronSupermodular(SurrogateVariant::kTangent, rng));
  out.push_back(NeuronSupermodular(SurrogateVariant::kNoRelu, rng));
  out.push_back(MixedSignViolation(rng));
  out.push_back(SurrogateBounds(rng));
  out.push_back(RsmApproximation(rng, options.rsm_runs));
  out.push_back(CacheConsistency(rng, options.inject_fault));
  out.push_back(GcdMonotone(rng));
  out.push_back(LinearizationCheck(rng));
  out.push_back(SizeRefusal());
  return out;
}

nlohmann::json ToJson(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.ok;
    checks.push_back({{"name", r.name},
                      {"ok", r.ok},
                      {"detail", r.detail},
                      {"data", r.data}});
  }
  return {{"ok", all}, {"checks", checks}};
}

}  // namespace lbw::app
