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

#include "psm/experiment.h"

#include <chrono>
#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

#include "json_util.h"
#include "psm/baselines.h"
#include "psm/block_greedy.h"
#include "psm/instance.h"
#include "psm/multilinear.h"
#include "psm/random.h"

namespace psm {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;
constexpr int kMaxOptElements = 20;
constexpr int64_t kReportSamples = 1000;
constexpr uint64_t kRoundingStream = 31;
constexpr uint64_t kReportStream = 32;

struct NamedAlgorithm {
  Algorithm algorithm;
  const char* name;
};

constexpr NamedAlgorithm kAlgorithms[] = {
    {Algorithm::kSequential, "sequential"},
    {Algorithm::kBlockGreedy, "block_greedy"},
    {Algorithm::kAmplifyMonotone, "amplify_monotone"},
    {Algorithm::kAmplifyNonnegative, "amplify_nonnegative"},
    {Algorithm::kBetaScaled, "beta_scaled"},
};

json PhasesToJson(const std::map<std::string, PhaseStats>& phases) {
  json out = json::object();
  for (const auto& [name, stats] : phases) {
    out[name] = {{"rounds", stats.rounds},
                 {"f_calls", stats.f_calls},
                 {"matroid_calls", stats.matroid_calls}};
  }
  return out;
}

json TraceToJson(const BlockGreedyResult& r) {
  json trace = json::array();
  for (const TraceEntry& e : r.trace) {
    trace.push_back({{"threshold", e.threshold},
                     {"lambda", e.lambda},
                     {"residual", e.residual},
                     {"delta", e.delta},
                     {"sampled", e.sampled},
                     {"selected", e.selected},
                     {"rounds", e.rounds}});
  }
  return {{"lambda_max", r.lambda_max},
          {"lambda_min", r.lambda_min},
          {"thresholds", r.schedule.size()},
          {"greedy_sample_calls", r.greedy_sample_calls},
          {"blocks", r.blocks.size()},
          {"boundary_rounds", r.boundary_rounds},
          {"rounds", r.rounds},
          {"trace", trace}};
}

json InnerSummary(const std::vector<BlockGreedyResult>& inner) {
  json out = json::array();
  for (const BlockGreedyResult& r : inner) {
    out.push_back({{"selected", r.I.size()},
                   {"greedy_sample_calls", r.greedy_sample_calls},
                   {"rounds", r.rounds}});
  }
  return out;
}

struct Stat {
  double mean = 0.0;
  double se = 0.0;
};

Stat Summarize(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                     static_cast<double>(xs.size()));
  }
  return s;
}

void CheckCompatible(const ExperimentConfig& config,
                     const SubmodularOracle& f) {
  switch (config.algorithm) {
    case Algorithm::kAmplifyMonotone:
      if (!f.is_monotone()) {
        throw IncompatibleError(
            "amplify_monotone requires a monotone function, but '" + f.name() +
            "' is not monotone; use amplify_nonnegative");
      }
      break;
    case Algorithm::kAmplifyNonnegative:
    case Algorithm::kBetaScaled:
      if (!f.is_nonnegative()) {
        throw IncompatibleError(std::string(AlgorithmName(config.algorithm)) +
                                " requires a nonnegative function");
      }
      break;
    default:
      break;
  }
}

}  // namespace

Repetition RunRepetition(const ExperimentConfig& config, const SystemPtr& m,
                         const OraclePtr& f, uint64_t seed, int workers) {
  CheckCompatible(config, *f);
  Repetition rep;
  rep.seed = seed;
  AmplifyConfig amplify = config.amplify;
  amplify.estimator = config.estimator;
  Engine engine(workers);
  const auto start = std::chrono::steady_clock::now();
  switch (config.algorithm) {
    case Algorithm::kSequential: {
      GreedyRun run = SequentialGreedy(*m, *f, engine);
      rep.value = f->Eval(run.S);
      rep.detail = {{"solution", run.S}, {"steps", run.steps}};
      break;
    }
    case Algorithm::kBlockGreedy: {
      BlockGreedyOptions bg;
      bg.estimator = config.estimator;
      BlockGreedyResult r = BlockGreedy(m, f, config.eps, bg, seed, engine);
      rep.value = f->Eval(r.I);
      rep.detail = TraceToJson(r);
      rep.detail["solution"] = r.I;
      break;
    }
    case Algorithm::kAmplifyMonotone: {
      MonotoneAmplification r =
          AmplifyMonotone(m, f, config.eps, amplify, seed, engine);
      Engine side(1);
      SampleBudget report_budget;
      report_budget.m = std::max(kReportSamples, config.amplify.budget.m);
      double fractional = MultilinearEstimate(
          *f, r.solution.x, report_budget, DeriveSeed(seed, kReportStream), side);
      rep.detail = {{"fractional_value", fractional},
                    {"opt_estimate", r.opt_estimate},
                    {"x", std::vector<double>(r.solution.x.values().begin(),
                                              r.solution.x.values().end())},
                    {"inner", InnerSummary(r.inner)}};
      if (m->is_matroid()) {
        ElementSet rounded =
            SwapRound(*m, r.solution, DeriveSeed(seed, kRoundingStream));
        rep.value = f->Eval(rounded);
        rep.detail["solution"] = rounded;
      } else {
        rep.value = fractional;
      }
      break;
    }
    case Algorithm::kAmplifyNonnegative: {
      NonnegativeAmplification r =
          AmplifyNonnegative(m, f, config.eps, amplify, seed, engine);
      const int ell = config.amplify.ell == 0 ? DefaultEll(config.eps)
                                              : config.amplify.ell;
      SampleUnionResult u = SampleUnion(r.sets, config.amplify.alpha, ell,
                                        DeriveSeed(seed, kRoundingStream),
                                        m.get());
      rep.value = f->Eval(u.J);
      rep.feasible = u.independent.value_or(true);
      rep.detail = {{"solution", u.J},
                    {"opt_estimate", r.opt_estimate},
                    {"inner", InnerSummary(r.inner)}};
      break;
    }
    case Algorithm::kBetaScaled: {
      const int p = config.p > 0 ? config.p : m->p();
      BetaScaledResult r =
          BetaScaledSolve(m, f, p, config.eps, amplify, seed, engine);
      rep.value = f->Eval(r.J);
      rep.detail = TraceToJson(r.inner);
      rep.detail["solution"] = r.J;
      rep.detail["beta"] = r.constants.beta;
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();
  rep.wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  rep.rounds = engine.meter().rounds();
  rep.f_calls = engine.meter().f_calls();
  rep.matroid_calls = engine.meter().matroid_calls();
  rep.phases = engine.meter().phases();
  return rep;
}

const char* AlgorithmName(Algorithm a) {
  for (const auto& entry : kAlgorithms) {
    if (entry.algorithm == a) return entry.name;
  }
  return "unknown";
}

Algorithm ParseAlgorithm(const std::string& name) {
  for (const auto& entry : kAlgorithms) {
    if (name == entry.name) return entry.algorithm;
  }
  throw ConfigError("unknown algorithm '" + name + "'");
}

std::string FormatDouble(double v) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

ExperimentConfig ParseExperimentConfig(const json& j) {
  RequireObject(j, "experiment config");
  CheckKeys(j,
            {"name", "matroid", "function", "algorithm", "eps", "seed", "reps",
             "estimator", "amplify", "p"},
            "experiment config");
  ExperimentConfig config;
  if (j.contains("name")) config.name = GetString(j, "name");
  config.matroid = ParseMatroidSpec(Get(j, "matroid"));
  config.function = ParseFunctionSpec(Get(j, "function"));
  config.algorithm = ParseAlgorithm(GetString(j, "algorithm"));
  config.eps = GetDouble(j, "eps");
  if (!(config.eps > 0.0 && config.eps < 0.5)) {
    throw ConfigError("eps must lie in (0, 1/2)");
  }
  config.seed = GetUint64(j, "seed");
  config.reps = GetInt(j, "reps");
  if (config.reps < 1) throw ConfigError("reps must be >= 1");
  if (j.contains("p")) {
    config.p = GetInt(j, "p");
    if (config.p < 1) throw ConfigError("p must be >= 1");
  }
  if (j.contains("estimator")) {
    const json& e = j["estimator"];
    RequireObject(e, "estimator");
    CheckKeys(e,
              {"chernoff_c", "chernoff_d", "fail_poly_exp", "grid_constant",
               "max_samples"},
              "estimator");
    EstimatorConfig& cfg = config.estimator;
    if (e.contains("chernoff_c")) cfg.chernoff_c = GetDouble(e, "chernoff_c");
    if (e.contains("chernoff_d")) cfg.chernoff_d = GetDouble(e, "chernoff_d");
    if (e.contains("fail_poly_exp")) {
      cfg.fail_poly_exp = GetInt(e, "fail_poly_exp");
    }
    if (e.contains("grid_constant")) {
      cfg.grid_constant = GetDouble(e, "grid_constant");
    }
    if (e.contains("max_samples")) {
      cfg.max_samples = static_cast<int64_t>(GetUint64(e, "max_samples"));
    }
    cfg.Validate();
  }
  if (j.contains("amplify")) {
    const json& a = j["amplify"];
    RequireObject(a, "amplify");
    CheckKeys(a, {"ell", "samples", "alpha"}, "amplify");
    if (a.contains("ell")) {
      config.amplify.ell = GetInt(a, "ell");
      if (config.amplify.ell < 1) throw ConfigError("amplify.ell must be >= 1");
    }
    if (a.contains("samples")) {
      config.amplify.budget.m = static_cast<int64_t>(GetUint64(a, "samples"));
    }
    if (a.contains("alpha")) config.amplify.alpha = GetDouble(a, "alpha");
    if (!(config.amplify.alpha > 0.0 && config.amplify.alpha <= 1.0)) {
      throw ConfigError("amplify.alpha must lie in (0, 1]");
    }
    config.amplify.budget.Validate();
  }
  return config;
}

json ExperimentConfigToJson(const ExperimentConfig& config) {
  const EstimatorConfig& e = config.estimator;
  json out = {
      {"name", config.name},
      {"matroid", MatroidSpecToJson(config.matroid)},
      {"function", FunctionSpecToJson(config.function)},
      {"algorithm", AlgorithmName(config.algorithm)},
      {"eps", config.eps},
      {"seed", config.seed},
      {"reps", config.reps},
      {"estimator",
       {{"chernoff_c", e.chernoff_c},
        {"chernoff_d", e.chernoff_d},
        {"fail_poly_exp", e.fail_poly_exp},
        {"grid_constant", e.grid_constant},
        {"max_samples", e.max_samples}}},
      {"amplify",
       {{"ell", config.amplify.ell == 0 ? DefaultEll(config.eps)
                                        : config.amplify.ell},
        {"samples", config.amplify.budget.m},
        {"alpha", config.amplify.alpha}}},
  };
  if (config.p > 0) out["p"] = config.p;
  return out;
}

RunReport RunExperiment(const ExperimentConfig& config,
                        const RunOptions& options) {
  SystemPtr m = BuildMatroid(config.matroid);
  OraclePtr f = BuildFunction(config.function);
  if (f->size() != m->universe()) {
    throw ConfigError("function has " + std::to_string(f->size()) +
                      " elements but the matroid has " +
                      std::to_string(m->universe()));
  }
  CheckCompatible(config, *f);
  if (options.workers < 1) throw ConfigError("workers must be >= 1");

  RunReport report;
  report.config = config;
  report.n = f->size();
  report.timing = options.timing;
  if (options.compute_opt && report.n <= kMaxOptElements) {
    report.opt = BruteForceOpt(*m, *f).opt_value;
  }
  for (int r = 0; r < config.reps; ++r) {
    report.reps.push_back(
        RunRepetition(config, m, f, config.seed + r, options.workers));
  }
  return report;
}

json GeneratedConfig(const std::string& kind, const json& params,
                     uint64_t seed) {
  json instance = GenerateInstance(kind, params, seed);
  return {{"name", instance["name"]},
          {"matroid", instance["matroid"]},
          {"function", instance["function"]},
          {"algorithm", "block_greedy"},
          {"eps", 0.2},
          {"seed", seed},
          {"reps", 1}};
}

double RunReport::MeanValue() const {
  std::vector<double> values;
  for (const Repetition& r : reps) values.push_back(r.value);
  return Summarize(values).mean;
}

std::string RunReport::ToJson() const {
  std::vector<double> values, rounds, f_calls, matroid_calls;
  int64_t feasible = 0;
  json repetitions = json::array();
  for (const Repetition& r : reps) {
    values.push_back(r.value);
    rounds.push_back(static_cast<double>(r.rounds));
    f_calls.push_back(static_cast<double>(r.f_calls));
    matroid_calls.push_back(static_cast<double>(r.matroid_calls));
    feasible += r.feasible ? 1 : 0;
    json entry = {{"seed", r.seed},
                  {"value", r.value},
                  {"feasible", r.feasible},
                  {"rounds", r.rounds},
                  {"f_calls", r.f_calls},
                  {"matroid_calls", r.matroid_calls},
                  {"phases", PhasesToJson(r.phases)},
                  {"detail", r.detail}};
    if (opt.has_value() && *opt > 0.0) entry["ratio"] = r.value / *opt;
    if (timing) entry["wall_ms"] = r.wall_ms;
    repetitions.push_back(std::move(entry));
  }
  auto stat = [](const std::vector<double>& xs) {
    Stat s = Summarize(xs);
    return json{{"mean", s.mean}, {"se", s.se}};
  };
  json aggregate = {{"value", stat(values)},
                    {"rounds", stat(rounds)},
                    {"f_calls", stat(f_calls)},
                    {"matroid_calls", stat(matroid_calls)},
                    {"feasible", feasible}};
  json out = {{"format_version", kFormatVersion},
              {"instance", config.name},
              {"algorithm", AlgorithmName(config.algorithm)},
              {"eps", config.eps},
              {"seed", config.seed},
              {"reps", config.reps},
              {"n", n},
              {"config", ExperimentConfigToJson(config)},
              {"aggregate", aggregate},
              {"repetitions", repetitions}};
  if (opt.has_value()) {
    out["opt"] = *opt;
    if (*opt > 0.0) out["ratio"] = Summarize(values).mean / *opt;
  }
  return out.dump(2) + "\n";
}

namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string RunReport::ToCsv(bool header) const {
  std::ostringstream out;
  if (header) out << kCsvHeader << '\n';
  for (const Repetition& r : reps) {
    out << CsvField(config.name) << ',' << AlgorithmName(config.algorithm)
        << ',' << FormatDouble(config.eps) << ',' << r.seed << ','
        << FormatDouble(r.value) << ',' << r.rounds << ',' << r.f_calls << ','
        << r.matroid_calls << ',';
    if (opt.has_value()) {
      out << FormatDouble(*opt);
      out << ',';
      if (*opt > 0.0) out << FormatDouble(r.value / *opt);
    } else {
      out << ',';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace psm
