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

// Command-line front end over the C API.
//
//   psm_cli run <config.json> [--out report.json] [--csv report.csv]
//               [--workers N] [--opt auto|off] [--timing]
//   psm_cli gen <kind> [key=value ...] --seed S [--out config.json]
//   psm_cli sweep --param eps --values 0.05,0.1,0.2 <config.json>
//               [--csv sweep.csv] [--workers N] [--opt auto|off]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "psm/c_api.h"

namespace {

class CliError : public std::runtime_error {
 public:
  CliError(psm_status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  psm_status status() const { return status_; }

 private:
  psm_status status_;
};

void Check(psm_status status) {
  if (status != PSM_OK) throw CliError(status, psm_last_error_message());
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(PSM_CONFIG, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteOutput(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(PSM_CONFIG, "cannot write '" + path + "'");
  out << contents;
}

// Owns a string returned by the library.
class LibString {
 public:
  LibString() = default;
  ~LibString() { psm_string_free(s_); }
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  char** out() { return &s_; }
  std::string str() const { return s_ == nullptr ? "" : s_; }

 private:
  char* s_ = nullptr;
};

struct RunResult {
  std::string json;
  std::string csv;
};

RunResult RunConfig(const std::string& config, const psm_run_options& options,
                    bool csv_header) {
  psm_experiment* experiment = nullptr;
  Check(psm_experiment_from_json(config.c_str(), &experiment));
  psm_report* report = nullptr;
  psm_status status = psm_experiment_run(experiment, &options, &report);
  psm_experiment_free(experiment);
  Check(status);
  RunResult result;
  LibString json, csv;
  status = psm_report_json(report, json.out());
  if (status == PSM_OK) status = psm_report_csv(report, csv_header, csv.out());
  psm_report_free(report);
  Check(status);
  result.json = json.str();
  result.csv = csv.str();
  return result;
}

psm_run_options MakeOptions(int workers, const std::string& opt, bool timing) {
  psm_run_options options;
  options.workers = workers;
  options.compute_opt = opt == "auto" ? 1 : 0;
  options.timing = timing ? 1 : 0;
  return options;
}

// "k=3" becomes {"k": 3}; values that are not JSON stay strings.
nlohmann::json ParseParams(const std::vector<std::string>& pairs) {
  nlohmann::json params = nlohmann::json::object();
  for (const std::string& pair : pairs) {
    const size_t eq = pair.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw CliError(PSM_CONFIG, "expected key=value, got '" + pair + "'");
    }
    const std::string key = pair.substr(0, eq);
    const std::string value = pair.substr(eq + 1);
    nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
    params[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
  }
  return params;
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-adaptivity submodular maximization benchmarks"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path, opt_mode = "auto";
  int workers = 1;
  bool timing = false;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Experiment config")->required();
  run->add_option("--out", out_path, "JSON report path (stdout by default)");
  run->add_option("--csv", csv_path, "CSV report path");
  run->add_option("--workers", workers, "Engine worker threads")
      ->check(CLI::PositiveNumber);
  run->add_option("--opt", opt_mode, "Brute-force OPT for n <= 20")
      ->check(CLI::IsMember({"auto", "off"}));
  run->add_flag("--timing", timing, "Include wall time in the JSON report");

  std::string kind, gen_out;
  std::vector<std::string> gen_params;
  uint64_t seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance config");
  gen->add_option("kind", kind, "Generator kind")->required();
  gen->add_option("params", gen_params, "Generator parameters as key=value");
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--out", gen_out, "Output path (stdout by default)");

  std::string param, values, sweep_config, sweep_csv, sweep_opt = "auto";
  int sweep_workers = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a config over values");
  sweep->add_option("--param", param, "Top-level config key to vary")
      ->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("config", sweep_config, "Experiment config")->required();
  sweep->add_option("--csv", sweep_csv, "CSV output path (stdout by default)");
  sweep->add_option("--workers", sweep_workers, "Engine worker threads")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--opt", sweep_opt, "Brute-force OPT for n <= 20")
      ->check(CLI::IsMember({"auto", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return PSM_CONFIG;
  }

  try {
    if (*run) {
      RunResult result = RunConfig(ReadFile(config_path),
                                   MakeOptions(workers, opt_mode, timing),
                                   /*csv_header=*/true);
      WriteOutput(out_path, result.json);
      if (!csv_path.empty()) WriteOutput(csv_path, result.csv);
    } else if (*gen) {
      LibString config;
      Check(psm_generate_instance(kind.c_str(),
                                  ParseParams(gen_params).dump().c_str(), seed,
                                  config.out()));
      WriteOutput(gen_out, config.str());
    } else if (*sweep) {
      nlohmann::json base = nlohmann::json::parse(ReadFile(sweep_config));
      if (!base.is_object()) {
        throw CliError(PSM_CONFIG, "config must be a JSON object");
      }
      std::string csv;
      bool first = true;
      for (const std::string& value : SplitList(values)) {
        nlohmann::json config = base;
        nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
        config[param] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
        csv += RunConfig(config.dump(),
                         MakeOptions(sweep_workers, sweep_opt, false), first)
                   .csv;
        first = false;
      }
      WriteOutput(sweep_csv, csv);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.status()) {
      case PSM_INCOMPATIBLE:
        return 3;
      case PSM_CONFIG:
      case PSM_INVALID_ARGUMENT:
        return 2;
      default:
        return 1;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return PSM_CONFIG;
  }
  return 0;
}
