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

#include "psm/c_api.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"
#include "psm/experiment.h"
#include "psm/instance.h"
#include "psm/matroid.h"
#include "psm/submodular.h"
#include "psm/types.h"

struct psm_function {
  psm::OraclePtr oracle;
};

struct psm_matroid {
  psm::SystemPtr system;
};

struct psm_experiment {
  psm::ExperimentConfig config;
};

struct psm_report {
  psm::RunReport report;
};

namespace {

thread_local std::string last_error;

// A caller-supplied argument that cannot be used (mapped to
// PSM_INVALID_ARGUMENT).
class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

psm_status Fail(psm_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
psm_status Guard(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const ArgumentError& e) {
    return Fail(PSM_INVALID_ARGUMENT, e.what());
  } catch (const psm::IncompatibleError& e) {
    return Fail(PSM_INCOMPATIBLE, e.what());
  } catch (const psm::ConfigError& e) {
    return Fail(PSM_CONFIG, e.what());
  } catch (const nlohmann::json::exception& e) {
    return Fail(PSM_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(PSM_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(PSM_INTERNAL, e.what());
  }
}

char* CopyString(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

psm::ElementSet ToSet(const int32_t* elements, size_t count, int universe) {
  if (elements == nullptr && count > 0) {
    throw ArgumentError("null element array with nonzero count");
  }
  for (size_t i = 0; i < count; ++i) {
    if (elements[i] < 0 || elements[i] >= universe) {
      throw ArgumentError("element " + std::to_string(elements[i]) +
                          " is outside 0.." + std::to_string(universe - 1));
    }
  }
  return psm::Normalize(psm::ElementSet(elements, elements + count));
}

psm_status WriteSet(const psm::ElementSet& s, int32_t* buffer,
                    size_t capacity, size_t* out_count) {
  if (out_count != nullptr) *out_count = s.size();
  if (s.size() > capacity) {
    return Fail(PSM_BUFFER_TOO_SMALL,
                "buffer holds " + std::to_string(capacity) + " elements, " +
                    std::to_string(s.size()) + " needed");
  }
  if (buffer == nullptr && !s.empty()) {
    return Fail(PSM_INVALID_ARGUMENT, "null output buffer");
  }
  for (size_t i = 0; i < s.size(); ++i) buffer[i] = s[i];
  return PSM_OK;
}

}  // namespace

#define PSM_REQUIRE(cond, what)                                 \
  do {                                                          \
    if (!(cond)) return Fail(PSM_INVALID_ARGUMENT, what);      \
  } while (0)

extern "C" {

const char* psm_version(void) { return "1.0.0"; }

const char* psm_last_error_message(void) { return last_error.c_str(); }

void psm_string_free(char* s) { delete[] s; }

psm_status psm_function_from_json(const char* json, psm_function** out) {
  PSM_REQUIRE(json != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    psm::FunctionSpec spec =
        psm::ParseFunctionSpec(nlohmann::json::parse(json));
    *out = new psm_function{psm::BuildFunction(spec)};
    return PSM_OK;
  });
}

psm_status psm_function_size(const psm_function* f, int* out) {
  PSM_REQUIRE(f != nullptr && out != nullptr, "null argument");
  *out = f->oracle->size();
  return PSM_OK;
}

psm_status psm_function_eval(const psm_function* f, const int32_t* elements,
                             size_t count, double* out) {
  PSM_REQUIRE(f != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    *out = f->oracle->Eval(ToSet(elements, count, f->oracle->size()));
    return PSM_OK;
  });
}

void psm_function_free(psm_function* f) { delete f; }

psm_status psm_matroid_from_json(const char* json, psm_matroid** out) {
  PSM_REQUIRE(json != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    psm::MatroidSpec spec = psm::ParseMatroidSpec(nlohmann::json::parse(json));
    *out = new psm_matroid{psm::BuildMatroid(spec)};
    return PSM_OK;
  });
}

psm_status psm_matroid_size(const psm_matroid* m, int* out) {
  PSM_REQUIRE(m != nullptr && out != nullptr, "null argument");
  *out = m->system->universe();
  return PSM_OK;
}

psm_status psm_matroid_is_independent(const psm_matroid* m,
                                      const int32_t* elements, size_t count,
                                      int* out) {
  PSM_REQUIRE(m != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    const psm::ElementSet s = ToSet(elements, count, m->system->universe());
    *out = m->system->IsIndependent(s) ? 1 : 0;
    return PSM_OK;
  });
}

psm_status psm_matroid_rank(const psm_matroid* m, const int32_t* elements,
                            size_t count, int* out) {
  PSM_REQUIRE(m != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    psm::MatroidPtr matroid = psm::AsMatroid(m->system);
    if (matroid == nullptr) {
      throw psm::IncompatibleError("rank is only defined for matroids");
    }
    *out = matroid->Rank(ToSet(elements, count, m->system->universe()));
    return PSM_OK;
  });
}

psm_status psm_matroid_span(const psm_matroid* m, const int32_t* elements,
                            size_t count, int32_t* buffer, size_t capacity,
                            size_t* out_count) {
  PSM_REQUIRE(m != nullptr && out_count != nullptr, "null argument");
  return Guard([&] {
    const psm::ElementSet s = ToSet(elements, count, m->system->universe());
    return WriteSet(m->system->Span(s), buffer, capacity,
                    out_count);
  });
}

void psm_matroid_free(psm_matroid* m) { delete m; }

psm_status psm_experiment_from_json(const char* json, psm_experiment** out) {
  PSM_REQUIRE(json != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    auto* e = new psm_experiment;
    try {
      e->config = psm::ParseExperimentConfig(nlohmann::json::parse(json));
    } catch (...) {
      delete e;
      throw;
    }
    *out = e;
    return PSM_OK;
  });
}

psm_status psm_experiment_run(const psm_experiment* e,
                              const psm_run_options* options,
                              psm_report** out) {
  PSM_REQUIRE(e != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    psm::RunOptions run;
    if (options != nullptr) {
      run.workers = options->workers;
      run.compute_opt = options->compute_opt != 0;
      run.timing = options->timing != 0;
    }
    *out = new psm_report{psm::RunExperiment(e->config, run)};
    return PSM_OK;
  });
}

void psm_experiment_free(psm_experiment* e) { delete e; }

psm_status psm_report_json(const psm_report* r, char** out) {
  PSM_REQUIRE(r != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    *out = CopyString(r->report.ToJson());
    return PSM_OK;
  });
}

psm_status psm_report_csv(const psm_report* r, int header, char** out) {
  PSM_REQUIRE(r != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    *out = CopyString(r->report.ToCsv(header != 0));
    return PSM_OK;
  });
}

psm_status psm_report_mean_value(const psm_report* r, double* out) {
  PSM_REQUIRE(r != nullptr && out != nullptr, "null argument");
  *out = r->report.MeanValue();
  return PSM_OK;
}

void psm_report_free(psm_report* r) { delete r; }

psm_status psm_generate_instance(const char* kind, const char* params_json,
                                 uint64_t seed, char** out) {
  PSM_REQUIRE(kind != nullptr && out != nullptr, "null argument");
  return Guard([&] {
    nlohmann::json params = params_json == nullptr
                                ? nlohmann::json::object()
                                : nlohmann::json::parse(params_json);
    *out = CopyString(psm::GeneratedConfig(kind, params, seed).dump(2) + "\n");
    return PSM_OK;
  });
}

psm_status psm_solve(const psm_matroid* m, const psm_function* f,
                     const char* algorithm, double eps, uint64_t seed,
                     int32_t* buffer, size_t capacity, size_t* out_count,
                     double* out_value, int64_t* out_rounds) {
  PSM_REQUIRE(m != nullptr && f != nullptr && algorithm != nullptr &&
                  out_count != nullptr,
              "null argument");
  return Guard([&] {
    if (f->oracle->size() != m->system->universe()) {
      throw psm::ConfigError("function and matroid sizes differ");
    }
    if (!(eps > 0.0 && eps < 0.5)) {
      throw psm::ConfigError("eps must lie in (0, 1/2)");
    }
    psm::ExperimentConfig config;
    config.algorithm = psm::ParseAlgorithm(algorithm);
    config.eps = eps;
    if (config.algorithm == psm::Algorithm::kAmplifyMonotone &&
        !m->system->is_matroid()) {
      throw psm::IncompatibleError(
          "amplify_monotone on a matchoid has no integral output");
    }
    psm::Repetition rep =
        psm::RunRepetition(config, m->system, f->oracle, seed);
    psm::ElementSet solution =
        rep.detail.at("solution").get<psm::ElementSet>();
    if (out_value != nullptr) *out_value = rep.value;
    if (out_rounds != nullptr) *out_rounds = rep.rounds;
    return WriteSet(solution, buffer, capacity, out_count);
  });
}

}  // extern "C"
