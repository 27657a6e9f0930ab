// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "focklab.h"

#include <cstring>
#include <filesystem>
#include <fstream>

#include "experiments.hpp"
#include "wigner.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

focklab_status fail(focklab_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

template <typename Fn>
focklab_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const focklab::GuardViolation& e) {
    return fail(FOCKLAB_ERROR_GUARD, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(FOCKLAB_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(FOCKLAB_ERROR_RUNTIME, e.what());
  }
}

focklab::Vec vec_from_interleaved(const double* data, int d) {
  focklab::Vec v(d);
  for (int j = 0; j < d; ++j) {
    v[j] = focklab::Complex(data[2 * j], data[2 * j + 1]);
  }
  return v;
}

}  // namespace

struct focklab_space {
  focklab::SpacePtr ptr;
};

extern "C" {

const char* focklab_version(void) { return "0.1.0"; }

const char* focklab_last_error(void) { return g_last_error.c_str(); }

void focklab_string_free(char* s) { std::free(s); }

focklab_status focklab_space_create(int32_t d, int32_t n_max, double epsilon,
                                    focklab_space** out) {
  if (!out) return fail(FOCKLAB_ERROR_INVALID_ARGUMENT, "out pointer is NULL");
  *out = nullptr;
  return guarded([&]() -> focklab_status {
    auto space = focklab::make_space(d, n_max, epsilon);
    *out = new focklab_space{std::move(space)};
    return FOCKLAB_OK;
  });
}

void focklab_space_destroy(focklab_space* space) { delete space; }

int32_t focklab_space_dim(const focklab_space* space) {
  return space ? space->ptr->dim() : -1;
}

int32_t focklab_space_n_max(const focklab_space* space) {
  return space ? space->ptr->n_max() : -1;
}

double focklab_space_epsilon(const focklab_space* space) {
  return space ? space->ptr->epsilon() : -1.0;
}

int64_t focklab_space_total_dim(const focklab_space* space) {
  return space ? space->ptr->total_dim() : -1;
}

int64_t focklab_space_block_dim(const focklab_space* space, int32_t n) {
  return space ? space->ptr->block_dim(n) : -1;
}

focklab_status focklab_coherent_tail_mass(const focklab_space* space,
                                          const double* z_interleaved, double* out) {
  if (!space || !z_interleaved || !out)
    return fail(FOCKLAB_ERROR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&]() -> focklab_status {
    focklab::Vec z = vec_from_interleaved(z_interleaved, space->ptr->dim());
    *out = focklab::coherent_tail_mass(*space->ptr, z);
    return FOCKLAB_OK;
  });
}

focklab_status focklab_coherent_char(const focklab_space* space,
                                     const double* z_interleaved,
                                     const double* xi_interleaved, double* out_re,
                                     double* out_im) {
  if (!space || !z_interleaved || !xi_interleaved || !out_re || !out_im)
    return fail(FOCKLAB_ERROR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&]() -> focklab_status {
    const int d = space->ptr->dim();
    focklab::Vec z = vec_from_interleaved(z_interleaved, d);
    focklab::Vec xi = vec_from_interleaved(xi_interleaved, d);
    focklab::FockVector e = focklab::coherent_state(space->ptr, z, 1e-8);
    const focklab::Complex g = focklab::char_function(e, xi);
    *out_re = g.real();
    *out_im = g.imag();
    return FOCKLAB_OK;
  });
}

focklab_status focklab_experiment_list(char** out_json) {
  if (!out_json) return fail(FOCKLAB_ERROR_INVALID_ARGUMENT, "out pointer is NULL");
  return guarded([&]() -> focklab_status {
    focklab::Json j = focklab::Json::array();
    for (const auto& info : focklab::experiment_catalog()) {
      j.push_back({{"id", info.id}, {"summary", info.summary}});
    }
    *out_json = dup_string(j.dump(2));
    return FOCKLAB_OK;
  });
}

focklab_status focklab_experiment_run(const char* experiment_id,
                                      const char* config_json, const char* out_dir,
                                      uint64_t seed, int32_t jobs,
                                      char** verdict_json) {
  if (verdict_json) *verdict_json = nullptr;
  return guarded([&]() -> focklab_status {
    focklab::Json config = focklab::Json::object();
    if (config_json && *config_json) {
      config = focklab::Json::parse(config_json, nullptr, false);
      if (config.is_discarded())
        throw std::invalid_argument("config is not valid JSON");
    }
    std::string id;
    if (experiment_id && *experiment_id) {
      id = experiment_id;
    } else if (config.contains("experiment")) {
      id = config.at("experiment").get<std::string>();
    } else {
      throw std::invalid_argument("no experiment id given");
    }
    focklab::ExperimentOutput result =
        focklab::run_experiment(id, config, seed, std::max<int32_t>(1, jobs));
    if (out_dir && *out_dir) {
      std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      for (const auto& [name, content] : result.csv_files) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + name);
        f << content;
      }
      std::ofstream vf(dir / "verdict.json", std::ios::binary);
      if (!vf) throw std::runtime_error("cannot write verdict.json");
      vf << result.verdict.dump(2) << "\n";
    }
    if (verdict_json) *verdict_json = dup_string(result.verdict.dump(2));
    return FOCKLAB_OK;
  });
}

}  // extern "C"
