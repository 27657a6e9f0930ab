// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command line front end over the focklab C API. Every experiment in the
// catalog is a subcommand; `list` prints the catalog. Exit codes: 0 when the
// experiment passed, 1 when it ran but failed its criteria, 2 on config or
// guard errors.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "focklab.h"

namespace {

int run_one(const std::string& id, const std::string& config_path,
            const std::string& out_dir, std::uint64_t seed, int jobs) {
  std::string config;
  if (!config_path.empty()) {
    std::ifstream f(config_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return 2;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    config = ss.str();
  }
  char* verdict = nullptr;
  const focklab_status status = focklab_experiment_run(
      id.c_str(), config.empty() ? nullptr : config.c_str(),
      out_dir.empty() ? nullptr : out_dir.c_str(), seed, jobs, &verdict);
  if (status != FOCKLAB_OK) {
    std::cerr << "error: " << focklab_last_error() << "\n";
    return 2;
  }
  std::string doc = verdict ? verdict : "{}";
  focklab_string_free(verdict);
  std::cout << doc << "\n";
  // the verdict document carries "pass": the runner never hides failures
  const bool passed = doc.find("\"pass\": true") != std::string::npos;
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"focklab experiment runner"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list", "print the experiment catalog");

  struct Common {
    std::string config;
    std::string out;
    std::uint64_t seed = 7;
    int jobs = 1;
  };

  // one subcommand per experiment id, discovered from the library
  char* catalog_json = nullptr;
  if (focklab_experiment_list(&catalog_json) != FOCKLAB_OK) {
    std::cerr << "error: " << focklab_last_error() << "\n";
    return 2;
  }
  std::string catalog = catalog_json;
  focklab_string_free(catalog_json);

  std::vector<std::pair<std::string, std::shared_ptr<Common>>> experiments;
  {
    // ids are of the form "id": "..." in catalog order
    size_t pos = 0;
    while ((pos = catalog.find("\"id\": \"", pos)) != std::string::npos) {
      pos += 7;
      const size_t end = catalog.find('"', pos);
      const std::string id = catalog.substr(pos, end - pos);
      size_t spos = catalog.find("\"summary\": \"", end);
      std::string summary;
      if (spos != std::string::npos) {
        spos += 12;
        summary = catalog.substr(spos, catalog.find('"', spos) - spos);
      }
      auto common = std::make_shared<Common>();
      auto* cmd = app.add_subcommand(id, summary);
      cmd->add_option("--config", common->config, "JSON config file");
      cmd->add_option("--out", common->out, "output directory for CSV + verdict");
      cmd->add_option("--seed", common->seed, "RNG seed (default 7)");
      cmd->add_option("--jobs", common->jobs, "worker threads (default 1)");
      experiments.emplace_back(id, std::move(common));
      pos = end;
    }
  }

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    std::cout << catalog << "\n";
    return 0;
  }
  for (const auto& [id, common] : experiments) {
    if (app.get_subcommand(id)->parsed()) {
      return run_one(id, common->config, common->out, common->seed, common->jobs);
    }
  }
  std::cerr << "error: no experiment selected\n";
  return 2;
}
