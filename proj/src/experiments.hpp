// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FOCKLAB_EXPERIMENTS_HPP
#define FOCKLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "serialization.hpp"

namespace focklab {

struct ExperimentInfo {
  std::string id;
  std::string summary;
};

// The experiment ids exposed by the runner, in catalog order.
const std::vector<ExperimentInfo>& experiment_catalog();

struct ExperimentOutput {
  bool pass = false;
  Json verdict;  // {"experiment", "pass", "metrics", "guards", "tolerances"}
  std::vector<std::pair<std::string, std::string>> csv_files;  // name -> content
};

// Runs one experiment. Config keys outside the experiment's schema are
// rejected; guard violations and config errors throw (no outputs are
// produced in that case). Identical config and seed give byte-identical
// CSV contents regardless of the job count.
ExperimentOutput run_experiment(const std::string& id, const Json& config,
                                std::uint64_t seed, int jobs);

}  // namespace focklab

#endif
