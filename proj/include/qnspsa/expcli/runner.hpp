// Copyright 2026 The qnspsa-lab Authors.
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
/**
 * @file runner.hpp
 * Runs a configured experiment and renders trace.csv / summary.json.
 *
 * Seeding: the problem instance and the initial point come from the
 * experiment seed (shared by every method). Run r of every method uses the
 * optimizer seed run_seed(seed, r), so methods compared at the same run
 * index see the same gradient directions and shot noise streams.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qnspsa/expcli/config.hpp"
#include "qnspsa/optim/optimizer.hpp"

namespace qnspsa {

std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run);

struct RunOutput {
    std::string label;
    int run = 0;
    RunResult result;
    /// Known ground energy of the objective, if any.
    std::optional<double> reference;
};

struct ExperimentResult {
    std::vector<RunOutput> runs;
    nlohmann::ordered_json summary;
    /// Additional CSV files (name -> content), e.g. grid.csv.
    std::map<std::string, std::string> extra_files;
    bool ok = true;
    std::string message;
};

/// Throws ConfigError for instance-level configuration problems and
/// std::exception for runtime failures.
ExperimentResult run_experiment(const ExperimentConfig &config, int jobs);

/// trace.csv content: experiment,method,run,k,loss,evals,accepted,wall_ms.
std::string render_trace(const ExperimentConfig &config,
                         const ExperimentResult &result);

/// Writes trace.csv, summary.json and extra files into `dir`.
void write_outputs(const ExperimentConfig &config, const ExperimentResult &result,
                   const std::filesystem::path &dir);

} // namespace qnspsa
