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
 * @file config.hpp
 * TOML experiment configuration. Unknown keys are errors, and every field
 * has an explicit default so the resolved configuration can be written back
 * in full.
 *
 * Layout:
 *
 *     experiment = "two_design"
 *     seed = 7
 *     methods = ["GD", "QNG", "SPSA", "QNSPSA"]
 *     eta = 0.01            # shared optimizer hyperparameters
 *     [instance]            # problem size, files, grid
 *     [qbm]                 # qbm_bell only
 *     [method_overrides.SPSA]
 *     eta = 0.5             # any optimizer key, plus `method` for aliases
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qnspsa/optim/optimizer.hpp"

namespace qnspsa {

/// Invalid or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> &experiment_names();

/// Optimizer settings for one method label.
struct MethodSettings {
    std::string label;
    Method method = Method::SPSA;
    double eta = 0.01;
    double epsilon = 0.01;
    /// Defaults to 0 for QNG (pseudo-inverse metric) unless set inside the
    /// method's override table.
    double beta = 1e-3;
    bool normalized_regularization = true;
    /// 0 means exact evaluation.
    long shots = 0;
    /// Follows \`shots\` unless set explicitly.
    long fidelity_shots = 0;
    int iterations = 100;
    int n_runs = 1;
    int n_resamplings = 1;
    bool blocking = false;
    /// Negative means "auto" (twice the loss standard error).
    double blocking_tolerance = -1.0;
    int max_rejections = 10;
    std::optional<double> calibrate_target;
    int calibration_probes = 25;

    /// Optimizer configuration for one run with its own seed.
    [[nodiscard]] OptimizerConfig optimizer(std::uint64_t run_seed,
                                            bool record_wall_time) const;
};

struct InstanceSettings {
    std::size_t n_qubits = 11;
    std::size_t reps = 3;
    int grid_size = 15;
    double convergence_threshold = 1e-4;
    std::size_t qaoa_layers = 2;
    std::vector<double> betas{1e-3, 1e-2, 1e-1, 1.0};
    int n_circuits = 20;
    std::size_t max_qubits = 4;
    std::size_t max_params = 8;
    double fd_step = 1e-3;
    double tolerance = 1e-5;
    std::string hamiltonian_file;
    std::string ansatz = "two_design";
};

struct QbmSettings {
    std::vector<double> target{0.5, 0.0, 0.0, 0.5};
    std::string target_file;
    std::string backend = "varqite";
    double kT = 1.0;
    double omega_low = -2.0;
    double omega_high = 2.0;
    int n_state_averages = 10;
    int gibbs_steps = 10;
    std::string gibbs_metric = "qnspsa";
    int gibbs_resamplings = 10;
    double gibbs_epsilon = 1e-2;
    double gibbs_beta = 0.1;
    std::optional<double> lse_regularization;
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::filesystem::path output = "out";
    bool record_wall_time = false;
    int trace_every = 1;
    std::vector<MethodSettings> methods;
    InstanceSettings instance;
    QbmSettings qbm;
    /// Directory of the config file; relative paths resolve against it.
    std::filesystem::path base_dir = ".";

    [[nodiscard]] std::filesystem::path resolve(const std::string &path) const;
};

/// Parses TOML text. Throws ConfigError with a diagnostic.
ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path &base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path &path);

/// Fully resolved configuration as a JSON string (used in summary.json).
std::string config_json(const ExperimentConfig &config);

} // namespace qnspsa
