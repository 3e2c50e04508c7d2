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
// qnspsa-lab: run configured experiments and self-checks.
//
//   qnspsa-lab run <config.toml> [--seed N] [--jobs N] [--output DIR]
//   qnspsa-lab check
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qnspsa/expcli/checks.hpp"
#include "qnspsa/expcli/config.hpp"
#include "qnspsa/expcli/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

int run_command(const std::string &path, std::optional<std::uint64_t> seed, int jobs,
                const std::optional<std::string> &output) {
    qnspsa::ExperimentConfig cfg;
    try {
        cfg = qnspsa::load_config(path);
        if (seed) {
            cfg.seed = *seed;
        }
        if (output) {
            cfg.output = *output;
        }
        const auto result = qnspsa::run_experiment(cfg, jobs);
        qnspsa::write_outputs(cfg, result, cfg.output);
        std::cout << cfg.experiment << ": wrote " << (cfg.output / "trace.csv").string()
                  << " and " << (cfg.output / "summary.json").string() << "\n";
        if (!result.ok) {
            std::cerr << "error: " << result.message << "\n";
            return kRuntimeFailure;
        }
        return kOk;
    } catch (const qnspsa::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeFailure;
    }
}

int check_command() {
    bool ok = true;
    const auto q = qnspsa::qfim_check(20, 4, 8, 1e-3, 1e-5, 0);
    std::printf("%s qfim_check: %zu circuits, max |g - g_fd| = %.3e (tol %.0e)\n",
                q.passed ? "PASS" : "FAIL", q.circuits.size(), q.max_abs_deviation,
                q.tolerance);
    ok = ok && q.passed;
    for (const auto &c : qnspsa::estimator_checks()) {
        std::printf("%s %s: max error %.3e (tol %.0e)\n", c.passed ? "PASS" : "FAIL",
                    c.name.c_str(), c.max_abs_error, c.tolerance);
        ok = ok && c.passed;
    }
    return ok ? kOk : kRuntimeFailure;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"QN-SPSA experiment runner"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "run an experiment from a TOML config");
    std::string config;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::optional<std::string> output;
    run->add_option("config", config, "experiment config (TOML)")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--jobs", jobs, "parallel runs")->check(CLI::PositiveNumber);
    run->add_option("--output", output, "output directory (overrides config)");

    auto *check = app.add_subcommand("check", "run built-in estimator self-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }
    if (run->parsed()) {
        return run_command(config, seed, jobs, output);
    }
    if (check->parsed()) {
        return check_command();
    }
    return kUsageError;
}
