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
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "qnspsa/expcli/builders.hpp"
#include "qnspsa/expcli/checks.hpp"
#include "qnspsa/expcli/config.hpp"
#include "qnspsa/expcli/parallel.hpp"
#include "qnspsa/expcli/runner.hpp"
#include "qnspsa/observables/expectation.hpp"
#include "qnspsa/simcore/simulator.hpp"

namespace qnspsa {
namespace {

using Json = nlohmann::json;

// Z-basis energy of a diagonal sum, evaluated bit by bit.
double diagonal_energy(const PauliSum &h, std::size_t basis) {
    double e = 0.0;
    for (const auto &t : h.terms()) {
        double sign = 1.0;
        for (const auto &[q, p] : t.string.ops()) {
            EXPECT_EQ(p, Pauli::Z);
            if (((basis >> q) & 1U) != 0) {
                sign = -sign;
            }
        }
        e += t.coefficient * sign;
    }
    return e;
}

TEST(TwoDesign, ParameterCounts) {
    EXPECT_EQ(build_two_design(11, 3, 0).circuit.n_params(), 44U);
    EXPECT_EQ(build_two_design(22, 5, 0).circuit.n_params(), 132U);
}

TEST(TwoDesign, ObservableInTheMiddle) {
    const auto inst = build_two_design(11, 3, 0);
    ASSERT_EQ(inst.observable.terms().size(), 1U);
    const auto &t = inst.observable.terms().front();
    EXPECT_DOUBLE_EQ(t.coefficient, 1.0);
    const std::map<std::size_t, Pauli> expected{{4, Pauli::Z}, {5, Pauli::Z}};
    EXPECT_EQ(t.string.ops(), expected);
}

TEST(TwoDesign, Structure) {
    const auto c = build_two_design(6, 2, 4).circuit;
    const auto &gates = c.gates();
    ASSERT_GE(gates.size(), 6U);
    for (std::size_t q = 0; q < 6; ++q) {
        EXPECT_EQ(gates[q].kind, GateKind::RY);
        EXPECT_FALSE(gates[q].angle.param.has_value());
        EXPECT_DOUBLE_EQ(gates[q].angle.offset, kPi / 4);
    }
    std::size_t rotations = 0;
    for (std::size_t i = 6; i < gates.size(); ++i) {
        const auto &g = gates[i];
        if (g.kind == GateKind::CZ) {
            const auto a = g.qubits[0];
            const auto b = g.qubits[1];
            EXPECT_EQ(a > b ? a - b : b - a, 1U);
        } else {
            EXPECT_TRUE(g.kind == GateKind::RX || g.kind == GateKind::RY ||
                        g.kind == GateKind::RZ);
            EXPECT_TRUE(g.angle.param.has_value());
            ++rotations;
        }
    }
    EXPECT_EQ(rotations, 18U);
}

std::vector<GateKind> kinds(const Circuit &c) {
    std::vector<GateKind> out;
    for (const auto &g : c.gates()) {
        out.push_back(g.kind);
    }
    return out;
}

TEST(TwoDesign, AxesDeterministicUnderSeed) {
    EXPECT_EQ(kinds(build_two_design(11, 3, 9).circuit),
              kinds(build_two_design(11, 3, 9).circuit));
    EXPECT_NE(kinds(build_two_design(11, 3, 9).circuit),
              kinds(build_two_design(11, 3, 10).circuit));
}

TEST(TwoDesign, InvalidSizes) {
    EXPECT_THROW(build_two_design(1, 3, 0), std::invalid_argument);
    EXPECT_THROW(build_two_design(4, 0, 0), std::invalid_argument);
}

TEST(ConvergenceProblem, DenseMatrixIsDiag1230) {
    const auto inst = build_convergence_problem();
    const auto m = dense_matrix(inst.observable);
    const double diag[] = {1.0, 2.0, 3.0, 0.0};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            EXPECT_EQ(m(i, j), Complex(i == j ? diag[i] : 0.0, 0.0)) << i << "," << j;
        }
    }
}

TEST(ConvergenceProblem, GroundEnergyAtIndexThree) {
    const auto inst = build_convergence_problem();
    EXPECT_DOUBLE_EQ(diagonal_minimum(inst.observable), 0.0);
    Vector theta(3);
    theta << 0.0, kPi, kPi;
    const auto state = run(inst.circuit, theta);
    EXPECT_NEAR(std::norm(state[3]), 1.0, 1e-12);
    EXPECT_NEAR(expectation_exact(state, inst.observable), 0.0, 1e-12);
}

TEST(ConvergenceProblem, PhaseDoesNotChangeEnergy) {
    const auto inst = build_convergence_problem();
    Rng rng = make_stream(701, 0);
    for (int trial = 0; trial < 50; ++trial) {
        Vector theta = random_point(3, rng);
        const double e0 = expectation_exact(run(inst.circuit, theta), inst.observable);
        theta[0] = uniform(rng, -10, 10);
        EXPECT_NEAR(expectation_exact(run(inst.circuit, theta), inst.observable), e0,
                    1e-12);
    }
}

TEST(MaxCut, SevenWeightedEdges) {
    const auto h = maxcut_hamiltonian();
    EXPECT_EQ(h.n_qubits(), 5U);
    // Edges in 0-indexed qubits.
    const std::map<std::pair<std::size_t, std::size_t>, double> expected{
        {{3, 4}, 1.0},  {{2, 4}, 2.5},  {{2, 3}, 2.5}, {{1, 4}, -0.5},
        {{1, 2}, -0.5}, {{0, 4}, -4.5}, {{0, 2}, 3.5}};
    ASSERT_EQ(h.terms().size(), 7U);
    std::map<std::pair<std::size_t, std::size_t>, double> got;
    for (const auto &t : h.terms()) {
        ASSERT_EQ(t.string.ops().size(), 2U);
        const auto a = t.string.ops().begin()->first;
        const auto b = t.string.ops().rbegin()->first;
        EXPECT_EQ(t.string.ops().at(a), Pauli::Z);
        EXPECT_EQ(t.string.ops().at(b), Pauli::Z);
        got[{a, b}] = t.coefficient;
    }
    EXPECT_EQ(got, expected);
    EXPECT_EQ(measurement_bases(h), 1U);
}

TEST(MaxCut, ZeroAnglesGiveUniformSuperposition) {
    const auto inst = build_maxcut();
    EXPECT_EQ(inst.circuit.n_params(), 4U);
    const auto state = run(inst.circuit, Vector::Zero(4));
    for (std::size_t i = 0; i < 32; ++i) {
        EXPECT_NEAR(state[i].real(), 1.0 / std::sqrt(32.0), 1e-12);
        EXPECT_NEAR(state[i].imag(), 0.0, 1e-12);
    }
}

TEST(MaxCut, MinimumByEnumeration) {
    const auto h = maxcut_hamiltonian();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < 32; ++b) {
        best = std::min(best, diagonal_energy(h, b));
    }
    EXPECT_DOUBLE_EQ(best, -12.0);
    EXPECT_DOUBLE_EQ(diagonal_minimum(h), best);
}

TEST(MaxCut, LayerCount) {
    EXPECT_EQ(build_maxcut(1).circuit.n_params(), 2U);
    EXPECT_EQ(build_maxcut(3).circuit.n_params(), 6U);
    EXPECT_THROW(build_maxcut(0), std::invalid_argument);
}

TEST(MaxCut, CostLayerIsDiagonalPhase) {
    // One layer with beta = 0: every amplitude keeps modulus 1/sqrt(32) and
    // picks up exp(-i gamma E(b)) relative to the others.
    const auto inst = build_maxcut(1);
    Vector theta(2);
    theta << 0.3, 0.0;
    const auto state = run(inst.circuit, theta);
    const Complex ref = state[0] * std::exp(Complex(0, 0.3 * diagonal_energy(inst.observable, 0)));
    for (std::size_t b = 0; b < 32; ++b) {
        const Complex undone =
            state[b] * std::exp(Complex(0, 0.3 * diagonal_energy(inst.observable, b)));
        EXPECT_NEAR(std::abs(undone - ref), 0.0, 1e-12) << b;
    }
}

TEST(HardwareEfficient, ParameterCount) {
    EXPECT_EQ(build_hardware_efficient(4, 2).n_params(), 12U);
    EXPECT_EQ(build_hardware_efficient(1, 1).n_params(), 2U);
}

constexpr const char *kSmallTwoDesign = R"(
experiment = "two_design"
seed = 11
methods = ["GD", "SPSA", "QNSPSA"]
eta = 0.05
shots = 256
iterations = 6
n_runs = 2

[instance]
n_qubits = 4
reps = 1

[method_overrides.QNSPSA]
blocking = true
)";

TEST(Config, ParsesSharedAndOverriddenKeys) {
    const auto cfg = parse_config(kSmallTwoDesign);
    EXPECT_EQ(cfg.experiment, "two_design");
    EXPECT_EQ(cfg.seed, 11U);
    ASSERT_EQ(cfg.methods.size(), 3U);
    EXPECT_EQ(cfg.methods[0].method, Method::GD);
    EXPECT_EQ(cfg.methods[2].method, Method::QNSPSA);
    for (const auto &m : cfg.methods) {
        EXPECT_DOUBLE_EQ(m.eta, 0.05);
        EXPECT_EQ(m.shots, 256);
        EXPECT_EQ(m.fidelity_shots, 256);
        EXPECT_EQ(m.iterations, 6);
        EXPECT_EQ(m.blocking, m.method == Method::QNSPSA);
    }
    EXPECT_EQ(cfg.instance.n_qubits, 4U);
    EXPECT_EQ(cfg.instance.reps, 1U);
}

TEST(Config, DefaultsAreExplicit) {
    const auto cfg = parse_config("experiment = \"two_design\"\n");
    EXPECT_EQ(cfg.seed, 0U);
    EXPECT_FALSE(cfg.methods.empty());
    for (const auto &m : cfg.methods) {
        EXPECT_EQ(m.shots, 0);
        EXPECT_DOUBLE_EQ(m.epsilon, 0.01);
        if (m.method == Method::QNG) {
            EXPECT_DOUBLE_EQ(m.beta, 0.0);
        } else {
            EXPECT_DOUBLE_EQ(m.beta, 1e-3);
        }
    }
}

TEST(Config, AliasNeedsMethodKey) {
    const auto cfg = parse_config(R"(
experiment = "maxcut"
methods = ["SPSA_calibrated"]
[method_overrides.SPSA_calibrated]
method = "SPSA"
calibrate_target = 0.1
)");
    ASSERT_EQ(cfg.methods.size(), 1U);
    EXPECT_EQ(cfg.methods[0].label, "SPSA_calibrated");
    EXPECT_EQ(cfg.methods[0].method, Method::SPSA);
    ASSERT_TRUE(cfg.methods[0].calibrate_target.has_value());
    EXPECT_DOUBLE_EQ(*cfg.methods[0].calibrate_target, 0.1);
    EXPECT_THROW(parse_config("experiment = \"maxcut\"\nmethods = [\"FAST\"]\n"),
                 ConfigError);
}

TEST(Config, RejectsUnknownKeys) {
    EXPECT_THROW(parse_config("experiment = \"two_design\"\nlearning_rate = 1\n"),
                 ConfigError);
    EXPECT_THROW(parse_config("experiment = \"two_design\"\n[instance]\nqubits = 3\n"),
                 ConfigError);
    EXPECT_THROW(parse_config(
                     "experiment = \"two_design\"\n[method_overrides.SPSA]\nspeed = 3\n"),
                 ConfigError);
    EXPECT_THROW(parse_config("experiment = \"two_design\"\n[extras]\n"), ConfigError);
}

TEST(Config, UnknownExperimentNamesValidOnes) {
    try {
        parse_config("experiment = \"teleport\"\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError &e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("teleport"), std::string::npos);
        for (const auto &name : experiment_names()) {
            EXPECT_NE(msg.find(name), std::string::npos) << name;
        }
    }
}

TEST(Config, TypeAndSyntaxErrors) {
    EXPECT_THROW(parse_config("experiment = 3\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = \"two_design\"\neta = \"big\"\n"), ConfigError);
    EXPECT_THROW(parse_config("experiment = \"two_design\"\neta = [\n"), ConfigError);
    EXPECT_THROW(parse_config("seed = 1\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/config.toml"), ConfigError);
}

TEST(Config, DeterministicMethodsRunOnce) {
    const auto cfg = parse_config(kSmallTwoDesign);
    EXPECT_EQ(cfg.methods[0].n_runs, 1);
    EXPECT_EQ(cfg.methods[1].n_runs, 2);
}

TEST(Config, RelativePathsResolveAgainstConfigDir) {
    const auto dir = std::filesystem::temp_directory_path() / "qnspsa_expcli_resolve";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "h.txt") << "1.0 Z\n";
    const std::string text =
        "experiment = \"vqe_file\"\n[instance]\nhamiltonian_file = \"h.txt\"\n";
    const auto cfg = parse_config(text, dir);
    EXPECT_EQ(cfg.resolve(cfg.instance.hamiltonian_file), dir / "h.txt");
    EXPECT_EQ(cfg.resolve("/abs/h.txt"), std::filesystem::path("/abs/h.txt"));
    std::filesystem::remove_all(dir);
    EXPECT_THROW(parse_config(text, dir), ConfigError);
}

TEST(Config, ShippedConfigsLoad) {
    for (const auto &entry : std::filesystem::directory_iterator(QNSPSA_CONFIG_DIR)) {
        if (entry.path().extension() == ".toml") {
            EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
        }
    }
}

TEST(Config, JsonEmbedsResolvedConfig) {
    const auto cfg = parse_config(kSmallTwoDesign);
    const auto j = Json::parse(config_json(cfg));
    EXPECT_EQ(j["experiment"], "two_design");
    EXPECT_EQ(j["seed"], 11);
    ASSERT_EQ(j["methods"].size(), 3U);
    EXPECT_EQ(j["methods"][2]["label"], "QNSPSA");
    EXPECT_EQ(j["methods"][2]["blocking"], true);
    EXPECT_EQ(j["methods"][2]["blocking_tolerance"], "auto");
    EXPECT_EQ(j["methods"][0]["shots"], 256);
    EXPECT_DOUBLE_EQ(j["methods"][1]["beta"].get<double>(), 1e-3);
    EXPECT_EQ(j["instance"]["n_qubits"], 4);
}

TEST(RunSeed, DeterministicAndDistinct) {
    EXPECT_EQ(run_seed(3, 0), run_seed(3, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < 4; ++s) {
        for (std::uint64_t r = 0; r < 25; ++r) {
            seen.insert(run_seed(s, r));
        }
    }
    EXPECT_EQ(seen.size(), 100U);
}

TEST(ParallelMap, KeepsIndexOrder) {
    for (int jobs : {1, 3, 8}) {
        const auto out = parallel_map(100, jobs, [](std::size_t i) {
            std::this_thread::sleep_for(std::chrono::microseconds((i * 37) % 11));
            return static_cast<int>(i * i);
        });
        ASSERT_EQ(out.size(), 100U);
        for (std::size_t i = 0; i < out.size(); ++i) {
            EXPECT_EQ(out[i], static_cast<int>(i * i));
        }
    }
}

TEST(ParallelMap, RethrowsWorkerErrors) {
    for (int jobs : {1, 4}) {
        EXPECT_THROW(parallel_map(20, jobs,
                                  [](std::size_t i) {
                                      if (i == 7) {
                                          throw std::runtime_error("boom");
                                      }
                                      return i;
                                  }),
                     std::runtime_error);
    }
}

TEST(ParallelMap, EmptyRange) {
    EXPECT_TRUE(parallel_map(0, 4, [](std::size_t i) { return i; }).empty());
}

// Parses trace.csv into rows of (method, run, k).
std::vector<std::tuple<std::string, int, int>> trace_keys(const std::string &csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "experiment,method,run,k,loss,evals,accepted,wall_ms");
    std::vector<std::tuple<std::string, int, int>> rows;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::istringstream fields(line);
        std::string f;
        while (std::getline(fields, f, ',')) {
            cols.push_back(f);
        }
        EXPECT_EQ(cols.size(), 8U) << line;
        if (cols.size() == 8) {
            rows.emplace_back(cols[1], std::stoi(cols[2]), std::stoi(cols[3]));
        }
    }
    return rows;
}

TEST(RunExperiment, TraceIsByteIdenticalAcrossRunsAndJobs) {
    const auto cfg = parse_config(kSmallTwoDesign);
    const auto a = render_trace(cfg, run_experiment(cfg, 1));
    const auto b = render_trace(cfg, run_experiment(cfg, 1));
    const auto c = render_trace(cfg, run_experiment(cfg, 4));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    auto other = cfg;
    other.seed = 12;
    EXPECT_NE(a, render_trace(other, run_experiment(other, 1)));
}

TEST(RunExperiment, TraceRowsIncreaseInK) {
    auto cfg = parse_config(kSmallTwoDesign);
    const auto res = run_experiment(cfg, 2);
    const auto rows = trace_keys(render_trace(cfg, res));
    // Exact GD runs once; SPSA and QN-SPSA twice; 7 records each.
    EXPECT_EQ(rows.size(), 5U * 7U);
    std::map<std::pair<std::string, int>, int> last;
    for (const auto &[method, run, k] : rows) {
        const auto key = std::make_pair(method, run);
        if (last.count(key) != 0) {
            EXPECT_GT(k, last[key]) << method << " run " << run;
        }
        last[key] = k;
    }
    cfg.trace_every = 4;
    const auto thinned = trace_keys(render_trace(cfg, res));
    for (const auto &[method, run, k] : thinned) {
        EXPECT_TRUE(k % 4 == 0 || k == 6) << k;
    }
    EXPECT_EQ(thinned.size(), 5U * 3U);
}

TEST(RunExperiment, SummaryContents) {
    const auto cfg = parse_config(kSmallTwoDesign);
    const auto res = run_experiment(cfg, 1);
    ASSERT_TRUE(res.ok) << res.message;
    const auto &s = res.summary;
    EXPECT_EQ(s["experiment"], "two_design");
    EXPECT_EQ(s["config"], nlohmann::ordered_json::parse(config_json(cfg)));
    EXPECT_EQ(s["instance"]["n_params"], 8);
    EXPECT_EQ(s["instance"]["initial_point"].size(), 8U);
    for (const char *label : {"GD", "SPSA", "QNSPSA"}) {
        const auto &m = s["methods"][label];
        EXPECT_EQ(m["runs"], label == std::string("GD") ? 1 : 2) << label;
        EXPECT_EQ(m["failed_runs"], 0) << label;
        EXPECT_TRUE(m.contains("final_loss_mean"));
        EXPECT_TRUE(m.contains("total_evaluations"));
    }
    EXPECT_EQ(s["methods"]["GD"]["evaluations_per_iteration"], 8);
    EXPECT_EQ(s["methods"]["SPSA"]["evaluations_per_iteration"], 2);
}

TEST(RunExperiment, MethodsShareInitialPoint) {
    const auto cfg = parse_config(kSmallTwoDesign);
    const auto res = run_experiment(cfg, 1);
    std::set<double> first_losses;
    for (const auto &r : res.runs) {
        first_losses.insert(r.result.records.front().loss);
    }
    // Exact GD and the sampled methods differ only by shot noise at k = 0;
    // one initial point means every run starts from the same state.
    const auto inst = build_two_design(4, 1, 11);
    std::vector<double> init;
    for (const auto &x : res.summary["instance"]["initial_point"]) {
        init.push_back(x.get<double>());
    }
    const Vector theta = Eigen::Map<const Vector>(init.data(), static_cast<Eigen::Index>(init.size()));
    const double exact = expectation_exact(run(inst.circuit, theta), inst.observable);
    for (double l : first_losses) {
        EXPECT_NEAR(l, exact, 0.25);
    }
}

TEST(RunExperiment, QfimCheckExperiment) {
    const auto cfg = parse_config("experiment = \"qfim_check\"\n[instance]\nn_circuits = 5\n");
    const auto res = run_experiment(cfg, 1);
    EXPECT_TRUE(res.ok) << res.message;
    EXPECT_EQ(res.summary["qfim_check"]["circuits"], 5);
    ASSERT_EQ(res.extra_files.count("checks.csv"), 1U);
}

TEST(RunExperiment, ConvergenceGridFile) {
    const auto cfg = parse_config(R"(
experiment = "convergence_region"
methods = ["QNG"]
iterations = 20
[instance]
grid_size = 3
[method_overrides.QNG]
eta = 0.225
)");
    const auto res = run_experiment(cfg, 2);
    ASSERT_EQ(res.extra_files.count("grid.csv"), 1U);
    std::istringstream in(res.extra_files.at("grid.csv"));
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 9);
    EXPECT_EQ(res.summary["methods"]["QNG"]["grid_points"], 9);
}

TEST(RunExperiment, VqeFileQubitMismatch) {
    const auto dir = std::filesystem::temp_directory_path() / "qnspsa_expcli_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream f(dir / "h.txt");
        f << "1.0 ZZ\n0.5 XI\n";
    }
    auto cfg = parse_config(
        "experiment = \"vqe_file\"\niterations = 3\n[instance]\nhamiltonian_file = "
        "\"h.txt\"\nn_qubits = 3\n",
        dir);
    EXPECT_THROW(run_experiment(cfg, 1), ConfigError);
    cfg.instance.n_qubits = 2;
    const auto res = run_experiment(cfg, 1);
    EXPECT_TRUE(res.ok) << res.message;
    EXPECT_NEAR(res.summary["instance"]["reference_optimum"].get<double>(),
                -std::sqrt(1.25), 1e-12);
    cfg.instance.hamiltonian_file = "missing.txt";
    EXPECT_THROW(run_experiment(cfg, 1), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST(RunExperiment, WritesOutputFiles) {
    const auto cfg = parse_config(kSmallTwoDesign);
    const auto res = run_experiment(cfg, 1);
    const auto dir = std::filesystem::temp_directory_path() / "qnspsa_expcli_out";
    std::filesystem::remove_all(dir);
    write_outputs(cfg, res, dir);
    std::ifstream trace(dir / "trace.csv", std::ios::binary);
    std::ostringstream text;
    text << trace.rdbuf();
    EXPECT_EQ(text.str(), render_trace(cfg, res));
    std::ifstream summary(dir / "summary.json");
    EXPECT_EQ(Json::parse(summary)["experiment"], "two_design");
    std::filesystem::remove_all(dir);
}

TEST(Checks, QfimCheckPasses) {
    const auto r = qfim_check(20, 4, 8, 1e-3, 1e-5, 0);
    EXPECT_EQ(r.circuits.size(), 20U);
    EXPECT_TRUE(r.passed);
    EXPECT_LE(r.max_abs_deviation, 1e-5);
    for (const auto &c : r.circuits) {
        EXPECT_LE(c.n_qubits, 4U);
        EXPECT_LE(c.n_params, 8U);
        EXPECT_LE(c.max_abs_deviation, r.max_abs_deviation);
    }
}

TEST(Checks, QfimCheckFailsOnTightTolerance) {
    EXPECT_FALSE(qfim_check(5, 3, 6, 1e-3, 1e-15, 0).passed);
}

TEST(Checks, EstimatorChecksPass) {
    const auto checks = estimator_checks();
    EXPECT_GE(checks.size(), 2U);
    for (const auto &c : checks) {
        EXPECT_TRUE(c.passed) << c.name << " " << c.max_abs_error;
    }
}

} // namespace
} // namespace qnspsa
