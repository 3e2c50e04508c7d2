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
#include "qnspsa/expcli/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qnspsa/expcli/builders.hpp"
#include "qnspsa/expcli/checks.hpp"
#include "qnspsa/expcli/parallel.hpp"
#include "qnspsa/observables/expectation.hpp"
#include "qnspsa/qbm/qbm.hpp"

namespace qnspsa {

using Json = nlohmann::ordered_json;

std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run) {
    return make_stream(seed, 1000 + run)();
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double mean(const std::vector<double> &v) {
    if (v.empty()) {
        return 0.0;
    }
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double> &v) {
    if (v.size() < 2) {
        return 0.0;
    }
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) {
        s += (x - m) * (x - m);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

Vector initial_point(std::uint64_t seed, std::size_t dim) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(StreamTag::InitialPoint));
    return random_point(dim, rng);
}

struct Task {
    const MethodSettings *method;
    int run;
};

std::vector<Task> expand_runs(const std::vector<MethodSettings> &methods) {
    std::vector<Task> tasks;
    for (const auto &m : methods) {
        for (int r = 0; r < m.n_runs; ++r) {
            tasks.push_back({&m, r});
        }
    }
    return tasks;
}

/// Every method of `methods` for n_runs runs on one instance.
std::vector<RunOutput> run_methods(const ExperimentConfig &cfg,
                                   const std::vector<MethodSettings> &methods,
                                   const Circuit &circuit, const PauliSum &obs,
                                   const Vector &initial,
                                   std::optional<double> reference, int jobs) {
    const auto tasks = expand_runs(methods);
    return parallel_map(tasks.size(), jobs, [&](std::size_t i) {
        const auto &t = tasks[i];
        const auto problem =
            make_circuit_problem(circuit, obs, initial, EvalMode{t.method->shots},
                                 EvalMode{t.method->fidelity_shots});
        RunOutput out;
        out.label = t.method->label;
        out.run = t.run;
        out.reference = reference;
        out.result = optimize(
            t.method->optimizer(run_seed(cfg.seed, static_cast<std::uint64_t>(t.run)),
                                cfg.record_wall_time),
            problem);
        return out;
    });
}

Json method_summary(const MethodSettings &m, const std::vector<RunOutput> &runs,
                    double threshold, long dim, long bases) {
    std::vector<double> finals;
    std::vector<double> errors;
    std::vector<double> evals;
    std::vector<double> setup;
    long total = 0;
    int failed = 0;
    int converged = 0;
    for (const auto &r : runs) {
        if (r.label != m.label) {
            continue;
        }
        const auto &last = r.result.records.back();
        finals.push_back(last.loss);
        evals.push_back(static_cast<double>(last.evaluations));
        setup.push_back(static_cast<double>(r.result.setup_evaluations));
        total += last.evaluations + r.result.setup_evaluations;
        failed += r.result.failed ? 1 : 0;
        if (r.reference) {
            const double err = last.loss - *r.reference;
            errors.push_back(err);
            converged += std::abs(err) < threshold ? 1 : 0;
        }
    }
    Json j;
    j["method"] = std::string(method_name(m.method));
    j["runs"] = finals.size();
    j["failed_runs"] = failed;
    j["final_loss_mean"] = mean(finals);
    j["final_loss_std"] = stddev(finals);
    if (!errors.empty()) {
        j["final_error_mean"] = mean(errors);
        j["final_error_std"] = stddev(errors);
        j["convergence_fraction"] =
            static_cast<double>(converged) / static_cast<double>(errors.size());
    }
    j["evaluations_per_run_mean"] = mean(evals);
    j["setup_evaluations_per_run_mean"] = mean(setup);
    j["total_evaluations"] = total;
    if (dim > 0) {
        j["evaluations_per_iteration"] =
            evaluations_per_iteration(m.optimizer(0, false), dim, bases);
    }
    return j;
}

void add_method_summaries(const ExperimentConfig &cfg,
                          const std::vector<MethodSettings> &methods,
                          ExperimentResult &res, long dim, long bases) {
    Json all = Json::object();
    for (const auto &m : methods) {
        all[m.label] = method_summary(m, res.runs, cfg.instance.convergence_threshold,
                                      dim, bases);
    }
    res.summary["methods"] = all;
    for (const auto &r : res.runs) {
        if (r.result.failed) {
            res.ok = false;
            res.message = r.label + " run " + std::to_string(r.run) +
                          " failed: " + r.result.error;
            break;
        }
    }
}

Json instance_json(const Circuit &c, const PauliSum &obs) {
    Json j;
    j["n_qubits"] = c.n_qubits();
    j["n_params"] = c.n_params();
    j["measurement_bases"] = measurement_bases(obs);
    Json terms = Json::array();
    for (const auto &t : obs.terms()) {
        terms.push_back({{"coefficient", t.coefficient}, {"label", t.string.label()}});
    }
    j["observable"] = terms;
    return j;
}

ExperimentResult circuit_experiment(const ExperimentConfig &cfg,
                                    const std::vector<MethodSettings> &methods,
                                    const Circuit &circuit, const PauliSum &obs,
                                    std::optional<double> reference, int jobs) {
    ExperimentResult res;
    const Vector init = initial_point(cfg.seed, circuit.n_params());
    res.runs = run_methods(cfg, methods, circuit, obs, init, reference, jobs);
    res.summary["instance"] = instance_json(circuit, obs);
    if (reference) {
        res.summary["instance"]["reference_optimum"] = *reference;
    }
    res.summary["instance"]["initial_point"] =
        std::vector<double>(init.data(), init.data() + init.size());
    add_method_summaries(cfg, methods, res, static_cast<long>(circuit.n_params()),
                         static_cast<long>(measurement_bases(obs)));
    return res;
}

ExperimentResult run_two_design(const ExperimentConfig &cfg, int jobs) {
    const auto inst = build_two_design(cfg.instance.n_qubits, cfg.instance.reps, cfg.seed);
    return circuit_experiment(cfg, cfg.methods, inst.circuit, inst.observable,
                              -1.0, jobs);
}

ExperimentResult run_regularization_sweep(const ExperimentConfig &cfg, int jobs) {
    std::vector<MethodSettings> methods;
    for (const auto &m : cfg.methods) {
        if (m.method != Method::QNSPSA) {
            methods.push_back(m);
            continue;
        }
        for (double b : cfg.instance.betas) {
            MethodSettings s = m;
            s.beta = b;
            s.label = m.label + "_beta=" + fmt(b);
            methods.push_back(s);
        }
    }
    const auto inst = build_two_design(cfg.instance.n_qubits, cfg.instance.reps, cfg.seed);
    auto res = circuit_experiment(cfg, methods, inst.circuit, inst.observable, -1.0, jobs);
    res.summary["swept_betas"] = cfg.instance.betas;
    return res;
}

ExperimentResult run_maxcut(const ExperimentConfig &cfg, int jobs) {
    const auto inst = build_maxcut(cfg.instance.qaoa_layers);
    const double optimum = diagonal_minimum(inst.observable);
    auto res = circuit_experiment(cfg, cfg.methods, inst.circuit, inst.observable,
                                  optimum, jobs);
    res.summary["instance"]["mixer"] = "sum_i X_i / 20";
    res.summary["instance"]["qaoa_layers"] = cfg.instance.qaoa_layers;
    return res;
}

ExperimentResult run_vqe_file(const ExperimentConfig &cfg, int jobs) {
    const auto path = cfg.resolve(cfg.instance.hamiltonian_file);
    PauliSum h(1);
    try {
        h = read_hamiltonian_file(path.string());
    } catch (const std::exception &e) {
        throw ConfigError(std::string("cannot read Hamiltonian: ") + e.what());
    }
    const auto n = h.n_qubits();
    const auto &inst = cfg.instance;
    if (inst.n_qubits != 0 && inst.n_qubits != n) {
        throw ConfigError("instance.n_qubits = " + std::to_string(inst.n_qubits) +
                          " but " + path.string() + " acts on " + std::to_string(n) +
                          " qubits");
    }
    Circuit circuit(n);
    if (inst.ansatz == "two_design") {
        if (n < 2) {
            throw ConfigError("two_design ansatz needs at least 2 qubits");
        }
        circuit = build_two_design(n, inst.reps, cfg.seed).circuit;
    } else if (inst.ansatz == "hardware_efficient") {
        circuit = build_hardware_efficient(n, inst.reps);
    } else if (inst.ansatz == "convergence") {
        if (n != 2) {
            throw ConfigError("convergence ansatz acts on 2 qubits but the "
                              "Hamiltonian acts on " + std::to_string(n));
        }
        circuit = build_convergence_problem().circuit;
    } else {
        try {
            circuit = build_qaoa(h, inst.qaoa_layers, 1.0);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("qaoa ansatz: ") + e.what());
        }
    }
    std::optional<double> reference;
    if (n <= 10) {
        const ComplexMatrix dense = dense_matrix(h);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(dense, Eigen::EigenvaluesOnly);
        reference = eig.eigenvalues().minCoeff();
    }
    auto res = circuit_experiment(cfg, cfg.methods, circuit, h, reference, jobs);
    res.summary["instance"]["ansatz"] = inst.ansatz;
    res.summary["instance"]["hamiltonian_file"] = path.string();
    return res;
}

ExperimentResult run_qfim(const ExperimentConfig &cfg) {
    const auto &i = cfg.instance;
    const auto check = qfim_check(i.n_circuits, i.max_qubits, i.max_params, i.fd_step,
                                  i.tolerance, cfg.seed);
    ExperimentResult res;
    std::ostringstream csv;
    csv << "circuit,n_qubits,n_params,max_abs_deviation\n";
    for (std::size_t c = 0; c < check.circuits.size(); ++c) {
        const auto &e = check.circuits[c];
        csv << c << ',' << e.n_qubits << ',' << e.n_params << ','
            << fmt(e.max_abs_deviation) << '\n';
    }
    res.extra_files["checks.csv"] = csv.str();
    res.summary["qfim_check"] = {{"circuits", check.circuits.size()},
                                 {"max_abs_deviation", check.max_abs_deviation},
                                 {"tolerance", check.tolerance},
                                 {"passed", check.passed}};
    res.ok = check.passed;
    if (!check.passed) {
        res.message = "qfim_check: max deviation " + fmt(check.max_abs_deviation) +
                      " exceeds " + fmt(check.tolerance);
    }
    return res;
}

ExperimentResult run_convergence_region(const ExperimentConfig &cfg, int jobs) {
    const auto inst = build_convergence_problem();
    const double ground = diagonal_minimum(inst.observable);
    const int g = cfg.instance.grid_size;
    const double threshold = cfg.instance.convergence_threshold;
    std::vector<double> axis(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        axis[static_cast<std::size_t>(i)] = -kPi + 2.0 * kPi * i / (g - 1);
    }
    struct PointTask {
        const MethodSettings *method;
        int point;
    };
    std::vector<PointTask> tasks;
    for (const auto &m : cfg.methods) {
        for (int p = 0; p < g * g; ++p) {
            tasks.push_back({&m, p});
        }
    }
    struct PointResult {
        std::vector<RunOutput> runs;
        bool converged = false;
        double best_error = 0.0;
    };
    auto results = parallel_map(tasks.size(), jobs, [&](std::size_t ti) {
        const auto &t = tasks[ti];
        Vector init(3);
        init << 0.0, axis[static_cast<std::size_t>(t.point / g)],
            axis[static_cast<std::size_t>(t.point % g)];
        const auto problem = make_circuit_problem(
            inst.circuit, inst.observable, init, EvalMode{t.method->shots},
            EvalMode{t.method->fidelity_shots});
        PointResult pr;
        pr.best_error = std::numeric_limits<double>::infinity();
        for (int r = 0; r < t.method->n_runs; ++r) {
            const int run = t.point * t.method->n_runs + r;
            RunOutput out;
            out.label = t.method->label;
            out.run = run;
            out.reference = ground;
            out.result = optimize(
                t.method->optimizer(run_seed(cfg.seed, static_cast<std::uint64_t>(run)),
                                    cfg.record_wall_time),
                problem);
            const double err = std::abs(out.result.records.back().loss - ground);
            pr.best_error = std::min(pr.best_error, err);
            pr.converged = pr.converged || err < threshold;
            pr.runs.push_back(std::move(out));
        }
        return pr;
    });

    ExperimentResult res;
    std::ostringstream grid;
    grid << "method,point,theta1,theta2,converged,best_abs_error,first_run,n_runs\n";
    std::map<std::string, int> converged;
    for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
        const auto &t = tasks[ti];
        auto &pr = results[ti];
        converged[t.method->label] += pr.converged ? 1 : 0;
        grid << t.method->label << ',' << t.point << ','
             << fmt(axis[static_cast<std::size_t>(t.point / g)]) << ','
             << fmt(axis[static_cast<std::size_t>(t.point % g)]) << ','
             << (pr.converged ? 1 : 0) << ',' << fmt(pr.best_error) << ','
             << t.point * t.method->n_runs << ',' << t.method->n_runs << '\n';
        for (auto &r : pr.runs) {
            res.runs.push_back(std::move(r));
        }
    }
    res.extra_files["grid.csv"] = grid.str();
    res.summary["instance"] = instance_json(inst.circuit, inst.observable);
    res.summary["instance"]["reference_optimum"] = ground;
    res.summary["instance"]["grid_axis"] = axis;
    res.summary["instance"]["initial_phase"] = 0.0;
    add_method_summaries(cfg, cfg.methods, res, 3, 1);
    for (const auto &m : cfg.methods) {
        auto &j = res.summary["methods"][m.label];
        j["converged_points"] = converged[m.label];
        j["grid_points"] = g * g;
        j["point_convergence_fraction"] =
            static_cast<double>(converged[m.label]) / static_cast<double>(g * g);
        j["rule"] = m.n_runs > 1 ? "converged if any run converged" : "single run";
    }
    return res;
}

QbmConfig qbm_config(const ExperimentConfig &cfg, const MethodSettings &m) {
    const auto &q = cfg.qbm;
    QbmConfig c;
    c.target = q.target;
    c.omega_low = q.omega_low;
    c.omega_high = q.omega_high;
    c.eta = m.eta;
    c.epsilon = m.epsilon;
    c.iterations = m.iterations;
    c.n_state_averages = q.n_state_averages;
    c.backend = q.backend == "exact" ? GibbsBackend::Exact : GibbsBackend::VarQite;
    c.kT = q.kT;
    c.gibbs.n_steps = q.gibbs_steps;
    c.gibbs.total_time = 1.0 / (2.0 * q.kT);
    c.gibbs.metric = q.gibbs_metric == "analytic"
                         ? MetricMode::analytic()
                         : MetricMode::qnspsa(q.gibbs_resamplings, q.gibbs_epsilon,
                                              q.gibbs_beta);
    c.gibbs.lse_regularization = q.lse_regularization;
    return c;
}

ExperimentResult run_qbm(const ExperimentConfig &cfg, int jobs) {
    if (cfg.methods.size() != 1 || cfg.methods.front().method != Method::SPSA) {
        throw ConfigError("qbm_bell trains with a single SPSA method entry");
    }
    const auto &m = cfg.methods.front();
    try {
        qbm_config(cfg, m).validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    auto trained = parallel_map(static_cast<std::size_t>(m.n_runs), jobs, [&](std::size_t r) {
        auto c = qbm_config(cfg, m);
        c.seed = run_seed(cfg.seed, r);
        return train(c);
    });
    ExperimentResult res;
    Json runs = Json::array();
    std::vector<double> final_losses;
    for (std::size_t r = 0; r < trained.size(); ++r) {
        auto &t = trained[r];
        const auto &w0 = t.initial_omega;
        const auto &w = t.final_omega;
        runs.push_back({{"run", r},
                        {"initial_omega", {w0[0], w0[1], w0[2]}},
                        {"final_omega", {w[0], w[1], w[2]}},
                        {"final_probabilities", t.final_probabilities},
                        {"final_cross_entropy", t.final_loss},
                        {"final_exact_cross_entropy", t.final_exact_loss}});
        final_losses.push_back(t.final_loss);
        RunOutput out;
        out.label = m.label;
        out.run = static_cast<int>(r);
        out.result = std::move(t.run);
        res.runs.push_back(std::move(out));
    }
    add_method_summaries(cfg, cfg.methods, res, 3, 1);
    res.summary["methods"][m.label]["final_cross_entropy_mean"] = mean(final_losses);
    res.summary["methods"][m.label]["final_cross_entropy_std"] = stddev(final_losses);
    res.summary["qbm_runs"] = runs;
    res.summary["instance"] = {{"hamiltonian", "w1 Z0 Z1 + w2 Z0 + w3 Z1"},
                               {"ansatz_qubits", 4},
                               {"ansatz_params", 12},
                               {"target_entropy", cross_entropy(cfg.qbm.target,
                                                                cfg.qbm.target)}};
    return res;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig &cfg, int jobs) {
    ExperimentResult res;
    const auto &e = cfg.experiment;
    if (e == "two_design") {
        res = run_two_design(cfg, jobs);
    } else if (e == "regularization_sweep") {
        res = run_regularization_sweep(cfg, jobs);
    } else if (e == "maxcut") {
        res = run_maxcut(cfg, jobs);
    } else if (e == "vqe_file") {
        res = run_vqe_file(cfg, jobs);
    } else if (e == "qfim_check") {
        res = run_qfim(cfg);
    } else if (e == "convergence_region") {
        res = run_convergence_region(cfg, jobs);
    } else if (e == "qbm_bell") {
        res = run_qbm(cfg, jobs);
    } else {
        throw ConfigError("unknown experiment '" + e + "'");
    }
    Json summary;
    summary["experiment"] = e;
    summary["seed"] = cfg.seed;
    summary["ok"] = res.ok;
    if (!res.ok) {
        summary["message"] = res.message;
    }
    for (auto &[key, value] : res.summary.items()) {
        summary[key] = value;
    }
    summary["config"] = Json::parse(config_json(cfg));
    res.summary = std::move(summary);
    return res;
}

std::string render_trace(const ExperimentConfig &cfg, const ExperimentResult &res) {
    std::ostringstream out;
    out << "experiment,method,run,k,loss,evals,accepted,wall_ms\n";
    for (const auto &r : res.runs) {
        const auto &recs = r.result.records;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const auto &rec = recs[i];
            if (rec.k % cfg.trace_every != 0 && i + 1 != recs.size()) {
                continue;
            }
            out << cfg.experiment << ',' << r.label << ',' << r.run << ',' << rec.k
                << ',' << fmt(rec.loss) << ',' << rec.evaluations << ','
                << (rec.accepted ? 1 : 0) << ',' << fmt(rec.wall_ms) << '\n';
        }
    }
    return out.str();
}

void write_outputs(const ExperimentConfig &cfg, const ExperimentResult &res,
                   const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string &name, const std::string &content) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + (dir / name).string());
        }
        f << content;
        if (!f) {
            throw std::runtime_error("error writing " + (dir / name).string());
        }
    };
    write("trace.csv", render_trace(cfg, res));
    write("summary.json", res.summary.dump(2) + "\n");
    for (const auto &[name, content] : res.extra_files) {
        write(name, content);
    }
}

} // namespace qnspsa
