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
#include "qnspsa/expcli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "toml.hpp"

namespace qnspsa {

const std::vector<std::string> &experiment_names() {
    static const std::vector<std::string> names{
        "two_design", "convergence_region", "maxcut", "qbm_bell",
        "regularization_sweep", "qfim_check", "vqe_file"};
    return names;
}

OptimizerConfig MethodSettings::optimizer(std::uint64_t run_seed,
                                          bool record_wall_time) const {
    OptimizerConfig c;
    c.method = method;
    c.learning_rate = Schedule::constant(eta);
    c.perturbation = Schedule::constant(epsilon);
    c.beta = beta;
    c.normalized_regularization = normalized_regularization;
    c.iterations = iterations;
    c.blocking = blocking;
    if (blocking_tolerance >= 0.0) {
        c.blocking_tolerance = {BlockingTolerance::Kind::Fixed, blocking_tolerance};
    }
    c.max_rejections = max_rejections;
    c.n_resamplings = n_resamplings;
    c.calibrate_target = calibrate_target;
    c.calibration_probes = calibration_probes;
    c.seed = run_seed;
    c.record_wall_time = record_wall_time;
    return c;
}

std::filesystem::path ExperimentConfig::resolve(const std::string &path) const {
    std::filesystem::path p(path);
    return p.is_absolute() ? p : base_dir / p;
}

namespace {

const std::set<std::string> kRootKeys{
    "experiment", "seed", "output", "record_wall_time", "trace_every", "methods",
    "instance", "qbm", "method_overrides"};
const std::set<std::string> kMethodKeys{
    "method", "eta", "epsilon", "beta", "normalized_regularization", "shots",
    "fidelity_shots", "iterations", "n_runs", "n_resamplings", "blocking",
    "blocking_tolerance", "max_rejections", "calibrate_target",
    "calibration_probes"};
const std::set<std::string> kInstanceKeys{
    "n_qubits", "reps", "grid_size", "convergence_threshold", "qaoa_layers",
    "betas", "n_circuits", "max_qubits", "max_params", "fd_step", "tolerance",
    "hamiltonian_file", "ansatz"};
const std::set<std::string> kQbmKeys{
    "target", "target_file", "backend", "kT", "omega_low", "omega_high",
    "n_state_averages", "gibbs_steps", "gibbs_metric", "gibbs_resamplings",
    "gibbs_epsilon", "gibbs_beta", "lse_regularization"};

[[noreturn]] void fail(const std::string &msg) { throw ConfigError(msg); }

void check_keys(const toml::table &t, const std::set<std::string> &allowed,
                const std::string &where) {
    for (const auto &[key, node] : t) {
        if (allowed.count(std::string(key.str())) == 0) {
            fail("unknown key '" + std::string(key.str()) + "' in " + where);
        }
    }
}

template <typename T>
void read(const toml::table &t, const char *key, T &out, const std::string &where) {
    const auto *node = t.get(key);
    if (node == nullptr) {
        return;
    }
    if constexpr (std::is_same_v<T, bool>) {
        const auto v = node->value_exact<bool>();
        if (!v) {
            fail(where + "." + key + " must be a boolean");
        }
        out = *v;
    } else if constexpr (std::is_same_v<T, std::string>) {
        const auto v = node->value_exact<std::string>();
        if (!v) {
            fail(where + "." + key + " must be a string");
        }
        out = *v;
    } else if constexpr (std::is_floating_point_v<T>) {
        const auto v = node->value<double>();
        if (!v) {
            fail(where + "." + key + " must be a number");
        }
        out = *v;
    } else {
        const auto v = node->value_exact<std::int64_t>();
        if (!v) {
            fail(where + "." + key + " must be an integer");
        }
        if (*v < 0) {
            fail(where + "." + key + " must be non-negative");
        }
        out = static_cast<T>(*v);
    }
}

std::vector<double> read_numbers(const toml::node &node, const std::string &where) {
    const auto *arr = node.as_array();
    if (arr == nullptr) {
        fail(where + " must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto &el : *arr) {
        const auto v = el.value<double>();
        if (!v) {
            fail(where + " must be an array of numbers");
        }
        out.push_back(*v);
    }
    return out;
}

void read_method_keys(const toml::table &t, MethodSettings &m, const std::string &where) {
    if (const auto *node = t.get("method")) {
        const auto v = node->value_exact<std::string>();
        if (!v) {
            fail(where + ".method must be a string");
        }
        try {
            m.method = parse_method(*v);
        } catch (const std::invalid_argument &e) {
            fail(where + ": " + e.what());
        }
    }
    read(t, "eta", m.eta, where);
    read(t, "epsilon", m.epsilon, where);
    read(t, "beta", m.beta, where);
    read(t, "normalized_regularization", m.normalized_regularization, where);
    read(t, "shots", m.shots, where);
    read(t, "fidelity_shots", m.fidelity_shots, where);
    read(t, "iterations", m.iterations, where);
    read(t, "n_runs", m.n_runs, where);
    read(t, "n_resamplings", m.n_resamplings, where);
    read(t, "blocking", m.blocking, where);
    if (const auto *node = t.get("blocking_tolerance")) {
        if (const auto s = node->value_exact<std::string>()) {
            if (*s != "auto") {
                fail(where + ".blocking_tolerance must be \"auto\" or a number");
            }
            m.blocking_tolerance = -1.0;
        } else {
            read(t, "blocking_tolerance", m.blocking_tolerance, where);
            if (m.blocking_tolerance < 0.0) {
                fail(where + ".blocking_tolerance must be >= 0");
            }
        }
    }
    read(t, "max_rejections", m.max_rejections, where);
    if (t.get("calibrate_target") != nullptr) {
        double v = 0.0;
        read(t, "calibrate_target", v, where);
        m.calibrate_target = v;
    }
    read(t, "calibration_probes", m.calibration_probes, where);
}

void validate_method(const MethodSettings &m) {
    const std::string where = "method '" + m.label + "'";
    if (!(m.eta > 0.0) || !(m.epsilon > 0.0)) {
        fail(where + ": eta and epsilon must be > 0");
    }
    if (m.beta < 0.0) {
        fail(where + ": beta must be >= 0");
    }
    if ((m.method == Method::QNSPSA || m.method == Method::TwoSPSA) && !(m.beta > 0.0)) {
        fail(where + ": beta must be > 0 for " + std::string(method_name(m.method)));
    }
    if (m.iterations < 0 || m.n_runs < 1 || m.n_resamplings < 1 ||
        m.max_rejections < 1 || m.calibration_probes < 1) {
        fail(where + ": iterations >= 0, n_runs, n_resamplings, max_rejections "
                     "and calibration_probes >= 1 required");
    }
}

std::vector<std::string> default_methods(const std::string &experiment) {
    if (experiment == "two_design" || experiment == "convergence_region") {
        return {"GD", "QNG", "SPSA", "QNSPSA"};
    }
    if (experiment == "maxcut") {
        return {"QNSPSA", "SPSA"};
    }
    if (experiment == "regularization_sweep" || experiment == "vqe_file") {
        return {"QNSPSA"};
    }
    if (experiment == "qbm_bell") {
        return {"SPSA"};
    }
    return {};
}

void apply_instance_defaults(const std::string &experiment, InstanceSettings &inst) {
    if (experiment == "regularization_sweep") {
        inst.n_qubits = 9;
        inst.reps = 3;
    }
    if (experiment == "vqe_file") {
        inst.n_qubits = 0; // taken from the Hamiltonian file
        inst.reps = 2;
    }
}

} // namespace

ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path &base_dir) {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error &e) {
        std::ostringstream msg;
        msg << "TOML parse error: " << e.description() << " at line "
            << e.source().begin.line << ", column " << e.source().begin.column;
        fail(msg.str());
    }
    ExperimentConfig cfg;
    cfg.base_dir = base_dir;
    read(root, "experiment", cfg.experiment, "config");
    if (cfg.experiment.empty()) {
        fail("missing 'experiment' key");
    }
    const auto &names = experiment_names();
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end()) {
        std::string list;
        for (const auto &n : names) {
            list += (list.empty() ? "" : ", ") + n;
        }
        fail("unknown experiment '" + cfg.experiment + "' (valid: " + list + ")");
    }
    read(root, "seed", cfg.seed, "config");
    std::string output = cfg.output.string();
    read(root, "output", output, "config");
    cfg.output = output;
    read(root, "record_wall_time", cfg.record_wall_time, "config");
    read(root, "trace_every", cfg.trace_every, "config");
    if (cfg.trace_every < 1) {
        fail("trace_every must be >= 1");
    }

    MethodSettings shared;
    shared.fidelity_shots = -1;
    {
        toml::table method_part;
        for (const auto &[key, node] : root) {
            if (kMethodKeys.count(std::string(key.str())) != 0) {
                if (key.str() == "method") {
                    fail("'method' is only valid inside [method_overrides.<label>]");
                }
                method_part.insert(key, node);
            }
        }
        read_method_keys(method_part, shared, "config");
    }
    for (const auto &[key, node] : root) {
        (void)node;
        if (kMethodKeys.count(std::string(key.str())) == 0 &&
            kRootKeys.count(std::string(key.str())) == 0) {
            fail("unknown key '" + std::string(key.str()) + "'");
        }
    }

    std::vector<std::string> labels = default_methods(cfg.experiment);
    if (const auto *node = root.get("methods")) {
        const auto *arr = node->as_array();
        if (arr == nullptr) {
            fail("'methods' must be an array of strings");
        }
        labels.clear();
        for (const auto &el : *arr) {
            const auto v = el.value_exact<std::string>();
            if (!v) {
                fail("'methods' must be an array of strings");
            }
            labels.push_back(*v);
        }
    }
    const toml::table *overrides = nullptr;
    if (const auto *node = root.get("method_overrides")) {
        overrides = node->as_table();
        if (overrides == nullptr) {
            fail("'method_overrides' must be a table");
        }
        for (const auto &[key, sub] : *overrides) {
            if (std::find(labels.begin(), labels.end(), std::string(key.str())) ==
                labels.end()) {
                fail("method_overrides." + std::string(key.str()) +
                     " does not name an entry of 'methods'");
            }
        }
    }
    std::set<std::string> seen;
    for (const auto &label : labels) {
        if (!seen.insert(label).second) {
            fail("duplicate method label '" + label + "'");
        }
        MethodSettings m = shared;
        m.label = label;
        const toml::table *own = nullptr;
        if (overrides != nullptr) {
            if (const auto *sub = overrides->get(label)) {
                own = sub->as_table();
                if (own == nullptr) {
                    fail("method_overrides." + label + " must be a table");
                }
                check_keys(*own, kMethodKeys, "[method_overrides." + label + "]");
            }
        }
        if (own == nullptr || own->get("method") == nullptr) {
            try {
                m.method = parse_method(label);
            } catch (const std::invalid_argument &) {
                fail("method label '" + label +
                     "' is not a method name; set 'method' in [method_overrides." +
                     label + "]");
            }
        }
        if (m.method == Method::QNG && (own == nullptr || own->get("beta") == nullptr)) {
            m.beta = 0.0;
        }
        if (own != nullptr) {
            read_method_keys(*own, m, "method_overrides." + label);
        }
        if (m.fidelity_shots < 0) {
            m.fidelity_shots = m.shots;
        }
        if (!is_stochastic(m.method)) {
            m.n_runs = 1;
        }
        validate_method(m);
        cfg.methods.push_back(m);
    }

    auto &inst = cfg.instance;
    apply_instance_defaults(cfg.experiment, inst);
    if (const auto *node = root.get("instance")) {
        const auto *t = node->as_table();
        if (t == nullptr) {
            fail("'instance' must be a table");
        }
        check_keys(*t, kInstanceKeys, "[instance]");
        read(*t, "n_qubits", inst.n_qubits, "instance");
        read(*t, "reps", inst.reps, "instance");
        read(*t, "grid_size", inst.grid_size, "instance");
        read(*t, "convergence_threshold", inst.convergence_threshold, "instance");
        read(*t, "qaoa_layers", inst.qaoa_layers, "instance");
        if (const auto *b = t->get("betas")) {
            inst.betas = read_numbers(*b, "instance.betas");
        }
        read(*t, "n_circuits", inst.n_circuits, "instance");
        read(*t, "max_qubits", inst.max_qubits, "instance");
        read(*t, "max_params", inst.max_params, "instance");
        read(*t, "fd_step", inst.fd_step, "instance");
        read(*t, "tolerance", inst.tolerance, "instance");
        read(*t, "hamiltonian_file", inst.hamiltonian_file, "instance");
        read(*t, "ansatz", inst.ansatz, "instance");
    }
    if (inst.grid_size < 2 || inst.n_circuits < 1 || inst.max_qubits < 2 ||
        inst.max_params < 1 || !(inst.fd_step > 0.0)) {
        fail("instance: grid_size >= 2, n_circuits >= 1, max_qubits >= 2, "
             "max_params >= 1 and fd_step > 0 required");
    }
    for (double b : inst.betas) {
        if (!(b > 0.0)) {
            fail("instance.betas entries must be > 0");
        }
    }
    if (cfg.experiment == "vqe_file") {
        if (inst.hamiltonian_file.empty()) {
            fail("vqe_file needs instance.hamiltonian_file");
        }
        if (!std::filesystem::exists(cfg.resolve(inst.hamiltonian_file))) {
            fail("Hamiltonian file not found: " +
                 cfg.resolve(inst.hamiltonian_file).string());
        }
        static const std::set<std::string> ansatze{"two_design", "hardware_efficient",
                                                   "convergence", "qaoa"};
        if (ansatze.count(inst.ansatz) == 0) {
            fail("unknown ansatz '" + inst.ansatz +
                 "' (valid: two_design, hardware_efficient, convergence, qaoa)");
        }
    }

    auto &q = cfg.qbm;
    if (const auto *node = root.get("qbm")) {
        const auto *t = node->as_table();
        if (t == nullptr) {
            fail("'qbm' must be a table");
        }
        check_keys(*t, kQbmKeys, "[qbm]");
        if (const auto *tg = t->get("target")) {
            q.target = read_numbers(*tg, "qbm.target");
        }
        read(*t, "target_file", q.target_file, "qbm");
        read(*t, "backend", q.backend, "qbm");
        read(*t, "kT", q.kT, "qbm");
        read(*t, "omega_low", q.omega_low, "qbm");
        read(*t, "omega_high", q.omega_high, "qbm");
        read(*t, "n_state_averages", q.n_state_averages, "qbm");
        read(*t, "gibbs_steps", q.gibbs_steps, "qbm");
        read(*t, "gibbs_metric", q.gibbs_metric, "qbm");
        read(*t, "gibbs_resamplings", q.gibbs_resamplings, "qbm");
        read(*t, "gibbs_epsilon", q.gibbs_epsilon, "qbm");
        read(*t, "gibbs_beta", q.gibbs_beta, "qbm");
        if (t->get("lse_regularization") != nullptr) {
            double v = 0.0;
            read(*t, "lse_regularization", v, "qbm");
            q.lse_regularization = v;
        }
    }
    if (!q.target_file.empty()) {
        const auto path = cfg.resolve(q.target_file);
        std::ifstream in(path);
        if (!in) {
            fail("target file not found: " + path.string());
        }
        try {
            const auto j = nlohmann::json::parse(in);
            q.target = j.get<std::vector<double>>();
        } catch (const std::exception &e) {
            fail("target file " + path.string() + " is not a JSON array of numbers: " +
                 e.what());
        }
        q.target_file = path.string();
    }
    if (q.backend != "varqite" && q.backend != "exact") {
        fail("qbm.backend must be \"varqite\" or \"exact\"");
    }
    if (q.gibbs_metric != "qnspsa" && q.gibbs_metric != "analytic") {
        fail("qbm.gibbs_metric must be \"qnspsa\" or \"analytic\"");
    }
    if (q.gibbs_steps < 1 || q.gibbs_resamplings < 1 || !(q.kT > 0.0) ||
        !(q.gibbs_epsilon > 0.0) || !(q.gibbs_beta > 0.0)) {
        fail("qbm: gibbs_steps, gibbs_resamplings >= 1 and kT, gibbs_epsilon, "
             "gibbs_beta > 0 required");
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    auto base = path.parent_path();
    if (base.empty()) {
        base = ".";
    }
    return parse_config(text.str(), base);
}

std::string config_json(const ExperimentConfig &cfg) {
    nlohmann::ordered_json j;
    j["experiment"] = cfg.experiment;
    j["seed"] = cfg.seed;
    j["output"] = cfg.output.string();
    j["record_wall_time"] = cfg.record_wall_time;
    j["trace_every"] = cfg.trace_every;
    auto &methods = j["methods"] = nlohmann::ordered_json::array();
    for (const auto &m : cfg.methods) {
        nlohmann::ordered_json e;
        e["label"] = m.label;
        e["method"] = std::string(method_name(m.method));
        e["eta"] = m.eta;
        e["epsilon"] = m.epsilon;
        e["beta"] = m.beta;
        e["normalized_regularization"] = m.normalized_regularization;
        e["shots"] = m.shots;
        e["fidelity_shots"] = m.fidelity_shots;
        e["iterations"] = m.iterations;
        e["n_runs"] = m.n_runs;
        e["n_resamplings"] = m.n_resamplings;
        e["blocking"] = m.blocking;
        if (m.blocking_tolerance < 0.0) {
            e["blocking_tolerance"] = "auto";
        } else {
            e["blocking_tolerance"] = m.blocking_tolerance;
        }
        e["max_rejections"] = m.max_rejections;
        e["calibrate_target"] =
            m.calibrate_target ? nlohmann::ordered_json(*m.calibrate_target) : nullptr;
        e["calibration_probes"] = m.calibration_probes;
        e["learning_rate_exponent_if_calibrated"] = kLearningRateExponent;
        e["perturbation_exponent_if_calibrated"] = kPerturbationExponent;
        methods.push_back(e);
    }
    const auto &i = cfg.instance;
    j["instance"] = {{"n_qubits", i.n_qubits},
                     {"reps", i.reps},
                     {"grid_size", i.grid_size},
                     {"convergence_threshold", i.convergence_threshold},
                     {"qaoa_layers", i.qaoa_layers},
                     {"qaoa_initial_hadamard_layer", true},
                     {"betas", i.betas},
                     {"n_circuits", i.n_circuits},
                     {"max_qubits", i.max_qubits},
                     {"max_params", i.max_params},
                     {"fd_step", i.fd_step},
                     {"tolerance", i.tolerance},
                     {"hamiltonian_file", i.hamiltonian_file},
                     {"ansatz", i.ansatz},
                     {"initial_point", "uniform [-pi, pi) from seed stream 7"}};
    const auto &q = cfg.qbm;
    j["qbm"] = {{"target", q.target},
                {"target_file", q.target_file},
                {"backend", q.backend},
                {"kT", q.kT},
                {"omega_low", q.omega_low},
                {"omega_high", q.omega_high},
                {"n_state_averages", q.n_state_averages},
                {"gibbs_steps", q.gibbs_steps},
                {"gibbs_metric", q.gibbs_metric},
                {"gibbs_resamplings", q.gibbs_resamplings},
                {"gibbs_epsilon", q.gibbs_epsilon},
                {"gibbs_beta", q.gibbs_beta},
                {"gibbs_smoothing", "running mean across time steps, k = step"},
                {"probability_floor", 1e-10},
                {"lse_regularization",
                 q.lse_regularization
                     ? nlohmann::ordered_json(*q.lse_regularization)
                     : nlohmann::ordered_json(q.gibbs_metric == "analytic" ? 1e-4 : 0.0)}};
    j["max_rejections_behaviour"] = "force-accept, row flagged accepted=0";
    return j.dump(2);
}

} // namespace qnspsa
