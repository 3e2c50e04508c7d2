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
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code = -1;
    std::string output;
};

// Runs the CLI with stderr folded into stdout.
Outcome lab(const std::string &args) {
    const std::string cmd = std::string("\"") + QNSPSA_LAB_BINARY + "\" " + args + " 2>&1";
    Outcome out;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return out;
    }
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.output.append(buf, n);
    }
    const int status = pclose(pipe);
    out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qnspsa_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                ->current_test_info()
                                                ->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string &name, const std::string &text) {
        std::ofstream(dir_ / name) << text;
        return dir_ / name;
    }

    fs::path dir_;
};

constexpr const char *kSmall = R"(
experiment = "two_design"
seed = 3
methods = ["SPSA", "QNSPSA"]
shots = 128
iterations = 5
n_runs = 2
output = "unused"
[instance]
n_qubits = 4
reps = 1
)";

TEST_F(Cli, CheckPasses) {
    const auto r = lab("check");
    EXPECT_EQ(r.code, 0) << r.output;
    EXPECT_NE(r.output.find("PASS qfim_check"), std::string::npos) << r.output;
    EXPECT_EQ(r.output.find("FAIL"), std::string::npos) << r.output;
}

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(lab("").code, 2);
    EXPECT_EQ(lab("launch").code, 2);
    EXPECT_EQ(lab("run").code, 2);
    EXPECT_EQ(lab("run a.toml --jobs 0").code, 2);
    EXPECT_EQ(lab("run a.toml --seed minus").code, 2);
}

TEST_F(Cli, HelpExitsZero) {
    const auto r = lab("--help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.output.find("run"), std::string::npos);
}

TEST_F(Cli, MissingConfigExitsTwo) {
    const auto r = lab("run \"" + (dir_ / "absent.toml").string() + "\"");
    EXPECT_EQ(r.code, 2) << r.output;
    EXPECT_NE(r.output.find("absent.toml"), std::string::npos);
}

TEST_F(Cli, UnknownExperimentNamesValidOnes) {
    const auto cfg = write("bad.toml", "experiment = \"teleport\"\n");
    const auto r = lab("run \"" + cfg.string() + "\"");
    EXPECT_EQ(r.code, 2);
    for (const char *name : {"two_design", "convergence_region", "maxcut", "qbm_bell",
                             "regularization_sweep", "qfim_check", "vqe_file"}) {
        EXPECT_NE(r.output.find(name), std::string::npos) << name << "\n" << r.output;
    }
}

TEST_F(Cli, UnknownKeyExitsTwo) {
    const auto cfg = write("bad.toml", "experiment = \"two_design\"\nspeed = 9\n");
    const auto r = lab("run \"" + cfg.string() + "\"");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.output.find("speed"), std::string::npos) << r.output;
}

TEST_F(Cli, RuntimeFailureExitsOne) {
    // A valid config whose output path cannot be created.
    write("blocker", "a file, not a directory");
    const auto cfg = write("small.toml", kSmall);
    const auto r = lab("run \"" + cfg.string() + "\" --output \"" +
                       (dir_ / "blocker" / "out").string() + "\"");
    EXPECT_EQ(r.code, 1) << r.output;
}

TEST_F(Cli, RunWritesDeterministicOutputs) {
    const auto cfg = write("small.toml", kSmall);
    const auto a = lab("run \"" + cfg.string() + "\" --output \"" + (dir_ / "a").string() + "\"");
    ASSERT_EQ(a.code, 0) << a.output;
    const auto b = lab("run \"" + cfg.string() + "\" --jobs 3 --output \"" +
                       (dir_ / "b").string() + "\"");
    ASSERT_EQ(b.code, 0) << b.output;
    const auto trace = slurp(dir_ / "a" / "trace.csv");
    EXPECT_FALSE(trace.empty());
    EXPECT_EQ(trace, slurp(dir_ / "b" / "trace.csv"));
    const auto summary = slurp(dir_ / "a" / "summary.json");
    EXPECT_NE(summary.find("\"config\""), std::string::npos);
    EXPECT_NE(summary.find("\"experiment\": \"two_design\""), std::string::npos);
}

TEST_F(Cli, SeedOverrideChangesTrace) {
    const auto cfg = write("small.toml", kSmall);
    ASSERT_EQ(lab("run \"" + cfg.string() + "\" --output \"" + (dir_ / "a").string() + "\"").code,
              0);
    ASSERT_EQ(lab("run \"" + cfg.string() + "\" --seed 4 --output \"" + (dir_ / "b").string() +
                  "\"")
                  .code,
              0);
    EXPECT_NE(slurp(dir_ / "a" / "trace.csv"), slurp(dir_ / "b" / "trace.csv"));
    EXPECT_NE(slurp(dir_ / "b" / "summary.json").find("\"seed\": 4"), std::string::npos);
}

TEST_F(Cli, ShippedQfimConfigRuns) {
    const auto r = lab("run \"" + std::string(QNSPSA_CONFIG_DIR) +
                       "/qfim_check.toml\" --output \"" + (dir_ / "q").string() + "\"");
    EXPECT_EQ(r.code, 0) << r.output;
    EXPECT_TRUE(fs::exists(dir_ / "q" / "checks.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "q" / "summary.json"));
}

} // namespace
