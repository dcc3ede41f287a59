// Copyright 2026 The pskrx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "pskrx/emit.hpp"

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("pskrx_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(const std::string& args) const {
        const std::string cmd = std::string(PSKRX_CLI_PATH) + " " + args + " > " + (dir_ / "stdout.txt").string() +
                                " 2> " + (dir_ / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string out(const std::string& name) const { return (dir_ / name).string(); }

    static std::string slurp(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    fs::path dir_;
};

const std::string kSmall = "--m-ary 2 --partitions 3 --photon-min 0.1 --photon-max 1 --photon-steps 3 --trials 20000";

}  // namespace

TEST_F(CliTest, help_succeeds) { EXPECT_EQ(run("--help"), 0); }

TEST_F(CliTest, writes_every_format_and_sidecar) {
    ASSERT_EQ(run(kSmall + " --format csv,json,svg --out " + out("r")), 0);
    for (const char* ext : {"csv", "json", "svg"}) {
        EXPECT_TRUE(fs::exists(out(std::string("r.") + ext))) << ext;
        EXPECT_TRUE(fs::exists(out(std::string("r.") + ext + ".cfg"))) << ext;
    }
    std::istringstream csv(slurp(out("r.csv")));
    const auto rows = pskrx::parse_csv(csv);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].curve_label, "onoff");
    EXPECT_EQ(rows[2].mean_photon, 1.0);
}

TEST_F(CliTest, single_format_keeps_explicit_extension) {
    ASSERT_EQ(run(kSmall + " --out " + out("table.csv")), 0);
    EXPECT_TRUE(fs::exists(out("table.csv")));
    EXPECT_FALSE(fs::exists(out("table.csv.csv")));
}

TEST_F(CliTest, thread_count_does_not_change_output) {
    ASSERT_EQ(run(kSmall + " --seed 5 --threads 1 --out " + out("a.csv")), 0);
    ASSERT_EQ(run(kSmall + " --seed 5 --threads 4 --out " + out("b.csv")), 0);
    EXPECT_EQ(slurp(out("a.csv")), slurp(out("b.csv")));
    ASSERT_EQ(run(kSmall + " --seed 6 --threads 1 --out " + out("c.csv")), 0);
    EXPECT_NE(slurp(out("a.csv")), slurp(out("c.csv")));
}

TEST_F(CliTest, command_line_overrides_config_file) {
    {
        std::ofstream cfg(out("run.toml"));
        cfg << "m-ary = 8\neta = 0.5\nxi = 0.99\n";
    }
    ASSERT_EQ(run(kSmall.substr(kSmall.find("--partitions")) + " --config " + out("run.toml") +
                  " --eta 0.8 --out " + out("o.csv")),
              0);
    const std::string sidecar = slurp(out("o.csv.cfg"));
    EXPECT_NE(sidecar.find("m-ary = 8\n"), std::string::npos) << sidecar;
    EXPECT_NE(sidecar.find("eta = 0.8\n"), std::string::npos) << sidecar;
    EXPECT_NE(sidecar.find("xi = 0.99\n"), std::string::npos) << sidecar;

    // The sidecar is itself a valid config that reproduces the run.
    ASSERT_EQ(run("--config " + out("o.csv.cfg") + " --out " + out("p.csv")), 0);
    EXPECT_EQ(slurp(out("o.csv")), slurp(out("p.csv")));
}

TEST_F(CliTest, preset_and_vary) {
    ASSERT_EQ(run("--preset fig2e --photon-min 1 --photon-max 2 --photon-steps 2 --trials 5000 --out " + out("f")),
              0);
    std::istringstream csv(slurp(out("f.csv")));
    const auto rows = pskrx::parse_csv(csv);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].curve_label, "detector=onoff");
    EXPECT_EQ(rows[3].curve_label, "detector=pnrd");

    ASSERT_EQ(run(kSmall + " --vary eta=1,0.5 --out " + out("v.csv")), 0);
    std::istringstream vcsv(slurp(out("v.csv")));
    EXPECT_EQ(pskrx::parse_csv(vcsv).size(), 6u);
}

TEST_F(CliTest, exact_mode) {
    ASSERT_EQ(run(kSmall + " --exact --out " + out("e.csv")), 0);
    std::istringstream csv(slurp(out("e.csv")));
    for (const auto& r : pskrx::parse_csv(csv)) {
        EXPECT_EQ(r.ci_low, r.p_err);
    }
}

TEST_F(CliTest, configuration_errors_exit_2) {
    EXPECT_EQ(run(kSmall + " --eta 1.5 --out " + out("x")), 2);
    EXPECT_EQ(run(kSmall + " --detector apd --out " + out("x")), 2);
    EXPECT_EQ(run(kSmall + " --vary gamma=1,2 --out " + out("x")), 2);
    EXPECT_EQ(run(kSmall + " --vary eta --out " + out("x")), 2);
    EXPECT_EQ(run(kSmall + " --format png --out " + out("x")), 2);
    EXPECT_EQ(run("--preset nope"), 2);
    EXPECT_EQ(run("--no-such-flag"), 2);
    EXPECT_EQ(run("--photon-min 0 --photon-max 1 --photon-steps 3 --out " + out("x")), 2);
    EXPECT_EQ(run("--config " + out("missing.toml")), 2);
    EXPECT_FALSE(fs::exists(out("x.csv")));
}

TEST_F(CliTest, io_errors_exit_4) {
    EXPECT_EQ(run(kSmall + " --out " + out("no/such/dir/r")), 4);
    fs::create_directories(out("blocked.csv"));
    EXPECT_EQ(run(kSmall + " --out " + out("blocked.csv")), 4);
}
