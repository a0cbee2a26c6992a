// Copyright 2026 The qws Authors
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

// End-to-end checks of the installed binary: exit codes, messages, artifacts.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "qws/io.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qws_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct RunOutput {
    int exit_code = -1;
    std::string stderr_text;
};

RunOutput run_cli(const std::string& args, const fs::path& scratch) {
    const auto err_path = scratch / "stderr.txt";
    const std::string cmd =
        std::string(QWS_CLI_PATH) + " " + args + " 2>" + err_path.string() + " >/dev/null";
    const int status = std::system(cmd.c_str());
    RunOutput out;
    out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(err_path);
    std::stringstream ss;
    ss << f.rdbuf();
    out.stderr_text = ss.str();
    return out;
}

}  // namespace

TEST_CASE("cli: valid run exits 0 and writes artifacts") {
    TempDir tmp;
    const auto cfg = tmp.path / "cfg.json";
    qws::atomic_write(cfg.string(), R"({"figure": "hw_idle", "seed": 3, "output_dir": ")" +
                                        tmp.path.string() + R"("})");
    const auto out = run_cli("run " + cfg.string(), tmp.path);
    CHECK(out.exit_code == 0);
    CHECK(fs::exists(tmp.path / "hw_idle" / "idle_calibration.csv"));
    CHECK(fs::exists(tmp.path / "hw_idle" / "report.json"));
}

TEST_CASE("cli: malformed JSON exits 2 and points at the parse location") {
    TempDir tmp;
    const auto cfg = tmp.path / "broken.json";
    qws::atomic_write(cfg.string(), "{\"figure\": \"fig5_hard\" \"seed\": 1}");
    const auto out = run_cli("run " + cfg.string(), tmp.path);
    CHECK(out.exit_code == 2);
    CHECK(out.stderr_text.find("parse error") != std::string::npos);
    CHECK(out.stderr_text.find("column") != std::string::npos);
}

TEST_CASE("cli: unknown keys and missing files exit 2") {
    TempDir tmp;
    const auto cfg = tmp.path / "cfg.json";
    qws::atomic_write(cfg.string(), R"({"figure": "fig5_hard", "seed": 1, "bogus": true})");
    CHECK(run_cli("run " + cfg.string(), tmp.path).exit_code == 2);
    CHECK(run_cli("run " + (tmp.path / "nope.json").string(), tmp.path).exit_code == 2);
}

TEST_CASE("cli: seed and output-dir overrides apply") {
    TempDir tmp;
    const auto cfg = tmp.path / "cfg.json";
    qws::atomic_write(cfg.string(),
                      R"({"figure": "fig8_flag", "seed": 1, "output_dir": "unused"})");
    const auto out = run_cli(
        "run " + cfg.string() + " --output-dir " + tmp.path.string() + " --seed 99 --shots 64",
        tmp.path);
    CHECK(out.exit_code == 0);
    std::ifstream report(tmp.path / "fig8_flag" / "report.json");
    std::stringstream ss;
    ss << report.rdbuf();
    CHECK(ss.str().find("\"seed\": 99") != std::string::npos);
}

TEST_CASE("cli: verify passes clean and fails with the fault flag") {
    TempDir tmp;
    CHECK(run_cli("verify", tmp.path).exit_code == 0);
    const auto faulty = run_cli("verify --inject-fault", tmp.path);
    CHECK(faulty.exit_code == 1);
    CHECK(faulty.stderr_text.find("completeness") != std::string::npos);
}
