// Copyright 2026 The Pragsynth Authors
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


#include "cli.h"

#include <gtest/gtest.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "pragsynth/grid_dsl.h"
#include "test_util.h"

namespace pragsynth::cli {
namespace {

const std::string kFixture = std::string(PRAGSYNTH_DATA_DIR) + "/stimuli_v1.txt";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(Cli, HelpAndMissingSubcommand) {
  EXPECT_EQ(RunCli({"--help"}).code, kExitOk);
  EXPECT_EQ(RunCli({}).code, kExitValidation);
  EXPECT_EQ(RunCli({"frobnicate"}).code, kExitValidation);
}

TEST(CliInfer, SegmentPragmaticListener) {
  const Outcome o = RunCli({"infer", "--game", "segment", "--listener", "l1", "--examples", "1:occ,2:occ"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);  // summary
  std::getline(lines, line);  // header
  std::getline(lines, line);
  EXPECT_NE(line.find("h5 [1,2]"), std::string::npos) << line;
  EXPECT_NE(line.find("0.3136"), std::string::npos) << line;
}

TEST(CliInfer, SegmentLiteralListener) {
  const Outcome o = RunCli({"infer", "--listener", "l0", "--examples", "1:occ, 2:occ"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::size_t quarter = 0;
  for (std::size_t pos = o.out.find("0.250000"); pos != std::string::npos;
       pos = o.out.find("0.250000", pos + 1)) {
    ++quarter;
  }
  EXPECT_EQ(quarter, 4u);
  EXPECT_NE(o.out.find("support 4"), std::string::npos);
}

TEST(CliInfer, Errors) {
  const Outcome contradiction = RunCli({"infer", "--examples", "1:occ,1:empty"});
  EXPECT_EQ(contradiction.code, kExitInconsistent);
  EXPECT_NE(contradiction.err.find("InconsistentSpec"), std::string::npos);
  EXPECT_EQ(RunCli({"infer", "--listener", "l7"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"infer", "--examples", "1:maybe"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"infer", "--examples", "9:occ"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"infer", "--examples", "1:occ,1:occ"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"infer", "--listener", "lp", "--examples", "1:occ"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"infer", "--game", "grid", "--examples", "1:2"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"infer", "--game", "grid", "--examples", "1:9:r"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"infer", "--game", "grid", "--examples", "1:2:q"}).code, kExitValidation);
}

TEST(CliInfer, GridWithMatrixCache) {
  testing::TempDir dir("cli-grid");
  const std::string cache = (dir.path() / "m.bin").string();
  const std::vector<std::string> args = {"--matrix-cache", cache, "infer", "--game", "grid",
                                         "--listener", "l1", "--examples", "0:0:.,3:3:R"};
  const Outcome first = RunCli(args);
  ASSERT_EQ(first.code, kExitOk) << first.err;
  EXPECT_NE(first.out.find("wrote matrix cache"), std::string::npos);
  const Outcome second = RunCli(args);
  ASSERT_EQ(second.code, kExitOk);
  EXPECT_NE(second.out.find("loaded matrix cache"), std::string::npos);
  EXPECT_NE(second.out.find("top pattern:"), std::string::npos);

  // A corrupt cache is an I/O failure.
  std::ofstream(cache, std::ios::trunc) << "garbage";
  EXPECT_EQ(RunCli(args).code, kExitIo);
}

TEST(CliInfer, CacheDirectoryFromEnvironment) {
  testing::TempDir dir("cli-env");
  ::setenv("PRAGSYNTH_CACHE_DIR", dir.path().c_str(), 1);
  const Outcome o = RunCli({"infer", "--game", "grid", "--examples", "6:6:."});
  ::unsetenv("PRAGSYNTH_CACHE_DIR");
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "grid_matrix.bin"));
}

TEST(CliEnumerate, WritesSpaceAndRefusesToOverwrite) {
  testing::TempDir dir("cli-enum");
  const std::string out = (dir.path() / "space.bin").string();
  const Outcome o = RunCli({"enumerate", "--out", out});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("648270"), std::string::npos);
  EXPECT_NE(o.out.find("21045"), std::string::npos);
  EXPECT_NE(o.out.find("17976"), std::string::npos);
  EXPECT_EQ(grid::LoadCanonicalSpaceFile(out).size(), 21045u);

  const Outcome again = RunCli({"enumerate", "--out", out});
  EXPECT_EQ(again.code, kExitValidation);
  EXPECT_NE(again.err.find("--force"), std::string::npos);
  EXPECT_EQ(RunCli({"enumerate", "--out", out, "--force"}).code, kExitOk);
  EXPECT_EQ(RunCli({"enumerate"}).code, kExitValidation);
}

TEST(CliSimulate, DeterministicCsv) {
  testing::TempDir dir("cli-sim");
  const auto a = dir.path() / "a.csv", b = dir.path() / "b.csv";
  const std::vector<std::string> base = {"--seed", "3", "simulate", "--game", "segment",
                                         "--speaker", "s1", "--listener", "l1", "--trials", "200"};
  auto with_out = [&](const std::filesystem::path& p) {
    std::vector<std::string> args = base;
    args.insert(args.end(), {"--out", p.string()});
    return args;
  };
  ASSERT_EQ(RunCli(with_out(a)).code, kExitOk);
  ASSERT_EQ(RunCli(with_out(b)).code, kExitOk);
  EXPECT_EQ(ReadFile(a), ReadFile(b));
  EXPECT_EQ(ReadFile(a).rfind("speaker,listener,trials,mean,std,failures,seed\ns1-sample,l1,200,", 0), 0u);
  EXPECT_EQ(RunCli(with_out(a)).code, kExitValidation);

  const Outcome curve = RunCli({"simulate", "--game", "segment", "--mode", "curve", "--budget", "4",
                                "--trials", "100"});
  ASSERT_EQ(curve.code, kExitOk);
  EXPECT_EQ(curve.out.rfind("speaker,listener,n_symbols,trials,successes,rate,seed\n", 0), 0u);
  EXPECT_NE(curve.err.find("success rate"), std::string::npos);
  EXPECT_NE(curve.out.find("s1-sample,l1,4,100,100,1.000000,7\n"), std::string::npos);

  EXPECT_EQ(RunCli({"simulate", "--speaker", "s7"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"simulate", "--trials", "0"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"simulate", "--game", "segment", "--listener", "lp"}).code, kExitValidation);
}

TEST(CliStimuli, RegeneratesFixture) {
  testing::TempDir dir("cli-stim");
  const auto out = dir.path() / "stimuli.txt";
  ASSERT_EQ(RunCli({"stimuli", "--out", out.string()}).code, kExitOk);
  EXPECT_EQ(ReadFile(out), ReadFile(kFixture));
}

TEST(CliServe, StartupErrors) {
  EXPECT_EQ(RunCli({"serve", "--port", "70000"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"serve", "--port", "-5"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"serve", "--port", "0", "--stimuli-file", "/nonexistent"}).code, kExitIo);

  httplib::Server blocker;
  const int port = blocker.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  EXPECT_EQ(RunCli({"serve", "--port", std::to_string(port), "--stimuli-file", kFixture}).code,
            kExitIo);
}

// Runs the real binary and talks to it over HTTP.
TEST(CliServe, HealthEndpoint) {
  testing::TempDir dir("cli-serve");
  const std::string cache = (dir.path() / "cache" / "m.bin").string();
  int pipe_fds[2];
  ASSERT_EQ(::pipe(pipe_fds), 0);
  const pid_t pid = ::fork();
  ASSERT_GE(pid, 0);
  if (pid == 0) {
    ::dup2(pipe_fds[1], STDOUT_FILENO);
    ::close(pipe_fds[0]);
    ::execl(PRAGSYNTH_CLI_PATH, PRAGSYNTH_CLI_PATH, "--matrix-cache", cache.c_str(), "serve",
            "--port", "0", "--stimuli-file", kFixture.c_str(), static_cast<char*>(nullptr));
    std::_Exit(127);
  }
  ::close(pipe_fds[1]);
  FILE* out = ::fdopen(pipe_fds[0], "r");
  int port = -1;
  char line[512];
  while (port < 0 && std::fgets(line, sizeof(line), out) != nullptr) {
    const std::string text(line);
    const auto pos = text.find("listening on http://127.0.0.1:");
    if (pos != std::string::npos) port = std::stoi(text.substr(pos + 30));
  }
  ASSERT_GT(port, 0);
  EXPECT_TRUE(std::filesystem::exists(cache));

  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_NE(res->body.find("ok"), std::string::npos);

  ::kill(pid, SIGTERM);
  int status = 0;
  ::waitpid(pid, &status, 0);
  std::fclose(out);
  EXPECT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitOk);
}

}  // namespace
}  // namespace pragsynth::cli
