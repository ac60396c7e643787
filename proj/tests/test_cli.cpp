#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "adaptivemon/harness/experiment.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(ADAPTIVEMON_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path workdir() {
  auto dir = fs::temp_directory_path() / "adaptivemon_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, SimWritesCsv) {
  const auto out = workdir() / "sim.csv";
  fs::remove(out);
  ASSERT_EQ(run("sim --scenario stable --mode static --seed 1 --preset rq1 --out " + out.string()), 0);
  const auto rows = adaptivemon::harness::read_results(out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].scenario, "stable");
  EXPECT_EQ(rows[0].mode, adaptivemon::harness::Mode::fixed);
}

TEST(Cli, SimWithRulesAndTrace) {
  const auto dir = workdir() / "trace";
  fs::remove_all(dir);
  const auto out = workdir() / "sim2.csv";
  ASSERT_EQ(run("sim --scenario spiky --mode adaptive --seed 2 --preset default --rules " ADAPTIVEMON_SOURCE_DIR
                "/rules/default.rules --out " +
                out.string() + " --trace " + dir.string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "spiky_adaptive_2.csv"));
}

TEST(Cli, ConfigurationErrorsExitTwo) {
  const auto dir = workdir();
  const auto out = (dir / "x.csv").string();
  write(dir / "bad.rules", "rule r salience { }");
  write(dir / "bad.json", R"({"indicators": []})");

  EXPECT_EQ(run("sim --scenario nope --mode adaptive --seed 1 --out " + out), 2);
  EXPECT_EQ(run("sim --scenario stable --mode sometimes --seed 1 --out " + out), 2);
  EXPECT_EQ(run("sim --scenario stable --preset rq9 --out " + out), 2);
  EXPECT_EQ(run("sim --scenario stable --rules " + (dir / "bad.rules").string() + " --out " + out), 2);
  EXPECT_EQ(run("sim --scenario stable --rules " + (dir / "missing.rules").string() + " --out " + out), 2);
  EXPECT_EQ(run("sim --scenario stable --seed notanumber --out " + out), 2);
  EXPECT_EQ(run("sim --out " + out), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("follower --leader 127.0.0.1:9 --config " + (dir / "bad.json").string() + " --rules " +
                ADAPTIVEMON_SOURCE_DIR "/rules/default.rules"),
            2);
  EXPECT_EQ(run("follower --leader nope --config " ADAPTIVEMON_SOURCE_DIR "/configs/follower.json --rules " +
                (dir / "bad.rules").string()),
            2);
  EXPECT_EQ(run("leader --listen 127.0.0.1 --peers a:1"), 2);
  EXPECT_EQ(run("sim-all --seeds 0 --out " + out), 2);
}

TEST(Cli, SimAllMatrix) {
  const auto out = workdir() / "all.csv";
  ASSERT_EQ(run("sim-all --seeds 2 --out " + out.string()), 0);
  EXPECT_EQ(adaptivemon::harness::read_results(out).size(), 20u);
}
