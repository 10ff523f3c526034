#include "catch2/catch_amalgamated.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string temp_path(const std::string& suffix) {
  static int counter = 0;
  std::ostringstream os;
  os << "/tmp/qcompat_cli_test_" << getpid() << "_" << counter++ << suffix;
  return os.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = temp_path(".out");
  const std::string cmd = std::string(QCOMPAT_CLI_PATH) + " " + args + " > " + out_path + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

std::string golden(const std::string& name) { return slurp(std::string(GOLDEN_DIR) + "/" + name); }

}  // namespace

TEST_CASE("check output matches the golden file") {
  const RunResult r = run_cli("check --p 0.4,0.3,0.2,0.1 --s 0.9 --n 1,0,0");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == golden("golden_check.json"));
}

TEST_CASE("info output matches the golden file") {
  const RunResult r = run_cli("info --p 0.4,0.3,0.2,0.1");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == golden("golden_info.json"));
}

TEST_CASE("scan output matches the golden file") {
  const RunResult r = run_cli("scan lqu --s-steps 5 --grid 24");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == golden("golden_scan_lqu.csv"));
}

TEST_CASE("region output matches the golden file") {
  const RunResult r = run_cli("region --s 0.85 --n 1,0,0 --grid 8");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == golden("golden_region.csv"));
}

TEST_CASE("sample output matches the golden file and is seed-deterministic") {
  const RunResult r = run_cli("sample --seed 42 --samples 5");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == golden("golden_sample.csv"));
  const RunResult again = run_cli("sample --seed 42 --samples 5");
  REQUIRE(again.out == r.out);
  const RunResult other = run_cli("sample --seed 43 --samples 5");
  REQUIRE(other.out != r.out);
}

TEST_CASE("json format is parseable and mirrors the csv columns") {
  const RunResult r = run_cli("scan lqu --s-steps 3 --grid 12 --format json");
  REQUIRE(r.exit_code == 0);
  const auto rows = nlohmann::json::parse(r.out);
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].contains("s"));
  REQUIRE(rows[0].contains("closed_form"));
  REQUIRE(rows[0].contains("searched"));
  REQUIRE(rows[0].contains("gap"));
  REQUIRE(rows[0].contains("grid_resolution"));
  REQUIRE(rows[2]["s"].get<double>() == 1.0);
}

TEST_CASE("infinite criterion values serialize as a string") {
  const RunResult r = run_cli("check --p 0,0.333333333333,0,0.666666666667 --s 0.5 --n 1,0,0");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["compatible"].get<bool>() == false);
  REQUIRE(j["lhs"].is_string());
  REQUIRE(j["lhs"].get<std::string>() == "inf");
}

TEST_CASE("usage and validation errors exit with code 2") {
  REQUIRE(run_cli("check --p 0.5,0.5,0.1,0.1 --s 0.5 --n 1,0,0").exit_code == 2);  // bad sum
  REQUIRE(run_cli("check --p 0.4,0.3,0.2,0.1 --s 0.5 --n 1,1,1").exit_code == 2);  // not unit
  REQUIRE(run_cli("check --p 0.4,0.3,0.2,0.1 --s 1.5 --n 1,0,0").exit_code == 2);  // bad sharpness
  REQUIRE(run_cli("check --p 0.4,0.3,0.2 --s 0.5 --n 1,0,0").exit_code == 2);      // short vector
  REQUIRE(run_cli("info").exit_code == 2);                                         // neither --p nor --bloch
  REQUIRE(run_cli("info --bloch 1,0,0,0,1,0,0,0,-1").exit_code == 2);              // not completely positive
  REQUIRE(run_cli("scan warp").exit_code == 2);                                    // unknown kind
  REQUIRE(run_cli("scan lqu --s-steps 0").exit_code == 2);                         // empty scan
  REQUIRE(run_cli("verify bogus").exit_code == 2);                                 // unknown suite
  REQUIRE(run_cli("frobnicate").exit_code == 2);                                   // unknown subcommand
  REQUIRE(run_cli("").exit_code == 2);                                             // missing subcommand
  REQUIRE(run_cli("--help").exit_code == 0);
  REQUIRE(run_cli("check --help").exit_code == 0);
}

TEST_CASE("near-boundary probability input is accepted and renormalized") {
  // Slightly negative component and slightly off sum, both within 1e-9.
  const RunResult r = run_cli("check --p 0.4000000005,0.3,0.2,0.0999999998 --s 0.9 --n 1,0,0");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["compatible"].get<bool>() == true);
}

TEST_CASE("verify subcommand reports machine-readable results") {
  const RunResult r = run_cli("verify identities --seed 7 --samples 500");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["all_pass"].get<bool>() == true);
  REQUIRE(j["suite"].get<std::string>() == "identities");
  REQUIRE(j["checks"].is_array());
  REQUIRE(j["checks"].size() >= 5);
  for (const auto& c : j["checks"]) {
    REQUIRE(c.contains("name"));
    REQUIRE(c.contains("pass"));
    REQUIRE(c.contains("residual"));
  }
}

TEST_CASE("--out writes the data file plus a manifest") {
  const std::string base = temp_path(".csv");
  const RunResult r = run_cli("scan lqu --s-steps 3 --grid 12 --seed 9 --out " + base);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.empty());  // data went to the file, not stdout

  const std::string data = slurp(base);
  REQUIRE(data.rfind("s,closed_form,searched,gap,grid_resolution\n", 0) == 0);

  const auto manifest = nlohmann::json::parse(slurp(base + ".manifest.json"));
  REQUIRE(manifest["command"].get<std::string>() == "scan");
  REQUIRE(manifest["seed"].get<uint64_t>() == 9);
  REQUIRE(manifest["parameters"]["kind"].get<std::string>() == "lqu");
  REQUIRE(manifest["parameters"]["s_steps"].get<int>() == 3);
  REQUIRE(manifest.contains("timestamp"));
  REQUIRE(manifest.contains("tool_version"));

  std::remove(base.c_str());
  std::remove((base + ".manifest.json").c_str());
}
