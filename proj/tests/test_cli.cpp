// Runs the logistic binary as a subprocess.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "logistic/run_config.hpp"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(LOGISTIC_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string first_non_comment(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.starts_with("#")) return line;
  }
  return {};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "logistic_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("stationary output") {
  const Result r = run("stationary --b 2 --mu 1 --gamma 1 --L 100");
  CHECK(r.status == 0);
  CHECK(first_non_comment(r.out) == "x,pi,gauss,ratio");
  const auto cfg = logistic::RunConfig::from_header(r.out);
  CHECK(cfg.command == "stationary");
  CHECK(cfg.params.L == 100);
}

TEST_CASE("simulate is reproducible and its header replays the run") {
  const std::string args = "simulate --b 2 --mu 1 --gamma 1 --L 20 --x0 20 --T 10 --seed 42";
  const Result a = run(args);
  const Result b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(run("simulate --b 2 --mu 1 --gamma 1 --L 20 --x0 20 --T 10 --seed 43").out != a.out);

  const auto cfg_path = scratch("replay.cfg");
  {
    std::ofstream f(cfg_path);
    f << logistic::RunConfig::from_header(a.out).to_text();
  }
  CHECK(run("--config " + cfg_path.string()).out == a.out);
  const Result overridden = run("simulate --config " + cfg_path.string() + " --seed 43");
  CHECK(logistic::RunConfig::from_header(overridden.out).seed == 43u);
}

TEST_CASE("binary trajectory and output directory") {
  const auto path = scratch("traj.bin");
  const Result r = run("simulate --L 20 --x0 20 --T 2 --seed 1 --format binary --out " +
                       path.string());
  REQUIRE(r.status == 0);
  std::ifstream f(path, std::ios::binary);
  char magic[4] = {};
  f.read(magic, 4);
  CHECK(std::string(magic, 4) == "LGTR");

  const auto dir = scratch("outdir");
  std::filesystem::create_directories(dir);
  const std::string cmd = "env LOGISTIC_OUTPUT_DIR=" + dir.string() + " " +
                          std::string(LOGISTIC_CLI_PATH) + " breiman --m-max 3 >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(std::filesystem::exists(dir / "breiman.csv"));
}

TEST_CASE("json outputs") {
  const Result p = run("passage --b 2 --mu 1 --gamma 1 --L 30 --x 30 --y 10");
  REQUIRE(p.status == 0);
  const auto j = nlohmann::json::parse(p.out);
  CHECK(j.contains("exact"));
  CHECK(j.contains("oracle"));
  const Result br = run("breiman --m-max 2 --output json");
  REQUIRE(br.status == 0);
  CHECK(nlohmann::json::accept(br.out));
}

TEST_CASE("exit codes") {
  CHECK(run("").status == 2);
  CHECK(run("stationary --b 1 --mu 2 --gamma 1 --L 10").status == 2);
  CHECK(run("stationary --L 0").status == 2);
  CHECK(run("stationary --bogus 1").status == 2);
  CHECK(run("stationary --variant unmodified --L 10").status == 2);
  CHECK(run("passage-mc --L 10 --x0 5 --targets 100000 --reps 2 --event-cap 10 --seed 1").status == 1);
  CHECK(run("validate --only 10").status == 0);
}
