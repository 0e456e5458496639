#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = MLNSOCP_CLI_PATH;

int run(const std::string& args, std::string* out = nullptr) {
  const fs::path log = fs::temp_directory_path() / "mlnsocp_cli_test.log";
  const std::string cmd = kCli + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(log);
    std::stringstream buf;
    buf << in.rdbuf();
    *out = buf.str();
  }
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("localize writes one estimate row per unknown node") {
  const fs::path dir = fresh_dir("cli_localize");
  const int rc = run("localize --side 40 --nodes 100 --p 0.3 --range 40 --seed 1 --trials 1 --out " +
                     dir.string());
  CHECK(rc == 0);
  const std::string csv = slurp(dir / "estimates.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 71);  // header + 70 unknowns
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "config.txt"));
}

TEST_CASE("repeated runs are byte-identical") {
  const fs::path dir = fresh_dir("cli_det");
  const std::string cmd = "localize --side 20 --nodes 30 --p 0.4 --range 20 --seed 5 --trials 1 --out " +
                          dir.string();
  CHECK(run(cmd) == 0);
  const std::string estimates = slurp(dir / "estimates.csv");
  const std::string summary = slurp(dir / "summary.json");
  const std::string config = slurp(dir / "config.txt");
  CHECK(run(cmd) == 0);
  CHECK(slurp(dir / "estimates.csv") == estimates);
  CHECK(slurp(dir / "summary.json") == summary);
  CHECK(slurp(dir / "config.txt") == config);
}

TEST_CASE("all-anchor network localizes vacuously") {
  const fs::path dir = fresh_dir("cli_vacuous");
  std::string out;
  const int rc = run("localize --side 20 --nodes 10 --p 1.0 --range 20 --trials 1 --out " +
                     dir.string(), &out);
  CHECK(rc == 0);
  CHECK(slurp(dir / "summary.json").find("no unknown nodes") != std::string::npos);
}

TEST_CASE("config file values are overridden by flags") {
  const fs::path dir = fresh_dir("cli_override");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "side=40\nnodes=50\np=0.3\nrange=40\nseed=2\n";
  }
  const int rc = run("deploy --config " + (dir / "run.cfg").string() + " --p 0.1 --out " +
                     dir.string());
  CHECK(rc == 0);
  CHECK(slurp(dir / "config.txt").find("p=0.1\n") != std::string::npos);
  const std::string topo = slurp(dir / "topology.json");
  CHECK(topo.find("\"role\": \"anchor\"") != std::string::npos);
}

TEST_CASE("unknown experiment names exit with a usage error") {
  std::string out;
  const int rc = run("experiment --side 40 --nodes 100 --range 40 --experiment table9", &out);
  CHECK(rc == 1);
  CHECK(out.find("table1") != std::string::npos);
  CHECK(out.find("scaling") != std::string::npos);
}

TEST_CASE("missing required keys exit with a usage error naming the field") {
  std::string out;
  const int rc = run("localize --nodes 100 --range 40", &out);
  CHECK(rc == 1);
  CHECK(out.find("side length") != std::string::npos);
}

TEST_CASE("the crlb subcommand writes the surface grid") {
  const fs::path dir = fresh_dir("cli_crlb");
  const int rc = run(
      "crlb --side 40 --nodes 1600 --p 0.0025 --range 40 --anchors boundary --out " +
      dir.string());
  CHECK(rc == 0);
  const std::string csv = slurp(dir / "crlb.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 41 * 41 + 1);
  CHECK(slurp(dir / "crlb.json").find("min_value") != std::string::npos);
  CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("measure writes the per-edge csv next to the topology") {
  const fs::path dir = fresh_dir("cli_measure");
  const int rc = run("measure --side 20 --nodes 12 --p 0.5 --range 25 --seed 4 --out " +
                     dir.string());
  CHECK(rc == 0);
  const std::string csv = slurp(dir / "measurements.csv");
  CHECK(csv.rfind("r,t,kind,raw,corrected,mu,sigma_sq,gamma_sq\n", 0) == 0);
  CHECK(fs::exists(dir / "topology.json"));
}
