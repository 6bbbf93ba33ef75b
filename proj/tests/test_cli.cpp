#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kWorkDir = fs::temp_directory_path() / "plab_cli_tests";

int run_cli(const std::string& args) {
  std::string cmd = std::string(PLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

json load(const fs::path& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  return json::parse(f);
}

struct Setup {
  Setup() {
    fs::create_directories(kWorkDir);
    // C5 edge list
    std::ofstream g(kWorkDir / "c5.txt");
    g << "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
    // small planar grid
    std::ofstream pts(kWorkDir / "grid.csv");
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) pts << x << "," << y << "\n";
    // two-point measure on the line
    std::ofstream line_pts(kWorkDir / "line.csv");
    line_pts << "0\n1\n";
  }
};

const Setup setup_once{};

std::string path_of(const char* name) { return (kWorkDir / name).string(); }

}  // namespace

TEST_CASE("chain gap on C5 reports the known spectral gap") {
  auto out = path_of("gap.json");
  REQUIRE(run_cli("chain gap --graph " + path_of("c5.txt") + " --out " + out) == 0);
  auto report = load(out);
  CHECK(report["result"]["sigma"].get<double>() == doctest::Approx(0.6909830056).epsilon(1e-9));
  CHECK(report["version"].is_string());
  CHECK(report["config"]["seed"].get<uint64_t>() == 0);
}

TEST_CASE("rgm meanwalk on C5 reports the two-scale mixture") {
  auto out = path_of("meanwalk.json");
  REQUIRE(run_cli("rgm meanwalk --graph " + path_of("c5.txt") + " --q 2 --j 1 --k 2 --out " + out) ==
          0);
  auto report = load(out);
  CHECK(report["result"]["weights"]["0"].get<double>() == doctest::Approx(0.5));
  CHECK(report["result"]["weights"]["2"].get<double>() == doctest::Approx(0.5));
  CHECK(report["result"]["distribution"][""].get<double>() == doctest::Approx(0.625));
}

TEST_CASE("fp iterate drives the dihedral start to the origin") {
  auto out = path_of("iterate.json");
  REQUIRE(run_cli("fp iterate --action dihedral-euclidean:3 --f0 1,0 --p 2 --n 1 --out " + out) ==
          0);
  auto report = load(out);
  CHECK(report["result"]["converged"].get<bool>());
  auto fixed = report["result"]["fixed_point"].get<std::vector<double>>();
  CHECK(std::abs(fixed[0]) < 1e-6);
  CHECK(std::abs(fixed[1]) < 1e-6);
}

TEST_CASE("poincare estimate exact route via the CLI") {
  auto out = path_of("poincare.json");
  REQUIRE(run_cli("poincare estimate --graph " + path_of("c5.txt") + " --p 2 --out " + out) == 0);
  auto report = load(out);
  CHECK(report["result"]["exact"].get<bool>());
  CHECK(report["result"]["lambda"].get<double>() == doctest::Approx(1.2030019100).epsilon(1e-9));
}

TEST_CASE("barycenter solve over an explicit space descriptor") {
  auto out = path_of("bary.json");
  REQUIRE(run_cli("barycenter solve --space '{\"kind\":\"euclidean\",\"dim\":1}' --points " +
                  path_of("line.csv") + " --p 2 --tol 1e-10 --out " + out) == 0);
  auto report = load(out);
  auto center = report["result"]["center"].get<std::vector<double>>();
  CHECK(center[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(report["result"]["converged"].get<bool>());
}

TEST_CASE("embed theta reports optimizer and reference values") {
  auto out = path_of("theta.json");
  REQUIRE(run_cli("embed theta --sigma 0.25 --eps 0.25 --delta 0.5 --out " + out) == 0);
  auto report = load(out);
  double theta_star = report["result"]["theta_star"].get<double>();
  CHECK(theta_star > 0.0);
  CHECK(theta_star < 1.0);
  CHECK(report["result"]["bound_at_theta_star"].get<double>() <=
        report["result"]["bound_at_half"].get<double>() + 1e-9);
}

TEST_CASE("reports are deterministic modulo the timestamp") {
  auto out1 = path_of("det1.json"), out2 = path_of("det2.json");
  std::string cmd = "rgm effsim --graph " + path_of("c5.txt") + " --q0 1 --k 2 --j 2 --seed 7";
  REQUIRE(run_cli(cmd + " --out " + out1) == 0);
  REQUIRE(run_cli(cmd + " --out " + out2) == 0);
  auto a = load(out1), b = load(out2);
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a == b);
}

TEST_CASE("worker count does not change the numeric payload") {
  auto out1 = path_of("w1.json"), out2 = path_of("w4.json");
  std::string base = "poincare estimate --graph " + path_of("c5.txt") +
                     " --space '{\"kind\":\"euclidean\",\"dim\":2}' --p 2 --restarts 8 --seed 3";
  REQUIRE(run_cli(base + " --workers 1 --out " + out1) == 0);
  REQUIRE(run_cli(base + " --workers 4 --out " + out2) == 0);
  auto a = load(out1), b = load(out2);
  CHECK(a["result"]["lambda"] == b["result"]["lambda"]);
  CHECK(a["result"]["witness"] == b["result"]["witness"]);
}

TEST_CASE("malformed configuration fails with a nonzero exit") {
  CHECK(run_cli("graph gen --n 5 --d 3") != 0);          // parity violation
  CHECK(run_cli("chain gap --graph /no/such/file") != 0);
  CHECK(run_cli("fp transfer --graph " + path_of("c5.txt") + " --j 1") != 0);  // odd j
}
