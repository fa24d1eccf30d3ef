#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "nsmqa_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(NSMQA_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("basis reports the M=0 dimension") {
  const auto out = scratch() / "basis";
  REQUIRE(run("basis --nucleus Be8 --dump-matrix --out " + out.string()) == 0);
  const auto j = read_json(out / "basis.json");
  CHECK(j["dim_F0"] == 51);
  CHECK(j["D"] == 6);
  CHECK(fs::exists(out / "basis.csv"));
  CHECK(fs::exists(out / "target.coo"));
  CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("anneal writes deterministic artifacts") {
  const auto a = scratch() / "anneal_a";
  const auto b = scratch() / "anneal_b";
  REQUIRE(run("anneal --nucleus Be12 --tau-omega 10 --out " + a.string()) == 0);
  REQUIRE(run("anneal --nucleus 12Be --tau-omega 10 --out " + b.string()) == 0);
  const auto j = read_json(a / "summary.json");
  CHECK(j["F"].get<double>() >= 0.0);
  CHECK(j["F"].get<double>() <= 1.0);
  CHECK(j["N_t"] == 100);
  CHECK(slurp(a / "evolution.csv") == slurp(b / "evolution.csv"));
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
  const auto m = read_json(a / "manifest.json");
  CHECK(m["command"] == "anneal");
  CHECK(m["schedule"] == "linear");
}

TEST_CASE("error exit codes") {
  const auto out = (scratch() / "err").string();
  CHECK(run("anneal --nucleus Xx99 --tau-omega 1 --out " + out) == 3);
  CHECK(run("anneal --nucleus Be8 --tau-omega 1 --interaction /nonexistent.int --out " + out) == 4);
  CHECK(run("fit --sweep /nonexistent.csv --out " + out) == 4);
  CHECK(run("anneal --nucleus Be8 --out " + out) == 2);
  CHECK(run("anneal --nucleus Be8 --tau-omega 1 --dt-omega -1 --out " + out) == 2);
  CHECK(run("qcost --shell fp --out " + out) == 2);

  const auto bad = scratch() / "bad.int";
  std::ofstream(bad) << "SHELL p\nORB p3/2 0 1 3\nSPE p3/2\n";
  CHECK(run("basis --nucleus Be8 --interaction " + bad.string() + " --out " + out) == 5);
}

TEST_CASE("gapscan, taustar and fit chain") {
  const auto out = scratch() / "chain";
  REQUIRE(run("gapscan --nucleus Be8 --points 11 --out " + out.string()) == 0);
  CHECK(read_json(out / "gapscan.json").contains("min_gap_e1_e0_MeV"));

  REQUIRE(run("taustar --nucleus Be8,Be12,O18 --grid 0.3:12:40 --f-target 0.99 --out " +
              out.string()) == 0);
  const auto ts = read_json(out / "taustar.json");
  CHECK(ts.size() == 3);

  REQUIRE(run("fit --sweep " + (out / "sweep.csv").string() + " --out " + out.string()) == 0);
  const auto fit = read_json(out / "fit.json");
  for (const char* key : {"c", "r2", "n_points"}) CHECK(fit.contains(key));
  CHECK(fit["n_points"] == 3);
}

TEST_CASE("qcost p shell is in range") {
  const auto out = scratch() / "qcost";
  REQUIRE(run("qcost --shell p --out " + out.string()) == 0);
  const auto j = read_json(out / "cost.json");
  const double total = j["total_cnot"].get<double>();
  CHECK(total >= 4.8e3 / 2);
  CHECK(total <= 4.8e3 * 2);
  CHECK(fs::exists(out / "pauli.txt"));
}
