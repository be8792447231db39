// Contract tests for the command-line binary: flag parsing, exit codes,
// the printed case summary, bundle determinism, and the report schema.
// The binary path arrives as the first plain argument (see CMakeLists).
#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string g_qpv = "./qpv";

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = g_qpv + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<char*> pass{argv[0]};
  bool binary_seen = false;
  for (int i = 1; i < argc; ++i) {
    if (!binary_seen && argv[i][0] != '-') {
      g_qpv = argv[i];
      binary_seen = true;
    } else {
      pass.push_back(argv[i]);
    }
  }
  doctest::Context ctx(static_cast<int>(pass.size()), pass.data());
  return ctx.run();
}

TEST_CASE("info prints the case summary") {
  const RunResult r = run_cli("info -t A -r 3 -n 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "nilradical dimension: 4"));
  CHECK(contains(r.out, "(H0, H0) = 4"));
  CHECK(contains(r.out, "coset length profile: [1, 1, 2, 1, 1]"));

  const RunResult r1 = run_cli("info -t A -r 1 -n 1");
  CHECK(r1.code == 0);
  CHECK(contains(r1.out, "nilradical dimension: 1"));

  const RunResult rc = run_cli("info -t C -r 2 -n 2");
  CHECK(rc.code == 0);
  CHECK(contains(rc.out, "nilradical dimension: 3"));
}

TEST_CASE("usage errors exit with code two") {
  const RunResult bad_node = run_cli("info -t C -r 2 -n 1");
  CHECK(bad_node.code == 2);
  CHECK(contains(bad_node.out, "admissible"));
  CHECK(run_cli("info -t X -r 2 -n 1").code == 2);
  CHECK(run_cli("info -t A -r 9 -n 1").code == 2);
  CHECK(run_cli("info -t A -r 2").code == 2);
  CHECK(run_cli("info -t A -r 2 -n 5").code == 2);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate -t A -r 2 -n 1").code == 2);
  CHECK(run_cli("verify -t A -r 2 -n 1 --suite nope").code == 2);
  CHECK(run_cli("verify -t A -r 2 -n 1 --mode fuzzy").code == 2);
  CHECK(run_cli("verify -t A -r 2 -n 1 --max-degree 0").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("--version").code == 0);
}

TEST_CASE("build writes a deterministic bundle") {
  namespace fs = std::filesystem;
  fs::create_directories("cli_tmp");
  CHECK(run_cli("build -t A -r 2 -n 1 --out cli_tmp/b1.json").code == 0);
  CHECK(run_cli("build -t A -r 2 -n 1 --out cli_tmp/b2.json").code == 0);
  const std::string s1 = slurp("cli_tmp/b1.json");
  REQUIRE(!s1.empty());
  CHECK(s1 == slurp("cli_tmp/b2.json"));

  const json b = json::parse(s1);
  CHECK(b["version"] == "0.1.0");
  CHECK(b["case"]["series"] == "A");
  CHECK(b["case"]["node"] == 1);
  CHECK(b["datum"]["n"] == 2);
  REQUIRE(b["presentation"]["rules"].size() == 1);
  CHECK(b["presentation"]["rules"][0]["lhs"] == json::array({1, 0}));
  CHECK(b["presentation"]["rules"][0]["rhs"].size() == 1);
  CHECK(b["calculus"]["zd_rules"].size() == 4);   // one rule per z dz pair
  CHECK(b["calculus"]["dd_rules"].size() == 3);   // one per dz pair, i >= j
  CHECK(b["braiding"]["self"]["components"].size() == 2);
  CHECK(!b["characters"].empty());

  // Without --out the bundle goes to stdout.
  const RunResult r3 = run_cli("build -t A -r 2 -n 1");
  CHECK(r3.code == 0);
  CHECK(json::parse(r3.out, nullptr, false).is_object());

  // Unwritable output path is a runtime failure, not a usage error.
  CHECK(run_cli("build -t A -r 2 -n 1 --out /nonexistent_dir_qpv/x.json")
            .code == 1);

  // The CSV character table has the pinned header and one row per weight.
  CHECK(run_cli("build -t A -r 2 -n 1 --out cli_tmp/b3.json "
                "--chars cli_tmp/c.csv --max-degree 3")
            .code == 0);
  const std::string csv = slurp("cli_tmp/c.csv");
  CHECK(csv.rfind("degree,weight,multiplicity\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 4);
}

TEST_CASE("verify emits a sorted all-pass report") {
  const RunResult r = run_cli("verify -t A -r 2 -n 1 --suite quadratic");
  CHECK(r.code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep["version"] == "0.1.0");
  CHECK(rep["case"]["series"] == "A");
  CHECK(rep["case"]["mode"] == "exact");
  CHECK(rep["convention"]["t0_sign"] == 1);
  CHECK(rep["convention"]["d_root"].is_number_integer());
  REQUIRE(rep["checks"].is_array());
  REQUIRE(rep["checks"].size() == 4);
  std::vector<std::string> ids;
  for (const auto& c : rep["checks"]) {
    CHECK(c["status"] == "pass");
    CHECK(c["elapsed_ms"].is_number());
    CHECK(!c["details"].get<std::string>().empty());
    ids.push_back(c["id"].get<std::string>());
  }
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  for (const std::string& id : ids) CHECK(id.rfind("quadratic.", 0) == 0);

  // The recorded root order agrees with the built bundle.
  const RunResult rb = run_cli("build -t A -r 2 -n 1");
  const json b = json::parse(rb.out);
  CHECK(rep["convention"]["d_root"] == b["datum"]["D"]);
}

TEST_CASE("verify runs every suite on the two-step case") {
  const RunResult r = run_cli(
      "verify -t A -r 3 -n 2 --suite all --max-degree 3 "
      "--out cli_tmp/rep.json");
  CHECK(r.code == 0);
  const json rep = json::parse(slurp("cli_tmp/rep.json"));
  REQUIRE(rep["checks"].size() == 12);
  for (const auto& c : rep["checks"]) CHECK(c["status"] == "pass");

  // Selecting two suites runs exactly their checks.
  const RunResult r2 = run_cli(
      "verify -t A -r 2 -n 1 --suite quadratic --suite bgg");
  CHECK(r2.code == 0);
  const json rep2 = json::parse(r2.out);
  CHECK(rep2["checks"].size() == 8);
}

TEST_CASE("sampled verification reproduces with the seed") {
  const std::string args =
      "verify -t A -r 2 -n 1 --suite calculus --mode sampled --samples 3 "
      "--seed 7";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  const json ja = json::parse(a.out), jb = json::parse(b.out);
  REQUIRE(ja["case"]["sample_points"].size() == 3);
  CHECK(ja["case"]["sample_points"] == jb["case"]["sample_points"]);
  REQUIRE(ja["checks"].size() == jb["checks"].size());
  for (size_t k = 0; k < ja["checks"].size(); ++k) {
    CHECK(ja["checks"][k]["id"] == jb["checks"][k]["id"]);
    CHECK(ja["checks"][k]["status"] == "pass");
    CHECK(ja["checks"][k]["status"] == jb["checks"][k]["status"]);
  }
  // A different seed draws different points.
  const RunResult c = run_cli(
      "verify -t A -r 2 -n 1 --suite calculus --mode sampled --samples 3 "
      "--seed 8");
  CHECK(c.code == 0);
  CHECK(json::parse(c.out)["case"]["sample_points"] !=
        ja["case"]["sample_points"]);
}
