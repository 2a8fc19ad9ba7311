// Drives the command line binary end to end through a shell: exit codes,
// diagnostics, artifact bytes.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = DMARKET_CLI;
const fs::path kSource = DMARKET_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  return std::string((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
}

fs::path scratch() {
  static int seq = 0;
  fs::path dir = fs::temp_directory_path() /
                 ("dmarket_cli_" + std::to_string(::getpid()) + "_" +
                  std::to_string(seq++));
  fs::create_directories(dir);
  return dir;
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  const fs::path dir = scratch();
  const fs::path so = dir / "stdout.txt";
  const fs::path se = dir / "stderr.txt";
  const std::string cmd =
      kCli + " " + args + " >" + so.string() + " 2>" + se.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  REQUIRE(status != -1);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(so);
  r.err = slurp(se);
  return r;
}

fs::path write_case(const std::string& body) {
  const fs::path p = scratch() / "case.json";
  std::ofstream f(p, std::ios::binary);
  f << body;
  REQUIRE(f.good());
  return p;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("validate accepts the built-in feeder and its variants") {
  RunResult r = run("validate --embedded");
  CHECK(r.code == 0);
  CHECK(r.out.find("ok: 13 buses, 12 lines, 24 hours, constant mode") !=
        std::string::npos);
  r = run("validate --embedded --variant variable-tight");
  CHECK(r.code == 0);
  CHECK(r.out.find("variable mode") != std::string::npos);
}

TEST_CASE("validate rejects bad files with paths") {
  SECTION("type errors") {
    const fs::path p = write_case(R"({"schema_version": 1, "frequency": 60})");
    RunResult r = run("validate --case " + p.string());
    CHECK(r.code == 1);
    CHECK(r.err.find("/frequency: unknown field") != std::string::npos);
    CHECK(r.err.find("/mode") != std::string::npos);
  }
  SECTION("semantic errors") {
    const fs::path p = write_case(R"({
      "schema_version": 1, "mode": "constant", "horizon": 1,
      "tlmp": [20], "assigned_power": [1],
      "buses": [{"id": 1, "root": true}, {"id": 2}],
      "lines": [{"id": 1, "from": 2, "to": 1}]
    })");
    RunResult r = run("validate --case " + p.string());
    CHECK(r.code == 1);
    CHECK(r.err.find("invalid case:") != std::string::npos);
  }
  SECTION("missing file") {
    RunResult r = run("validate --case /no/such/file.json");
    CHECK(r.code == 1);
    CHECK(r.err.find("cannot read") != std::string::npos);
  }
  SECTION("unknown variant") {
    RunResult r = run("validate --embedded --variant nope");
    CHECK(r.code == 1);
    CHECK(r.err.find("unknown embedded variant") != std::string::npos);
  }
}

TEST_CASE("clear writes the same bytes serial or parallel") {
  const fs::path d1 = scratch(), d2 = scratch(), d3 = scratch();
  RunResult r1 = run("clear --embedded --variant congested --parallel 3 --out " +
                     d1.string());
  RunResult r2 = run("clear --embedded --variant congested --parallel 3 --out " +
                     d2.string());
  RunResult r3 = run("clear --embedded --variant congested --out " + d3.string());
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(r3.code == 0);
  CHECK(r1.out.find("cleared 24/24 hours") != std::string::npos);
  const std::string dlmp = slurp(d1 / "dlmp.csv");
  CHECK(dlmp == slurp(d2 / "dlmp.csv"));
  CHECK(dlmp == slurp(d3 / "dlmp.csv"));
  CHECK(slurp(d1 / "flows.csv") == slurp(d3 / "flows.csv"));
  CHECK(count_lines(dlmp) == 1 + 24 * 13);
}

TEST_CASE("settle reproduces the golden ledger through the shell") {
  const fs::path d = scratch();
  RunResult r = run("settle --case " +
                    (kSource / "tests/golden/worked_3bus.json").string() +
                    " --out " + d.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("surplus 17.60") != std::string::npos);
  CHECK(slurp(d / "settlement.csv") ==
        slurp(kSource / "tests/golden/settlement.csv"));
  CHECK(slurp(d / "dlmp.csv") == slurp(kSource / "tests/golden/dlmp.csv"));
}

TEST_CASE("infeasible dispatch exits with its own code") {
  const fs::path p = write_case(R"({
    "schema_version": 1, "mode": "constant", "horizon": 1,
    "tlmp": [20], "assigned_power": [0.2],
    "buses": [{"id": 1, "root": true}, {"id": 2, "fixed_load": [1.0]}],
    "lines": [{"id": 1, "from": 1, "to": 2}]
  })");
  const fs::path d = scratch();
  RunResult r = run("clear --case " + p.string() + " --out " + d.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("hour 0: infeasible") != std::string::npos);
  // settle refuses a partial horizon with the same code
  r = run("settle --case " + p.string() + " --out " + d.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("cannot settle") != std::string::npos);
}

TEST_CASE("sweep validates its grid and writes the curve") {
  RunResult r = run("sweep --embedded --grid 5:1:1");
  CHECK(r.code == 1);
  CHECK(r.err.find("--grid wants start:stop:step") != std::string::npos);

  const fs::path d = scratch();
  r = run("sweep --embedded --hour 12 --grid 2:13:0.5 --out " + d.string());
  CHECK(r.code == 0);
  const std::string csv = slurp(d / "sweep.csv");
  CHECK(csv.rfind("assigned_power,average_dlmp,degenerate,infeasible\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + 23);
}

TEST_CASE("aggregate writes the stacked demand curve") {
  const fs::path d = scratch();
  RunResult r = run("aggregate --embedded --out " + d.string());
  CHECK(r.code == 0);
  const std::string csv = slurp(d / "aggregate.csv");
  CHECK(csv.rfind("hour,benefit,quantity,cumulative\n", 0) == 0);
  CHECK(csv.find("0,36.0000,0.600000,0.600000") != std::string::npos);
  CHECK(r.out.find("elastic 11.000 MW") != std::string::npos);
}

TEST_CASE("mode override swaps a constant case to variable") {
  const fs::path d = scratch();
  RunResult r = run("clear --embedded --mode variable --out " + d.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("cleared 24/24 hours") != std::string::npos);
  // uncongested variable mode prices at the wholesale price, hour 0 at 18.05
  CHECK(slurp(d / "dlmp.csv").find("0,2,18.0500") != std::string::npos);
}

TEST_CASE("help names every subcommand") {
  RunResult r = run("--help");
  CHECK(r.code == 0);
  for (const char* sub :
       {"validate", "clear", "settle", "sweep", "aggregate"})
    CHECK(r.out.find(sub) != std::string::npos);
}
