// The documentation stays true: every JSON block under docs/ must parse and
// validate, the worked examples must clear to the numbers the text claims,
// and the committed golden outputs must match a fresh run bit for bit.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dmarket/caseio.hpp"
#include "dmarket/clearing.hpp"
#include "dmarket/settlement.hpp"

using namespace dmarket;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = DMARKET_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  return std::string((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
}

struct Fence {
  std::string lang;
  std::string body;
};

std::vector<Fence> fences(const std::string& md) {
  std::vector<Fence> out;
  std::istringstream in(md);
  std::string line;
  bool open = false;
  Fence cur;
  while (std::getline(in, line)) {
    if (line.rfind("```", 0) == 0) {
      if (!open) {
        cur = {line.substr(3), ""};
        open = true;
      } else {
        out.push_back(cur);
        open = false;
      }
    } else if (open) {
      cur.body += line;
      cur.body += '\n';
    }
  }
  return out;
}

std::vector<fs::path> doc_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kSource / "docs"))
    if (e.path().extension() == ".md") out.push_back(e.path());
  REQUIRE_FALSE(out.empty());
  return out;
}

// the JSON block whose notes field names it
std::string fence_by_note(const std::string& note) {
  for (const fs::path& p : doc_files())
    for (const Fence& f : fences(slurp(p))) {
      if (f.lang != "json") continue;
      ParseResult pr = parse_case(f.body);
      if (pr.ok() && pr.parsed->notes == note) return f.body;
    }
  FAIL("no documented case with notes \"" << note << "\"");
  return {};
}

}  // namespace

TEST_CASE("every json block in the docs parses and validates") {
  std::size_t blocks = 0;
  for (const fs::path& p : doc_files()) {
    for (const Fence& f : fences(slurp(p))) {
      if (f.lang != "json") continue;
      ++blocks;
      INFO(p.filename().string() << " json block " << blocks);
      ParseResult pr = parse_case(f.body);
      for (const Violation& v : pr.errors) INFO(v.where << ": " << v.message);
      REQUIRE(pr.ok());
      for (const Violation& v : validate_case(*pr.parsed))
        INFO(v.where << ": " << v.message);
      CHECK(validate_case(*pr.parsed).empty());
    }
  }
  CHECK(blocks >= 3);
}

TEST_CASE("the uncongested walkthrough clears to the numbers in the text") {
  ParseResult pr = parse_case(fence_by_note("worked-2bus"));
  REQUIRE(pr.ok());
  HorizonClearing hz = clear_horizon(*pr.parsed);
  REQUIRE(hz.all_cleared());
  for (double p : hz.hours[0]->dlmp) CHECK(p == Catch::Approx(30.0).margin(1e-9));
  Settlement s = settle(*pr.parsed, hz);
  CHECK(s.customer_payment_total == Catch::Approx(120.0).margin(1e-9));
  CHECK(s.utility_payment_total == Catch::Approx(60.0).margin(1e-9));
  CHECK(s.surplus_total == Catch::Approx(60.0).margin(1e-9));
}

TEST_CASE("the congested walkthrough matches the committed case byte for byte") {
  CHECK(fence_by_note("worked-3bus") ==
        slurp(kSource / "tests/golden/worked_3bus.json"));
}

TEST_CASE("a fresh run reproduces the golden outputs exactly") {
  ParseResult pr = parse_case(slurp(kSource / "tests/golden/worked_3bus.json"));
  REQUIRE(pr.ok());
  const MarketCase& cs = *pr.parsed;
  HorizonClearing hz = clear_horizon(cs);
  REQUIRE(hz.all_cleared());
  Settlement s = settle(cs, hz);
  CHECK(render_dlmp_csv(cs, hz) == slurp(kSource / "tests/golden/dlmp.csv"));
  CHECK(render_flows_csv(cs, hz) == slurp(kSource / "tests/golden/flows.csv"));
  CHECK(render_settlement_csv(s) ==
        slurp(kSource / "tests/golden/settlement.csv"));
}

TEST_CASE("the csv blocks in the walkthrough quote the golden outputs") {
  std::vector<std::string> quoted;
  for (const Fence& f : fences(slurp(kSource / "docs/worked_examples.md")))
    if (f.lang == "csv") quoted.push_back(f.body);
  REQUIRE(quoted.size() == 3);
  CHECK(quoted[0] == slurp(kSource / "tests/golden/dlmp.csv"));
  CHECK(quoted[1] == slurp(kSource / "tests/golden/flows.csv"));
  CHECK(quoted[2] == slurp(kSource / "tests/golden/settlement.csv"));
}
