#include "catch_amalgamated.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> const& args) {
  std::ostringstream out, err;
  int const code = galact::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string const kData = GALACT_DATA_DIR;

bool contains(std::string const& hay, std::string const& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("rank subcommand", "[cli]") {
  auto const r = run({"rank", "--family", "A4", "--prime", "7"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "modulus 3\n"));
  auto const c = run({"rank", "D5", "-p", "3", "--closed-form"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "modulus 4\n"));
  CHECK(contains(c.out, "closed_form 4"));
  CHECK(run({"rank", "D5", "-p", "5"}).code == 2);
}

TEST_CASE("group and chartable subcommands", "[cli]") {
  auto const g = run({"group", "G16_8"});
  CHECK(g.code == 0);
  CHECK(contains(g.out, "16"));
  auto const t = run({"chartable", "D4", "-p", "3"});
  CHECK(t.code == 0);
  auto const tg = run({"chartable", "D4", "-p", "3", "--general"});
  CHECK(tg.code == 0);
  CHECK(tg.out == t.out);
  auto const b = run({"chartable", "H8", "-p", "3", "--brute", "2"});
  CHECK(b.code == 0);
  CHECK(contains(b.out, "classes 1\n"));
  CHECK(contains(b.out, "faithful 1"));

  // group given as a Cayley-table file
  std::string const path = (std::filesystem::temp_directory_path() / "galact_test_c3.grp").string();
  {
    std::ofstream f(path);
    f << "3\n0 1 2\n1 2 0\n2 0 1\n";
  }
  auto const file = run({"rank", path, "-p", "7"});
  std::remove(path.c_str());
  CHECK(file.code == 0);
  CHECK(contains(file.out, "modulus 1\n"));
}

TEST_CASE("usage errors exit with status 2", "[cli]") {
  auto const u = run({"frobnicate"});
  CHECK(u.code == 2);
  CHECK_FALSE(u.err.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"rank", "A4", "--bogus"}).code == 2);
  CHECK(run({"chartable", "D4", "-p", "3", "--general", "--brute", "1"}).code == 2);
  CHECK(run({"rank", "A4", "--family", "A4", "-p", "5"}).code == 2);
  CHECK(run({"verify", "--data", "/nonexistent.csv"}).code == 2);
  CHECK(run({"verify", "--data", kData + "/table1.csv", "--format", "xml"}).code == 2);
}

TEST_CASE("verify and kondo subcommands", "[cli]") {
  auto const v = run({"verify", "--data", kData + "/table1.csv"});
  CHECK(v.code == 0);
  CHECK_FALSE(contains(v.out, "FAIL"));
  CHECK(contains(v.out, "b19: p=2 rank=2 modulus=2 PASS"));
  auto const tsv = run({"verify", "--data", kData + "/table1.csv", "--format", "tsv", "--jobs", "3"});
  CHECK(tsv.code == 0);
  CHECK(contains(tsv.out, "b7\t3\t2\t2\tPASS\n"));
  auto const k = run({"kondo", "--data", kData + "/table1.csv", "--bmin", "0", "--bmax", "3"});
  CHECK(k.code == 0);
  CHECK(contains(k.out, "b=0 f=x^5-2x^4+2x^3-x^2+1"));
}

TEST_CASE("scans are deterministic for a fixed seed", "[cli]") {
  auto const a = run({"scan", "--kind", "v4", "--count", "12", "--seed", "4"});
  auto const b = run({"scan", "--kind", "v4", "--count", "12", "--seed", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "passed 12/12"));
  auto const c = run({"scan", "--kind", "v4", "--count", "12", "--seed", "5"});
  CHECK(c.out != a.out);
  CHECK(run({"scan", "--kind", "maschke", "--count", "5"}).code == 0);
  CHECK(run({"scan", "--kind", "dihedral", "--count", "5"}).code == 0);
  CHECK(run({"scan", "--kind", "normsplit", "--count", "5"}).code == 0);
  auto const grun = run({"scan", "--kind", "grun", "--family", "H8", "-p", "5"});
  CHECK(grun.code == 0);
  CHECK(contains(grun.out, "actions 4\n"));
  CHECK(run({"scan", "--kind", "nope"}).code == 2);
}

TEST_CASE("table14 at a small bound", "[cli]") {
  auto const t = run({"table14", "--pmax", "7", "--jobs", "2"});
  CHECK(t.code == 0);
  CHECK(contains(t.out, "mismatches 0\n"));
  CHECK(t.out == run({"table14", "--pmax", "7"}).out);
}
