#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "redblack/serialize.hpp"

using namespace redblack;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "redblack");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path tmp(const std::string& name) {
  const char* base = std::getenv("REDBLACK_TEST_TMP");
  auto dir = std::filesystem::path(base ? base : ".") / "cli_tmp";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("gen writes a manifest and the table", "[cli][gen]") {
  const auto r = run({"gen", "--M", "3", "--family", "power", "--p", "2"});
  REQUIRE(r.code == 0);
  const auto j = r.json();
  CHECK(j["manifest"]["tool"] == "redblack");
  CHECK(j["manifest"]["subcommand"] == "gen");
  CHECK(j["manifest"]["parameters"]["M"] == 3);
  CHECK(j["M"] == 3);
  CHECK(j["entries"][0][0].is_null());
  CHECK(j["entries"][1][2].get<double>() == Catch::Approx(1.0 / 9.0).epsilon(1e-15));

  const auto kp = run({"gen", "--M", "3", "--family", "kp", "--k", "one", "--c", "1"}).json();
  CHECK(kp["phi"].size() == 4);

  const auto csv = run({"gen", "--M", "2", "--family", "power", "--p", "1", "--csv"});
  CHECK(csv.out.rfind("NA,0,0\n", 0) == 0);
}

TEST_CASE("gen output feeds --table", "[cli][gen]") {
  const auto path = tmp("el4.json");
  REQUIRE(run({"gen", "--M", "4", "--family", "exp-el", "--out", path.string()}).code == 0);
  const auto r = run({"check", "--table", path.string()});
  CHECK(r.code == 1);
  const auto j = r.json();
  CHECK(j["manifest"]["inputs"][0] == path.string());
  CHECK(j["result"]["pass"] == false);
  CHECK(j["result"]["fairness"]["classification"] == "neither");
}

TEST_CASE("check exit codes", "[cli][check]") {
  CHECK(run({"check", "--M", "4", "--family", "power", "--p", "3"}).code == 0);
  CHECK(run({"check", "--M", "6", "--family", "power", "--p", "2"}).code == 1);
  const auto e2 = run({"check", "--M", "4", "--family", "min-exp", "--m", "1"});
  CHECK(e2.code == 1);
  const auto checks = e2.json()["result"]["checks"];
  bool i1_failed = false;
  for (const auto& c : checks)
    if (c["check"] == "I1") i1_failed = c["pass"] == false && c["witnesses"][0]["indices"] == Json::parse("[2,1]");
  CHECK(i1_failed);
  CHECK(run({"check", "--M", "5", "--family", "kp", "--k", "root-exp", "--c", "0"}).code == 1);
}

TEST_CASE("tolerance comes from the environment unless overridden", "[cli][check]") {
  ::setenv("REDBLACK_TOL", "1e-6", 1);
  auto j = run({"check", "--M", "3", "--family", "power"}).json();
  CHECK(j["manifest"]["tolerances"]["cmp"] == 1e-6);
  j = run({"check", "--M", "3", "--family", "power", "--tol", "1e-9"}).json();
  CHECK(j["manifest"]["tolerances"]["cmp"] == 1e-9);
  ::unsetenv("REDBLACK_TOL");
}

TEST_CASE("solve and nash", "[cli][nash]") {
  const auto s = run({"solve", "--M", "3", "--family", "power", "--p", "2"});
  REQUIRE(s.code == 0);
  const auto q = s.json()["result"]["product_form"]["Q"];
  CHECK(q[1].get<double>() == Catch::Approx(1.0 / 9.0));

  CHECK(run({"nash", "--M", "4", "--family", "power", "--x0", "2"}).code == 0);
  const auto bad = run({"nash", "--M", "4", "--family", "min-exp", "--m", "1", "--x0", "3"});
  CHECK(bad.code == 1);
  CHECK(bad.json()["result"]["deviation"]["strategy"][3] == 1);

  const auto prof = tmp("cycle_profile.json");
  write(prof, R"({"I": [0, 1, 1, 2, 0], "II": [0, 1, 1, 2, 0]})");
  const auto c = run({"solve", "--M", "4", "--family", "power", "--profile", prof.string()});
  CHECK(c.code == 0);
  CHECK(c.json()["manifest"]["inputs"][0] == prof.string());
}

TEST_CASE("enum", "[cli][enum]") {
  const auto r = run({"enum", "--M", "4", "--family", "exp-el", "--x0", "1"});
  REQUIRE(r.code == 0);
  const auto by = r.json()["result"]["by_x0"];
  REQUIRE(by.size() == 1);
  CHECK(by[0]["x0"] == 1);
  CHECK(by[0]["equilibria"].size() > 0);

  const auto all = run({"enum", "--M", "3", "--family", "power"}).json();
  CHECK(all["result"]["by_x0"].size() == 2);
  CHECK(run({"enum", "--M", "9", "--family", "power"}).code == 2);
  CHECK(run({"enum", "--M", "5", "--family", "power", "--max-enum", "4"}).code == 2);
}

TEST_CASE("sim is reproducible", "[cli][sim]") {
  const std::vector<std::string> args{"sim", "--M", "4", "--family", "power", "--x0", "2",
                                      "--trials", "2000", "--seed", "11"};
  const auto a = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == run(args).out);
  auto more = args;
  more.insert(more.end(), {"--jobs", "3"});
  CHECK(a.json()["result"]["sim"] == run(more).json()["result"]["sim"]);

  const auto trace = tmp("trace.csv");
  auto with_trace = args;
  with_trace.insert(with_trace.end(), {"--trace", trace.string()});
  CHECK(run(with_trace).code == 0);
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,X_n,a_n,b_n");
}

TEST_CASE("report renders artifacts", "[cli][report]") {
  const auto path = tmp("check_min_exp.json");
  run({"check", "--M", "4", "--family", "min-exp", "--m", "1", "--out", path.string()});
  const auto r = run({"report", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("I1: FAIL") != std::string::npos);
  CHECK(r.out.find("(2,1)") != std::string::npos);

  const auto table = tmp("p2.json");
  run({"gen", "--M", "3", "--family", "power", "--out", table.string()});
  CHECK(run({"report", table.string()}).out.find("M = 3") != std::string::npos);
}

TEST_CASE("input errors exit with 2", "[cli][errors]") {
  CHECK(run({"check"}).code == 2);
  CHECK(run({"check", "--M", "4", "--family", "cubic"}).code == 2);
  CHECK(run({"check", "--M", "1", "--family", "power"}).code == 2);
  CHECK(run({"check", "--M", "4", "--family", "power", "--p", "0.5"}).code == 2);
  CHECK(run({"check", "--table", "/nonexistent.json"}).code == 2);
  const auto bad = tmp("bad.json");
  write(bad, "{ not json");
  CHECK(run({"check", "--table", bad.string()}).code == 2);
  write(bad, R"({"M": 1, "entries": [[0, 0], [1, 0.5]]})");
  CHECK(run({"check", "--table", bad.string()}).code == 2);
  CHECK(run({"nash", "--M", "4", "--family", "power", "--x0", "4"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
}
