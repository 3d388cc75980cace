#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef SHAPECONE_CLI_PATH
#define SHAPECONE_CLI_PATH "shapecone"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  std::string base = "/tmp/shapecone_cli_test_" + std::to_string(counter++);
  std::string out = base + ".out", err = base + ".err";
  std::string cmd =
      std::string(SHAPECONE_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/" + name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("gale report structure and determinism") {
  RunResult a = run("gale --builtin bipyramid");
  REQUIRE(a.exit_code == 0);
  RunResult b = run("gale --builtin bipyramid");
  CHECK(a.out == b.out);  // byte-identical on repeated runs

  json j = json::parse(a.out);
  CHECK(j["schema"] == "shapecone/1");
  CHECK(j["command"] == "gale");
  CHECK(j["n"] == 6);
  CHECK(j["d"] == 3);
  CHECK(j["involution_ok"] == true);
  CHECK(j["positively_spanning"] == true);
  CHECK(j["dual"].size() == 6);
  CHECK(j["circuits"].size() >= 3);
}

TEST_CASE("report round trip: V from the report reproduces the circuits") {
  RunResult a = run("gale --builtin bipyramid");
  REQUIRE(a.exit_code == 0);
  json j = json::parse(a.out);
  json input;
  input["V"] = j["V"];
  std::string path = write_temp("roundtrip.json", input.dump());
  RunResult b = run("gale --input " + path);
  REQUIRE(b.exit_code == 0);
  json k = json::parse(b.out);
  CHECK(j["circuits"] == k["circuits"]);
  CHECK(j["dual"] == k["dual"]);
  CHECK(j["V"] == k["V"]);
}

TEST_CASE("typecones counts chambers") {
  RunResult r = run("typecones --builtin bipyramid");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["count"] == 6);
  CHECK(j["chambers"].size() == 6);
  for (const auto& c : j["chambers"]) {
    CHECK(c["complete"] == true);
    CHECK(c["simplicial"] == true);
  }

  RunResult p = run("typecones --builtin parallelepiped");
  REQUIRE(p.exit_code == 0);
  CHECK(json::parse(p.out)["count"] == 1);
}

TEST_CASE("shapespace report for the parallelepiped") {
  RunResult r = run("shapespace --builtin parallelepiped");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  REQUIRE(j["cells"].size() == 1);
  const auto& cell = j["cells"][0];
  int ideal = 0;
  for (const auto& k : cell["ray_class"])
    if (k == "ideal") ++ideal;
  CHECK(ideal == 3);
  CHECK(j["gluings"].empty());
}

TEST_CASE("qform exposes the normalized bipyramid form") {
  RunResult r = run("qform --builtin bipyramid");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["all_chambers"] == true);
  REQUIRE(j["forms"].size() == 6);
  for (const auto& c : j["forms"]) {
    CHECK(c["signature"]["positive"] == 1);
    CHECK(c["signature"]["negative"] == 2);
    CHECK(c["signature"]["zero"] == 0);
  }
}

TEST_CASE("exit codes") {
  CHECK(run("gale --builtin no-such-thing").exit_code == 2);
  CHECK(run("gale --builtin ngon17").exit_code == 3);  // exceeds the caps
  CHECK(run("gale").exit_code == 2);                   // no input selected
  std::string bad = write_temp("bad_input.json", "{ not json");
  CHECK(run("gale --input " + bad).exit_code == 2);
  std::string ragged = write_temp("ragged.json", R"({"V": [[1,0],[0,1],[1]]})");
  CHECK(run("gale --input " + ragged).exit_code == 2);
  std::string square = write_temp("square.json", R"({"V": [[1,0],[0,1]]})");
  CHECK(run("gale --input " + square).exit_code == 2);  // n must exceed d
}

TEST_CASE("machine readable errors on stderr") {
  RunResult r = run("gale --builtin ngon17");
  CHECK(r.exit_code == 3);
  json e = json::parse(r.err);
  CHECK(e.contains("error"));
}

TEST_CASE("svg output") {
  std::string dir = "/tmp/shapecone_cli_svg";
  std::string cleanup = "rm -rf " + dir;
  (void)!std::system(cleanup.c_str());
  RunResult r = run("gale --builtin parallelepiped --svg --out " + dir);
  REQUIRE(r.exit_code == 0);
  std::string svg = slurp(dir + "/gale.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(!slurp(dir + "/gale.json").empty());
  (void)!std::system(cleanup.c_str());

  // svg projection only exists for codimension 3
  CHECK(run("gale --builtin hexagon --svg").exit_code == 2);
}

TEST_CASE("exact mode emits fraction strings") {
  std::string path = write_temp("exact.json", R"({"V": [
    ["1","0","0"],["0","1","0"],["0","0","1"],
    ["-1","0","0"],["0","-1","0"],["0","0","-1"]]})");
  RunResult r = run("gale --input " + path + " --exact");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["exact"] == true);
  CHECK(j["V"][0][0].is_string());
  std::string v00 = j["V"][0][0].get<std::string>();
  CHECK(v00 == "1");

  // the same file in float mode keeps numbers
  RunResult f = run("gale --input " + path + " --float");
  REQUIRE(f.exit_code == 0);
  CHECK(json::parse(f.out)["exact"] == false);
}

TEST_CASE("oracle subcommand") {
  RunResult r = run("oracle --builtin pentagon");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["command"] == "oracle");
  CHECK(j.contains("orthoscheme"));

  RunResult s = run("oracle --builtin bipyramid");
  REQUIRE(s.exit_code == 0);
  json k = json::parse(s.out);
  CHECK(k.contains("tetra_face_areas"));
}
