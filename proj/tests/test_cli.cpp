// Command-line front end, driven in-process.
//
// Exit-code contract: 0 = all selected checks passed (including the case
// where every suite was skipped), 1 = at least one check failed,
// 2 = configuration or input error.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssmc/cli.hpp"

using namespace ssmc;

namespace {

struct cli_result {
  int code = -1;
  std::string out;
  std::string err;
};

cli_result run(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"ssmc-verify"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli_result r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

const char* impostor_manifest =
    R"({
  "name": "impostor",
  "dimension": 4,
  "coordinates": ["t", "x1", "x2", "x3"],
  "metric": [["-1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
  "pi": ["-1", "0", "0", "0"],
  "omega": "1",
  "box": [[-1,1],[-1,1],[-1,1],[-1,1]],
  "flags": {"is_grw": true}
})";

}  // namespace

TEST_CASE("listing the builtin charts") {
  const auto r = run({"--list"});
  CHECK(r.code == 0);
  for (const char* name : {"minkowski", "de_sitter_grw", "closed_grw", "sphere_concircular",
                           "cylinder_concircular", "flat_affine", "kottler"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
}

TEST_CASE("passing run in text format") {
  const auto r = run({"--manifold", "de_sitter_grw", "--points", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("RESULT: PASS") != std::string::npos);
  CHECK(r.out.find("chart: de_sitter_grw") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("JSON report carries the schema and is reproducible") {
  const std::vector<std::string> args = {"--manifold", "closed_grw", "--points", "2",
                                         "--format",   "json"};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);  // byte-identical reports

  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("manifold").at("name").get<std::string>() == "closed_grw");
  CHECK(j.at("manifold").at("dimension").get<int>() == 4);
  CHECK(j.at("config").at("points").get<int>() == 2);
  REQUIRE(j.at("suites").is_array());
  CHECK(j.at("suites").size() == 6);
  CHECK(j.at("summary").at("pass").get<bool>());
  // every emitted check has the full record shape
  for (const auto& s : j.at("suites"))
    if (s.at("status") == "ran")
      for (const auto& c : s.at("checks")) {
        CHECK(c.contains("id"));
        CHECK(c.contains("paper_ref"));
        CHECK(c.contains("point"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("mode"));
        CHECK(c.contains("pass"));
      }
}

TEST_CASE("selecting a subset of suites") {
  const auto r = run({"--manifold", "kottler", "--points", "2", "--suites", "symmetry"});
  CHECK(r.code == 0);
  CHECK(r.out.find("suite symmetry") != std::string::npos);
  CHECK(r.out.find("suite general") == std::string::npos);
}

TEST_CASE("all suites skipped still exits zero") {
  const auto r = run({"--manifold", "minkowski", "--points", "1", "--suites", "grw,fluid"});
  CHECK(r.code == 0);
  CHECK(r.out.find("skipped") != std::string::npos);
  CHECK(r.out.find("RESULT: PASS") != std::string::npos);
}

TEST_CASE("failing checks exit with code one") {
  const std::string path = write_temp("/tmp/ssmc_cli_impostor.json", impostor_manifest);
  const auto r = run({"--manifest", path, "--points", "2", "--suites", "grw"});
  CHECK(r.code == 1);
  CHECK(r.out.find("RESULT: FAIL") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("configuration errors exit with code two") {
  SECTION("neither chart source") { CHECK(run({"--points", "3"}).code == 2); }
  SECTION("both chart sources") {
    const std::string path = write_temp("/tmp/ssmc_cli_min.json", impostor_manifest);
    CHECK(run({"--manifold", "minkowski", "--manifest", path}).code == 2);
    std::remove(path.c_str());
  }
  SECTION("unknown chart") { CHECK(run({"--manifold", "nope"}).code == 2); }
  SECTION("unknown suite") {
    CHECK(run({"--manifold", "minkowski", "--suites", "bogus"}).code == 2);
  }
  SECTION("duplicate suite") {
    CHECK(run({"--manifold", "minkowski", "--suites", "grw,grw"}).code == 2);
  }
  SECTION("bad format") {
    CHECK(run({"--manifold", "minkowski", "--format", "xml"}).code == 2);
  }
  SECTION("bad point count") {
    CHECK(run({"--manifold", "minkowski", "--points", "0"}).code == 2);
  }
  SECTION("dim with manifest") {
    const std::string path = write_temp("/tmp/ssmc_cli_dim.json", impostor_manifest);
    CHECK(run({"--manifest", path, "--dim", "4"}).code == 2);
    std::remove(path.c_str());
  }
  SECTION("unsupported dimension") {
    CHECK(run({"--manifold", "kottler", "--dim", "5"}).code == 2);
  }
  SECTION("missing manifest file") {
    CHECK(run({"--manifest", "/tmp/ssmc_no_such_file.json"}).code == 2);
  }
  SECTION("unwritable output path") {
    CHECK(run({"--manifold", "minkowski", "--points", "1", "--out",
               "/no_such_dir/report.txt"})
              .code == 2);
  }
  SECTION("unparsable flag value") {
    CHECK(run({"--manifold", "minkowski", "--points", "many"}).code == 2);
  }
}

TEST_CASE("writing the report to a file") {
  const std::string path = "/tmp/ssmc_cli_report.json";
  const auto r = run({"--manifold", "de_sitter_grw", "--points", "2", "--format", "json",
                      "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());  // payload went to the file

  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  const auto j = nlohmann::json::parse(buf.str());
  CHECK(j.at("summary").at("pass").get<bool>());
  std::remove(path.c_str());
}

TEST_CASE("manifest and builtin agree on the same chart") {
  // A manifest that reproduces the builtin flat chart must yield the same
  // suite verdicts (the reports differ only in the chart name).
  const char* mink =
      R"({
  "name": "minkowski",
  "dimension": 4,
  "coordinates": ["t", "x1", "x2", "x3"],
  "metric": [["-1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
  "pi": ["-1", "0", "0", "0"],
  "omega": "0",
  "box": [[-1,1],[-1,1],[-1,1],[-1,1]],
  "flags": {"is_einstein": true, "supports_weyl_suite": true}
})";
  const std::string path = write_temp("/tmp/ssmc_cli_mink.json", mink);
  const auto via_manifest =
      run({"--manifest", path, "--points", "2", "--format", "json"});
  const auto via_builtin =
      run({"--manifold", "minkowski", "--points", "2", "--format", "json"});
  REQUIRE(via_manifest.code == 0);
  REQUIRE(via_builtin.code == 0);

  const auto jm = nlohmann::json::parse(via_manifest.out);
  const auto jb = nlohmann::json::parse(via_builtin.out);
  CHECK(jm.at("suites") == jb.at("suites"));
  CHECK(jm.at("summary") == jb.at("summary"));
  std::remove(path.c_str());
}
