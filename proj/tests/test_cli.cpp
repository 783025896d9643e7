#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = JOHNFORGE_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / "johnforge_cli_test";
  fs::create_directories(dir);
  fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = kCli + " " + args + " > " + out.string() + " 2> " + err.string();
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = rc < 0 ? rc : WEXITSTATUS(rc);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path tmpfile(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "johnforge_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("whitney subcommand writes valid JSON and SVG artifacts") {
  auto jpath = tmpfile("whitney.json");
  auto spath = tmpfile("whitney.svg");
  auto r = run("whitney --shape disk:0.5 --level 7 --out " + jpath.string() +
               " --svg " + spath.string());
  REQUIRE(r.exit_code == 0);

  auto doc = json::parse(slurp(jpath));
  CHECK(doc.at("schema") == "johnforge/1");
  CHECK(doc.at("squares").is_array());
  CHECK(!doc.at("squares").empty());
  CHECK(doc.at("params").at("shape") == "disk:0.5");

  auto svg = slurp(spath);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("john-estimate consumes the whitney artifact") {
  auto jpath = tmpfile("whitney_in.json");
  REQUIRE(run("whitney --shape circle:1 --level 8 --out " + jpath.string()).exit_code == 0);
  auto r = run("john-estimate --in " + jpath.string() + " --samples 4 --seed 5");
  REQUIRE(r.exit_code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc.at("epsilon_lower").get<double>() > 0.0);
  CHECK(doc.at("samples").size() == 4);
}

TEST_CASE("simplify rejects an out-of-bound delta with exit 1 and a structured error") {
  auto r = run("simplify --shape disk:0.5 --level 7 --delta 0.49");
  CHECK(r.exit_code == 1);
  auto err = json::parse(r.err);
  CHECK(err.at("error") == "parameter");
  CHECK(err.at("message").get<std::string>().find("bound") != std::string::npos);
}

TEST_CASE("simplify succeeds on a disk and reports verification") {
  auto r = run("simplify --shape disk:0.5 --level 7 --delta 0.1 --john-samples 2");
  REQUIRE(r.exit_code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc.at("verification").at("connected") == true);
  CHECK(doc.at("verification").at("simply_connected") == true);
}

TEST_CASE("capacity of a segment matches the closed form") {
  auto r = run("capacity --shape segment:4 --method energy --points 512 --level 9");
  REQUIRE(r.exit_code == 0);
  auto doc = json::parse(r.out);
  // cap of a segment of length 4 is 1
  CHECK(doc.at("value").get<double>() == Catch::Approx(1.0).epsilon(0.02));
}

TEST_CASE("identical invocations produce byte-identical output") {
  std::string args = "removability --shape circle:1 --level 8 --n-list 4,8 --seed 3";
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);

  auto c = run("measure --shape circle:1 --level 8 --walks 2000 --seed 9");
  auto d = run("measure --shape circle:1 --level 8 --walks 2000 --seed 9");
  REQUIRE(c.exit_code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("whitney --shape disk:0.5 --frobnicate").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("whitney").exit_code == 2);  // missing required --shape
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("domain errors exit with 1 and name their kind") {
  auto r = run("rasterize --shape julia:10,0,50,2 --level 8");
  CHECK(r.exit_code == 1);
  auto err = json::parse(r.err);
  CHECK(err.at("error") == "geometry");

  auto r2 = run("rasterize --shape disk:-1 --level 8");
  CHECK(r2.exit_code == 1);
  CHECK(json::parse(r2.err).at("error") == "parameter");
}

TEST_CASE("witness subcommand reports a valid decay table") {
  auto r = run("witness --shape fat_cantor:0.2 --level 8 --box-half 0.6 --n-list 4,16,32");
  REQUIRE(r.exit_code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc.at("valid") == true);
  CHECK(doc.at("sup_norms").size() == 3);
}
