#include <filesystem>
#include <fstream>
#include <sstream>

#include "chih/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace chih;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string source(const std::string& rel) { return std::string(CHIH_SOURCE_DIR) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

const std::string kT3 = source("maps/t3.json");
const std::string kT5 = source("maps/t5.json");
const std::string kC = source("maps/collatz.json");

}  // namespace

TEST_CASE("validate") {
  const Run t3 = run({"validate", "--map", kT3});
  CHECK(t3.code == kOk);
  CHECK(first_line(t3.out) == "basic, q_H = 3");
  CHECK(t3.out.find("mu_1: 3") != std::string::npos);

  const Run c = run({"validate", "--map", kC});
  CHECK(c.code == kOk);
  CHECK(first_line(c.out).rfind("valid, not simple", 0) == 0);

  const Run bad = run({"validate", "--map-json", R"({"rho":2,"branches":[{"a":1,"b":0,"d":2},{"a":3,"b":1,"d":0}]})"});
  CHECK(bad.code == kInputError);
  CHECK(bad.err.find("branches[1].d") != std::string::npos);

  const Run invalid = run({"validate", "--map-json", R"({"rho":2,"branches":[{"a":1,"b":0,"d":2},{"a":3,"b":2,"d":2}]})"});
  CHECK(invalid.code == kFailure);
  CHECK(first_line(invalid.out) == "invalid");

  const Run json = run({"validate", "--map", kT3, "--format", "json"});
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["flags"]["basic"] == true);
  CHECK(doc["q_H"] == 3);
}

TEST_CASE("table matches the golden files") {
  for (const auto& [map, golden] : {std::pair{kT3, "tests/golden/table_t3.csv"}, std::pair{kT5, "tests/golden/table_t5.csv"}}) {
    const Run r = run({"table", "--map", map, "--n-min", "0", "--n-max", "14"});
    CHECK(r.code == kOk);
    CHECK(r.out == slurp(source(golden)));
  }
  const Run row0 = run({"table", "--map", kC, "--n-max", "0"});
  CHECK(row0.out.substr(row0.out.find('\n') + 1) == "0,0,0,0,0,1,0,1,true\n");
  const Run json = run({"table", "--map", kT3, "--format", "json"});
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc[11]["chi_B"]["num"] == "-29");
  CHECK(doc[11]["chi_B"]["den"] == "11");
  CHECK(run({"table", "--map", kT3, "--n-min", "5", "--n-max", "2"}).code == kInputError);
}

TEST_CASE("search") {
  const Run r = run({"search", "--map", kT3, "--n-max", "65536"});
  CHECK(r.code == kOk);
  CHECK(r.err.find("unverified 0") != std::string::npos);
  CHECK(first_line(r.out) == "n,x_num,x_den,is_integer,verified,cycle_min,cycle_len,D,abs_D_is_one");
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line == "1,-1,1,true,true,-1,1,-1,true");

  const Run json = run({"search", "--map", kT5, "--n-max", "16", "--format", "json"});
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["summary"]["integer_hits"] == 2);
  CHECK(doc["reports"][9]["x"]["num"] == "-1");

  CHECK(run({"search", "--map", kC, "--n-max", "16"}).code == kInputError);
  const Run loose = run({"search", "--map", kC, "--n-max", "16", "--allow-semi-basic"});
  CHECK(loose.code == kOk);
  CHECK(loose.err.find("semi-basic") != std::string::npos);
}

TEST_CASE("output is identical for any worker count") {
  const Run one = run({"search", "--map", kT3, "--n-max", "20000", "--threads", "1"});
  for (const char* t : {"4", "8"}) {
    const Run many = run({"search", "--map", kT3, "--n-max", "20000", "--threads", t});
    CHECK(many.out == one.out);
  }
}

TEST_CASE("audit") {
  const Run t3 = run({"audit", "--map", kT3, "--max-len", "12", "--seed-bound", "200"});
  CHECK(t3.code == kOk);
  CHECK(t3.err.find(" 0 integer wrong values") != std::string::npos);
  const Run c = run({"audit", "--map", kC, "--max-len", "3", "--seed-bound", "10", "--format", "json"});
  CHECK(c.code == kOk);
  CHECK(nlohmann::json::parse(c.out)["integer_wrong_values"].get<int>() > 0);
}

TEST_CASE("spectral") {
  const Run r = run({"spectral", "--map", kT3, "--level", "2", "--depth", "12"});
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("# q=3 level=2", 0) == 0);
  const Run json = run({"spectral", "--map", kT3, "--level", "2", "--format", "json"});
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["distribution"].size() == 9);
  CHECK(doc["meta"]["fe_residual"].get<double>() < 1e-10);
}

TEST_CASE("denominators") {
  const Run r = run({"denominators", "--map", kT3, "--n-max", "10"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("\n10,4,7,7,false,true,4,3,2,true\n") != std::string::npos);
  CHECK(r.err.find("violations 0") != std::string::npos);
}

TEST_CASE("output file and argument errors") {
  const auto path = std::filesystem::temp_directory_path() / "chih_table_test.csv";
  const Run r = run({"table", "--map", kT3, "--out", path.string()});
  CHECK(r.code == kOk);
  CHECK(r.out.empty());
  CHECK(slurp(path.string()) == slurp(source("tests/golden/table_t3.csv")));
  std::filesystem::remove(path);

  CHECK(run({}).code == kInputError);
  CHECK(run({"frobnicate"}).code == kInputError);
  CHECK(run({"table"}).code == kInputError);
  CHECK(run({"table", "--map", "/nonexistent.json"}).code == kInputError);
  CHECK(run({"table", "--map", kT3, "--format", "xml"}).code == kInputError);
  CHECK(run({"--help"}).code == kOk);
}
