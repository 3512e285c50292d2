#include "latnum/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = latnum::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("count") {
  const Run r = run({"count", "--body", "@hexagon"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"boundary\":6,\"interior\":1,\"total\":7}\n");
  const Run csv = run({"--format", "csv", "count", "--body", "@cube:3"});
  CHECK(csv.out == "total,interior,boundary\n27,1,26\n");
}

TEST_CASE("volume and polar") {
  CHECK(json::parse(run({"volume", "--body", "@cross:3:2"}).out)["volume"] == "8/3");
  const json p = json::parse(run({"polar", "--body", "@cube:2"}).out);
  CHECK(p["dim"] == 2);
  CHECK(p["vertices"].size() == 4);
  CHECK(p["vertices"][0] == json::array({"-1", "0"}));
}

TEST_CASE("polytope files") {
  const auto path = std::filesystem::temp_directory_path() / "latnum_cli_body.json";
  {
    std::ofstream f(path);
    f << R"({"dim": 2, "vertices": [["1/2", 0], [-1, "0"], [[0, 1], [1, 1]], [0, -1]]})";
  }
  const Run r = run({"count", "--body", path.string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["total"] == 4);
  {
    std::ofstream f(path);
    f << R"({"dim": 2, "vertices": [[1, 2, 3]]})";
  }
  CHECK(run({"count", "--body", path.string()}).code == 1);
  std::filesystem::remove(path);
  CHECK(run({"count", "--body", "/nonexistent/body.json"}).code == 1);
  CHECK(run({"count", "--body", "@nosuch"}).code == 1);
}

TEST_CASE("davenport") {
  const Run r = run({"davenport", "--body", "@hexagon"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["coefficients"]["{}"] == "3");
  CHECK(j["coefficients"]["{1,2}"] == "1");
  CHECK(j["rhs"] == "8");
  CHECK(j["lhs"] == 7);
  const json g = json::parse(run({"davenport", "--body", "@cube:2", "--gens", "1,1;0,1"}).out);
  CHECK(g["holds"] == true);
  CHECK(run({"davenport", "--body", "@cube:2", "--gens", "1,1;2,2"}).code == 1);
  CHECK(run({"davenport", "--body", "@cube:7"}).code == 1);
}

TEST_CASE("verify") {
  const Run r = run({"verify", "--suite", "all", "--body", "@hexagon"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["all_hold"] == true);
  CHECK(j["skipped"] == 0);
  for (const auto& row : j["results"]) CHECK(row["holds"] == true);

  const json m = json::parse(run({"verify", "--suite", "mahler", "--body", "@cube:3"}).out);
  CHECK(m["skipped"] == 1);
  CHECK(m["results"][0]["status"] == "skipped");

  const Run csv = run({"--format", "csv", "verify", "--suite", "gs-product", "--body", "@hexagon"});
  CHECK(csv.out.rfind("body,suite,inequality,status,lhs,rhs,holds,equality,slack,reason\n", 0) == 0);
  CHECK(csv.out.find("@hexagon,gs-product,gs-product,checked,21,7/2*pi^2,true,false,,") != std::string::npos);
  CHECK(run({"verify", "--suite", "nope", "--body", "@hexagon"}).code == 1);
  CHECK(run({"verify", "--suite", "all"}).code == 1);
}

TEST_CASE("output does not depend on the number of jobs") {
  const Run a = run({"--seed", "5", "verify", "--random", "12", "--builtin"});
  const Run b = run({"--seed", "5", "--jobs", "4", "verify", "--random", "12", "--builtin"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run({"--seed", "6", "verify", "--random", "12"}).out != a.out);
}

TEST_CASE("reports") {
  const json a = json::parse(run({"report", "--asymptotics", "--n-max", "20", "--epsilon", "1"}).out);
  CHECK(a["first_threshold_crossing"] == 8);
  CHECK(a["rows"][1]["laguerre_ratio"] == "7/4");
  const json g = json::parse(run({"report", "--g-monotonicity", "10"}).out);
  CHECK(g["all_hold"] == true);
  const json audit = json::parse(run({"report", "--laguerre-audit", "2"}).out);
  CHECK(audit["rows"][1]["discrepancy"] == "1");
  const json c = json::parse(run({"report", "--crosspolytope", "--n", "3", "--l-max", "5"}).out);
  CHECK(c["monotone_in_l"] == true);
  CHECK(c["rows"][1]["count"] == 9);
  CHECK(run({"report"}).code == 1);
  CHECK(run({"report", "--asymptotics", "--epsilon", "0"}).code == 1);
}

TEST_CASE("search") {
  const Run r = run({"search", "--dim", "2", "--bound", "2"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["top_value"] == "21");
  CHECK(j["top_class"] == "hexagon");
  CHECK(j["complete"] == true);
  const json f = json::parse(run({"search", "--dim", "2", "--bound", "1", "--interior", "1"}).out);
  CHECK(f["class_count"] == 3);
  CHECK(run({"search", "--dim", "3", "--bound", "4"}).code == 1);
  CHECK(run({"search", "--dim", "2"}).code == 1);
}

TEST_CASE("search checkpoint and resume") {
  const auto path = (std::filesystem::temp_directory_path() / "latnum_cli_cp.json").string();
  std::filesystem::remove(path);
  const Run whole = run({"search", "--dim", "2", "--bound", "2"});
  const Run part = run({"search", "--dim", "2", "--bound", "2", "--checkpoint", path, "--max-nodes", "150"});
  CHECK(json::parse(part.out)["complete"] == false);
  const Run rest = run({"search", "--dim", "2", "--bound", "2", "--checkpoint", path, "--resume"});
  CHECK(rest.out == whole.out);
  CHECK(run({"search", "--dim", "2", "--bound", "1", "--checkpoint", path, "--resume"}).code == 1);
  std::filesystem::remove(path);
  CHECK(run({"search", "--dim", "2", "--bound", "2", "--checkpoint", path, "--resume"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--format", "xml", "count", "--body", "@hexagon"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
