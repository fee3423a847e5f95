// End-to-end tests for the command-line binary. Each case shells out to the
// real executable (path injected at compile time) with temporary files for
// inputs and outputs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fraclane/catalog.hpp"
#include "fraclane/solver.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr combined
};

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "fraclane_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path capture = scratch_dir() / ("capture_" + std::to_string(counter++));
  std::string command = std::string(FRACLANE_CLI_PATH) + " " + args + " > " +
                        capture.string() + " 2>&1";
  int status = std::system(command.c_str());
  int code = -1;
  if (status != -1) {
#ifdef WEXITSTATUS
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
    code = status;
#endif
  }
  std::ifstream in(capture);
  std::stringstream buf;
  buf << in.rdbuf();
  return RunResult{code, buf.str()};
}

std::string write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("solve emits a complete solution document") {
  RunResult r = run_cli(
      "solve --example 2 --n 1 --alpha 1 --terms 10 --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["alpha"].get<double>() == 1.0);
  CHECK(doc["M"].get<int>() == 10);
  auto coeffs = doc["coefficients"].get<std::vector<double>>();
  REQUIRE(coeffs.size() == 11);
  CHECK(std::abs(coeffs[0] - 1.0) <= 1e-15);
  CHECK(std::abs(coeffs[2] + 1.0 / 6.0) <= 1e-14);
  CHECK(std::abs(coeffs[4] - 1.0 / 120.0) <= 1e-14);
  CHECK(doc["residual_max"].get<double>() <= 1e-12);
  CHECK(doc.contains("spec"));
  CHECK(doc["spec"]["k"].get<double>() == 2.0);
  CHECK(doc["errata"].is_array());
}

TEST_CASE("solve accepts inline equations and writes files") {
  fs::path out = scratch_dir() / "sol.json";
  RunResult r = run_cli("solve --eq \"D2y + (2/x)*Dy + 1 = 0\" --y0 1 "
                        "--terms 8 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(read_file(out.string()));
  auto coeffs = doc["coefficients"].get<std::vector<double>>();
  CHECK(std::abs(coeffs[2] + 1.0 / 6.0) <= 1e-15);
}

TEST_CASE("solve round-trips a spec file") {
  std::string spec_path = write_file("spec_in.json", R"({
    "alpha": 1.0, "k": 2.0,
    "terms": [{"c": 1.0, "s": 0, "kind": {"power": 1}}],
    "rhs": [6.0, 12.0, 1.0, 1.0],
    "y0": 0.0, "dy0": 0.0
  })");
  RunResult r = run_cli("solve --spec " + spec_path + " --terms 12");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  auto coeffs = doc["coefficients"].get<std::vector<double>>();
  CHECK(std::abs(coeffs[2] - 1.0) <= 1e-13);
  CHECK(std::abs(coeffs[3] - 1.0) <= 1e-13);
  // Solution documents feed back into eval/residual.
  std::string sol_path = write_file("sol_roundtrip.json", r.output);
  RunResult rr = run_cli("residual --solution " + sol_path);
  REQUIRE(rr.exit_code == 0);
  json rep = json::parse(rr.output);
  CHECK(rep["max_abs"].get<double>() <= 1e-12);
}

TEST_CASE("solve csv lists order,coefficient rows") {
  RunResult r = run_cli("solve --example 2 --n 0 --terms 4 --format csv");
  REQUIRE(r.exit_code == 0);
  auto lines = split_lines(r.output);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "m,coefficient");
  CHECK(lines[1] == "0,1");
  CHECK(lines[3].substr(0, 2) == "2,");
}

TEST_CASE("eval walks a grid and honours single-point grids") {
  RunResult r = run_cli(
      "eval --example 2 --n 0 --alpha 1 --grid 0:2.4:0.1 --format csv");
  REQUIRE(r.exit_code == 0);
  auto lines = split_lines(r.output);
  REQUIRE(lines.size() == 26);  // header + 25 points
  CHECK(lines[0] == "x,y");
  // Row at x = 1 carries y = 1 - 1/6.
  std::string row = lines[11];
  double x, y;
  REQUIRE(std::sscanf(row.c_str(), "%lf,%lf", &x, &y) == 2);
  CHECK(std::abs(x - 1.0) <= 1e-12);
  CHECK(std::abs(y - 5.0 / 6.0) <= 1e-12);

  RunResult single = run_cli(
      "eval --example 2 --n 0 --grid 0.5:0.5:0.25 --format json");
  REQUIRE(single.exit_code == 0);
  json doc = json::parse(single.output);
  REQUIRE(doc["x"].size() == 1);
  CHECK(std::abs(doc["x"][0].get<double>() - 0.5) <= 1e-12);
  CHECK(std::abs(doc["y"][0].get<double>() -
                 (1.0 - 0.25 / 6.0)) <= 1e-12);
}

TEST_CASE("eval reuses a stored solution document") {
  fs::path sol = scratch_dir() / "sol_for_eval.json";
  REQUIRE(run_cli("solve --example 7 --terms 20 --out " +
                  sol.string()).exit_code == 0);
  RunResult r = run_cli("eval --solution " + sol.string() +
                        " --grid 0:1:0.5 --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  REQUIRE(doc["x"].size() == 3);
  // The round trip through the document must reproduce the library's own
  // evaluation of the same solve.
  double want =
      fraclane::solve(fraclane::example_spec(7, 1.0), 20).series.evaluate(1.0);
  CHECK(std::abs(doc["y"][2].get<double>() - want) <= 1e-12);
}

TEST_CASE("grids and flags are validated with exit code 2") {
  CHECK(run_cli("eval --example 2 --n 0 --grid -1:1:0.5").exit_code == 2);
  CHECK(run_cli("eval --example 2 --n 0 --grid 0:1:0").exit_code == 2);
  CHECK(run_cli("eval --example 2 --n 0 --grid 1:0:0.5").exit_code == 2);
  CHECK(run_cli("eval --example 2 --n 0 --grid nonsense").exit_code == 2);
  CHECK(run_cli("solve").exit_code == 2);
  CHECK(run_cli("solve --example 2 --n 0 --eq \"D2y + y = 0\"")
            .exit_code == 2);
  CHECK(run_cli("solve --example 9").exit_code == 2);
  CHECK(run_cli("solve --example 2").exit_code == 2);
  CHECK(run_cli("solve --example 2 --n 0 --y0 3").exit_code == 2);
  CHECK(run_cli("solve --example 2 --n 0 --sign plus").exit_code == 2);
  CHECK(run_cli("solve --eq \"D2y + y = 0\" --alpha 1.5").exit_code == 2);
  CHECK(run_cli("compare --example 7 --alpha 0.5 --classical")
            .exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("parse failures report the position and exit with 2") {
  RunResult r = run_cli("solve --eq \"D2y + sin(y) = 0\"");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("sin") != std::string::npos);
  CHECK(r.output.find("position") != std::string::npos);
}

TEST_CASE("numerical blow-ups exit with 3") {
  std::string spec_path = write_file("blowup.json", R"({
    "alpha": 1.0, "k": 2.0,
    "terms": [{"c": -1e280, "s": 0, "kind": {"power": 1}}],
    "rhs": [], "y0": 1.0, "dy0": 0.0
  })");
  RunResult r = run_cli("solve --spec " + spec_path);
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("numerical failure") != std::string::npos);
}

TEST_CASE("compare tracks the classical profiles at alpha = 1") {
  RunResult r = run_cli("compare --example 7 --alpha 1 --xmax 1");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  REQUIRE(doc["rows"].size() == 11);
  CHECK(doc["max_abs_diff"].get<double>() <= 1e-8);
  CHECK(doc["rows"][10]["x"].get<double>() == 1.0);

  RunResult r4 = run_cli(
      "compare --example 4 --n 3 --sign plus --alpha 1 --xmax 1");
  REQUIRE(r4.exit_code == 0);
  json doc4 = json::parse(r4.output);
  CHECK(doc4["max_abs_diff"].get<double>() <= 1e-8);
  CHECK(doc4["sign"] == "plus");
  CHECK(doc4["n"].get<int>() == 3);
}

TEST_CASE("compare reports the residual instead at fractional alpha") {
  RunResult r = run_cli("compare --example 5 --alpha 0.5 --xmax 1");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(!doc.contains("max_abs_diff"));
  CHECK(doc.contains("residual_max"));
  REQUIRE(doc["rows"].size() == 11);
  CHECK(doc["rows"][0]["series"].get<double>() == 1.0);
}

TEST_CASE("compare surfaces the catalog errata") {
  RunResult r = run_cli("compare --example 6 --alpha 1 --xmax 2");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  REQUIRE(doc["errata"].is_array());
  REQUIRE(!doc["errata"].empty());
  bool mentions = false;
  for (const auto& note : doc["errata"]) {
    if (note.get<std::string>().find("1/72") != std::string::npos) {
      mentions = true;
    }
  }
  CHECK(mentions);
  // The registered recurrence really does produce A_8 = 0 at alpha = 1.
  CHECK(std::abs(doc["coefficients"][8].get<double>()) <= 1e-13);
  CHECK(doc["max_abs_diff"].get<double>() <= 1e-8);
}

TEST_CASE("residual subcommand summarises the defect") {
  RunResult r = run_cli(
      "residual --example 5 --alpha 0.75 --terms 24 --format json");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.output);
  CHECK(doc["orders"].size() == 23);
  CHECK(doc["orders"][0].get<int>() == 2);
  double max_abs = doc["max_abs"].get<double>();
  double scale = doc["scale"].get<double>();
  CHECK(max_abs <= 1e-9 * std::max(1.0, scale));

  RunResult csv = run_cli(
      "residual --example 2 --n 1 --alpha 0.5 --format csv");
  REQUIRE(csv.exit_code == 0);
  auto lines = split_lines(csv.output);
  CHECK(lines[0] == "order,residual");
  CHECK(lines.size() >= 3);
}

TEST_CASE("output bytes are deterministic across reruns") {
  std::string args =
      "solve --example 1 --alpha 0.5 --terms 24 --format json";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.output == b.output);

  std::string eval_args =
      "eval --example 6 --alpha 0.8 --grid 0:2:0.125 --format csv";
  RunResult c = run_cli(eval_args);
  RunResult d = run_cli(eval_args);
  REQUIRE(c.exit_code == 0);
  CHECK(c.output == d.output);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("solve --help").exit_code == 0);
}
