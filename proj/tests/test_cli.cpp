#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace eqindex;
using namespace eqindex::cli;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the installed binary; stderr is discarded.
Run tool(const std::string& args) {
  const std::string cmd = std::string(EQINDEX_TOOL) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_config(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("eqindex_test_" + name + ".ini");
  std::ofstream(path) << text;
  return path.string();
}

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse(
      "[model]\nkind = plane_weight\nwindow = 0:8\nn_r = 200\nf = 1+r^2\n"
      "[policy]\nmin_gap_ratio = 20\n[run]\nseed = 42\nformat = machine\n");
  CHECK(c.model.kind == ModelKind::plane_weight);
  CHECK(c.model.window_lo == 0);
  CHECK(c.model.window_hi == 8);
  CHECK(c.model.plane.radial_points == 200);
  CHECK(c.model.plane.rescaling == Rescaling::quad);
  CHECK(c.policy.min_gap_ratio == 20.0);
  CHECK(c.seed == 42);
  CHECK(c.stability.seed == 42);

  const auto t = parse("[model]\nkind = toeplitz\nsymbol = 0:2, 1:1:-1\npotential = 0.5*sin\n");
  CHECK(t.model.symbol.at(1) == cdouble(1, -1));
  CHECK(std::abs(t.model.potential.at(1) - 0.5 / cdouble(0, 2)) < 1e-15);
  CHECK(parse("[model]\n").model.kind == ModelKind::shift);
}

TEST_CASE("malformed configs are rejected") {
  CHECK_THROWS_AS(parse("[model]\nkind = sphere\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nN = twelve\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nN = 7\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\ncolour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse("[extras]\na = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("stray = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model\nkind = shift\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nwindow = 3:1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nn_r = 10\n"), ConfigError);
  CHECK_THROWS_AS(parse("[model]\nr0 = 9\n"), ConfigError);
  CHECK_THROWS_AS(parse("[policy]\nmin_gap_ratio = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("[run]\ntask = convergence\nresolutions = 10, 20\n"), ConfigError);
  CHECK_THROWS_AS(parse("[operator]\norder = 2\n"), ConfigError);
}

TEST_CASE("shift config gives index 2 and exit 0") {
  const auto path = write_config("shift", "[model]\nkind = shift\nN = 20\n[run]\nformat = machine\n");
  const Run r = tool("run --config " + path);
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["passed"] == true);
  CHECK(j["reports"][0]["index"] == 2);
  CHECK(j["reports"][0]["labels"][0]["kernel"] == 2);
}

TEST_CASE("plane window from flags") {
  const Run r = tool("run --model plane_weight --window=0:8 --resolution 200 --format machine");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& labels = j["reports"][0]["labels"];
  REQUIRE(labels.size() == 9);
  for (const auto& l : labels) {
    CHECK(l["kernel"] == 0);
    CHECK(l["cokernel"] == 1);
  }
  CHECK(j["reports"][0]["window"][1] == 8);
}

TEST_CASE("flags override the config") {
  const auto path = write_config("override", "[model]\nkind = toeplitz\nsymbol = -2:1\nN = 16\n");
  Overrides o;
  o.config = path;
  o.format = "machine";
  auto j = nlohmann::json::parse(cmd_run(o).out);
  CHECK(j["reports"][0]["index"] == 2);
  o.model = "shift";
  o.resolution = 8;
  const auto out = cmd_run(o);
  CHECK(out.exit_code == kExitOk);
  j = nlohmann::json::parse(out.out);
  CHECK(j["reports"][0]["metadata"]["N"] == "8");
  CHECK(j["reports"][0]["index"] == 2);
}

TEST_CASE("a strict tolerance makes the decision indeterminate") {
  Overrides o;
  o.model = "circle_first_order";
  o.resolution = 16;
  // With a relative factor near 1 the threshold falls between the two
  // largest singular values, which differ by only a few percent.
  o.tol = 0.99;
  const auto out = cmd_run(o);
  CHECK(out.exit_code == kExitIndeterminate);
  CHECK(out.out.find("INDETERMINATE") != std::string::npos);
}

TEST_CASE("bad input exits 1") {
  const auto path = write_config("bad", "[model]\nkind = shift\nN = banana\n");
  CHECK(tool("run --config " + path).status == 1);
  CHECK(tool("run --config /nonexistent/eqindex.ini").status == 1);
  CHECK(tool("suite nope").status == 1);
  CHECK(tool("run --format yaml").status == 1);
  CHECK(tool("frobnicate").status == 1);
  CHECK(tool("--help").status == 0);
}

TEST_CASE("machine output is deterministic") {
  const std::string args = "suite stability --seed 7 --format machine";
  const Run a = tool(args);
  const Run b = tool(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["reports"][0]["seed"] == 7);
}

TEST_CASE("symbols suite passes") {
  const auto out = cmd_suite("symbols", {});
  CHECK(out.exit_code == kExitOk);
  CHECK(out.out.find("FAIL") == std::string::npos);
}

TEST_CASE("operator section is checked for ellipticity") {
  const auto path = write_config("op",
                                 "[model]\nkind = shift\n[operator]\norder = 2\ndim = 2\n"
                                 "2,0 = 1\n0,2 = 1 + x1^2\n[run]\nformat = machine\n");
  Overrides o;
  o.config = path;
  const auto j = nlohmann::json::parse(cmd_run(o).out);
  REQUIRE(j["reports"].size() == 2);
  CHECK(j["reports"][1]["metadata"]["elliptic"] == "true");
}

TEST_CASE("dump") {
  const Run r = tool("dump --model shift --resolution 4");
  CHECK(r.status == 0);
  CHECK(r.out.find("0 0 1 0\n0 0 0 1\n") != std::string::npos);
  Overrides o;
  o.model = "plane_glued";
  o.window = std::make_pair(0, 0);
  o.resolution = 100;
  o.format = "machine";
  const auto j = nlohmann::json::parse(cmd_dump(o).out);
  REQUIRE(j["models"].size() == 2);
  CHECK(j["models"][0]["name"] == "inner m=0");
  CHECK(j["models"][0]["rows"].get<int>() == j["models"][0]["cols"].get<int>() + 1);
}
