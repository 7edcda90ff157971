#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/json_io.hpp"
#include "symcalc/verify.hpp"

using namespace symcalc;
using namespace symcalc::cli;

namespace {

std::filesystem::path scratch(const std::string& name, const std::string& contents) {
  const auto dir = std::filesystem::temp_directory_path() / "symcalc_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << contents;
  return path;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("symbol JSON round trip") {
  std::mt19937_64 rng(12);
  const ClassicalSymbol a = random_symbol(1, 2, 2, 3, rng);
  const ClassicalSymbol b = symbol_from_json(symbol_to_json(a));
  CHECK(b.order() == a.order());
  CHECK(b.depth() == a.depth());
  CHECK(component_distance(a, b) == 0.0);
}

TEST_CASE("explicit symbol schema fills missing levels with zero") {
  const json doc = json::parse(R"({"order": 0, "fiber_dim": 1, "components": [
      {"degree": -2, "plus": [[1, [[[0.5, 0.0]]]]]}]})");
  const ClassicalSymbol a = symbol_from_json(doc);
  CHECK(a.depth() == 2);
  CHECK(a.component(0).is_zero());
  CHECK(std::abs(a.component(2).minus.scalar_coefficient(1) - 0.5) == 0.0);
  CHECK_THROWS_AS(symbol_from_json(json::parse(R"({"order": 0.3, "fiber_dim": 1, "components": []})")),
                  DomainError);
  CHECK_THROWS_AS(symbol_from_json(json::parse(R"({"kind": "banana"})")), SchemaError);
}

TEST_CASE("distribution names") {
  CHECK(distribution_from_name("uniform+").kind() == CosphereDistribution::Kind::UniformPlus);
  CHECK(distribution_from_name("uniform").kind() == CosphereDistribution::Kind::UniformBoth);
  CHECK(distribution_from_name("delta:0.5:-").kind() == CosphereDistribution::Kind::Delta);
  CHECK(distribution_from_name("d(mode:2:+)").kind() == CosphereDistribution::Kind::Derivative);
  CHECK_THROWS_AS(distribution_from_name("delta:x:+"), SchemaError);
  CHECK_THROWS_AS(distribution_from_name("gaussian"), SchemaError);
}

TEST_CASE("residue command") {
  const auto inverse_root = scratch("inverse_root.json", R"({"kind": "weight_power", "s": -0.5, "fiber_dim": 1})");
  const Outcome r = invoke({"residue", inverse_root.string()});
  REQUIRE(r.code == kSuccess);
  const json report = json::parse(r.out);
  CHECK(report["res_w"][0].get<double>() == doctest::Approx(2.0));
  CHECK(report["config"]["seed"] == 7);

  const auto mult = scratch("mult.json", R"({"kind": "multiplication", "fiber_dim": 1, "function": [[0, [[[1,0]]]], [2, [[[0,1]]]]]})");
  CHECK(json::parse(invoke({"residue", mult.string()}).out)["res_w"][0].get<double>() == 0.0);

  const auto low = scratch("low.json", R"({"kind": "weight_power", "s": -1.5, "fiber_dim": 2})");
  const json low_report = json::parse(invoke({"residue", low.string()}).out);
  CHECK(low_report["res_w"][0].get<double>() == 0.0);
  CHECK(low_report["integrand_zero_mode"].is_null());
}

TEST_CASE("reports are byte-stable") {
  const auto path = scratch("stable.json", R"({"kind": "identity", "fiber_dim": 2})");
  const Outcome a = invoke({"--modes", "200", "--eps-min", "1e-3", "--eps-max", "1e-1", "heat-fit", path.string()});
  const Outcome b = invoke({"--modes", "200", "--eps-min", "1e-3", "--eps-max", "1e-1", "heat-fit", path.string()});
  REQUIRE(a.code == kSuccess);
  CHECK(a.out == b.out);
  const Outcome c = invoke({"--seed", "3", "loop-curvature", "--loop-modes", "1"});
  const Outcome d = invoke({"--seed", "3", "loop-curvature", "--loop-modes", "1"});
  CHECK(c.code == kSuccess);
  CHECK(c.out == d.out);
}

TEST_CASE("heat-fit of the zero symbol gives an all-zero report") {
  const auto zero = scratch("zero.json", R"({"order": 0, "fiber_dim": 1, "components": [{"degree": 0, "plus": []}]})");
  const Outcome r = invoke({"--modes", "100", "heat-fit", zero.string()});
  REQUIRE(r.code == kSuccess);
  const json report = json::parse(r.out);
  for (const auto& c : report["coefficients"]) CHECK(std::abs(c[0].get<double>()) + std::abs(c[1].get<double>()) == 0.0);
  CHECK(report["finite_part"][0].get<double>() == 0.0);
  CHECK(report["comparison"]["a0"]["predicted"][0].get<double>() == 0.0);
}

TEST_CASE("heat-fit compares a0 and b0") {
  const auto id = scratch("id.json", R"({"kind": "identity", "fiber_dim": 1})");
  const auto csv = std::filesystem::temp_directory_path() / "symcalc_cli_tests" / "sweep.csv";
  const Outcome r = invoke({"heat-fit", id.string(), "--csv", csv.string()});
  REQUIRE(r.code == kSuccess);
  const json report = json::parse(r.out);
  CHECK(report["comparison"]["a0"]["agree"] == true);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "epsilon,trace_re,trace_im");
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == kUsageError);
  CHECK(invoke({"frobnicate"}).code == kUsageError);
  CHECK(invoke({"residue", "/nonexistent/symbol.json"}).code == kUsageError);
  const auto broken = scratch("broken.json", "{ not json");
  CHECK(invoke({"residue", broken.string()}).code == kUsageError);
  const auto id = scratch("id2.json", R"({"kind": "identity", "fiber_dim": 1})");
  CHECK(invoke({"--modes", "0", "residue", id.string()}).code == kUsageError);
  CHECK(invoke({"--eps-min", "1e-2", "--eps-max", "1e-3", "heat-fit", id.string()}).code == kUsageError);
  CHECK(invoke({"verify", "everything"}).code == kUsageError);
  CHECK(invoke({"loop-curvature", "--connection", "flat"}).code == kUsageError);
  CHECK(invoke({"--help"}).code == kSuccess);
}

}  // TEST_SUITE
