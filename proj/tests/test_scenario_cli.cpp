#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "condensa/cli.hpp"

using namespace condensa;

namespace {

std::filesystem::path temp_scenario(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "condensa-tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path);
  out << content;
  return path;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return CliResult{code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("built-in scenarios round-trip through serialization", "[scenario]") {
  for (const auto& name : builtin_scenario_names()) {
    INFO(name);
    const auto b = builtin_scenario(name);
    const auto reloaded = parse_scenario(serialize_scenario(b));
    CHECK(scenario_equal(b, reloaded));
  }
  CHECK_THROWS_AS(builtin_scenario("no-such-example"), validation_error);
}

TEST_CASE("checked-in scenario files match the built-ins", "[scenario]") {
  const std::filesystem::path dir = CONDENSA_SCENARIO_DIR;
  for (const auto& name : builtin_scenario_names()) {
    INFO(name);
    const auto path = dir / (name + ".json");
    const auto b = builtin_scenario(name);
    CHECK(read_file(path) == scenario_to_string(b));
    CHECK(scenario_equal(parse_scenario(Json::parse(read_file(path))), b));
  }
}

TEST_CASE("parser accepts the convenience spellings", "[scenario]") {
  const auto full = builtin_scenario("toric-swap");
  const auto sugar = parse_scenario(Json::parse(R"({
    "kind": "metric",
    "name": "toric-swap",
    "theory": {"named": "toric code"},
    "algebra": {"generators": [1]},
    "action": {
      "group": {"cyclic": 2},
      "generators": [1],
      "images": [[0, 2, 1, 3]],
      "omega": [["1", "1"], ["1", "1"]]
    }
  })"));
  CHECK(same_theory(*full.theory, *sugar.theory));
  CHECK(sugar.algebra == std::vector<int>{0, 1});
  CHECK(sugar.action->alpha == full.action->alpha);
  CHECK(sugar.action->omega == full.action->omega);

  // the double of Z2 is the toric code with flux-first labels
  const auto dd = parse_scenario(Json::parse(R"({"kind":"metric","theory":{"double":[2]}})"));
  CHECK(dd.theory->q == toric_code().q);
  CHECK(identify_metric_group(*dd.theory) == "toric code");
  const auto named = parse_scenario(Json::parse(R"({
    "kind": "metric",
    "theory": {"factors": [2,2], "q": ["0/1","0/1","0/1","1/2"]},
    "action": {"group": {"named": "S3"}}
  })"));
  CHECK(named.action->G.order() == 6);  // trivial action of a named group
  CHECK(named.action->omega == Cochain2(6, std::vector<int>(6, 0)));
}

TEST_CASE("parser names the offending field", "[scenario]") {
  const auto expect_error = [](const std::string& doc, const std::string& needle) {
    try {
      parse_scenario(Json::parse(doc));
      FAIL("expected a validation error mentioning " + needle);
    } catch (const validation_error& e) {
      CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
    }
  };
  expect_error(R"({"name":"x"})", "kind");
  expect_error(R"({"kind":"metric"})", "theory");
  expect_error(R"({"kind":"metric","theory":{"factors":[2],"q":[0.5,0.0]}})", "num/den");
  expect_error(R"({"kind":"metric","theory":{"named":"nonsense"}})", "theory.named");
  expect_error(R"({"kind":"metric","theory":{"named":"semion"},"algebra":{"generators":[7]}})",
               "algebra.generators");
  expect_error(R"({"kind":"metric","theory":{"named":"toric code"},
                   "action":{"group":{"cyclic":4},"generators":[2],"images":[[0,1,2,3]]}})",
               "generate");
  expect_error(R"({"kind":"metric","theory":{"named":"toric code"},
                   "action":{"group":{"cyclic":2},"omega":[[0,0],[0,"bogus"]]}})",
               "omega[1][1]");
  expect_error(R"({"kind":"universal","total":{"cyclic":4},"base":{"cyclic":2},
                   "projection":[0,0,0,0]})",
               "surjective");
}

TEST_CASE("cli reports the worked toric verdicts", "[cli]") {
  const auto frac_m = temp_scenario("frac-m.json", scenario_to_string(builtin_scenario("toric-frac-m")));
  const auto r = run_cli({"splittings", frac_m.string()});
  CHECK(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring(
                        "verdict: BROKEN: 0 splittings; Aut_{C^G}(I(A)) ~ Z4"));

  const auto frac_e = temp_scenario("frac-e.json", scenario_to_string(builtin_scenario("toric-frac-e")));
  const auto r2 = run_cli({"splittings", frac_e.string()});
  CHECK(r2.code == 0);
  CHECK_THAT(r2.out, Catch::Matchers::ContainsSubstring(
                         "verdict: PRESERVED: 2 splittings in 2 classes; extension ~ Z2 x Z2"));

  const auto swap = temp_scenario("swap.json", scenario_to_string(builtin_scenario("toric-swap")));
  const auto r3 = run_cli({"splittings", swap.string()});
  CHECK(r3.code == 0);
  CHECK_THAT(r3.out, Catch::Matchers::ContainsSubstring("first obstruction: FAILED"));

  // determinism: byte-identical reruns
  CHECK(run_cli({"splittings", frac_m.string()}).out == r.out);
}

TEST_CASE("cli json reports carry the same verdicts", "[cli]") {
  const auto frac_m = temp_scenario("frac-m.json", scenario_to_string(builtin_scenario("toric-frac-m")));
  const auto r = run_cli({"splittings", frac_m.string(), "--json"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j.at("verdict") == "BROKEN");
  CHECK(j.at("structures") == 0);
  CHECK(j.at("extension") == "Z4");
  CHECK(j.at("first_obstruction") == "passed");

  const auto meta = temp_scenario("meta.json", scenario_to_string(builtin_scenario("metaplectic")));
  const auto r2 = run_cli({"obstruction", meta.string(), "--json"});
  REQUIRE(r2.code == 0);
  const auto j2 = Json::parse(r2.out);
  CHECK(j2.at("first_obstruction") == "failed");
  CHECK(j2.at("aut") == "Z3");
  CHECK(j2.at("verdict") == "BROKEN");
}

TEST_CASE("cli exit codes distinguish failure modes", "[cli]") {
  // missing field: condense without an algebra
  const auto bare = temp_scenario("bare.json",
                                  R"({"kind":"metric","theory":{"named":"toric code"}})");
  const auto r = run_cli({"condense", bare.string()});
  CHECK(r.code == 2);
  CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("algebra"));

  // cap exceeded
  const auto z4 = temp_scenario("z4.json", scenario_to_string(builtin_scenario("zvec-z4-tables")));
  CHECK(run_cli({"etale", z4.string(), "--cap", "8"}).code == 3);

  // unreadable file and invalid JSON
  CHECK(run_cli({"splittings", "/no/such/file.json"}).code == 2);
  const auto junk = temp_scenario("junk.json", "{not json");
  CHECK(run_cli({"splittings", junk.string()}).code == 2);

  // unknown example name and unknown command
  CHECK(run_cli({"example", "nonsense"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);

  // kind mismatch: universal command on a metric scenario and vice versa
  CHECK(run_cli({"universal", z4.string()}).code == 2);
  const auto s3 = temp_scenario("s3.json", scenario_to_string(builtin_scenario("s3-universal")));
  CHECK(run_cli({"splittings", s3.string()}).code == 2);
  CHECK(run_cli({"universal", s3.string()}).code == 0);
}

TEST_CASE("cli example command emits loadable scenarios", "[cli]") {
  for (const auto& name : builtin_scenario_names()) {
    INFO(name);
    const auto r = run_cli({"example", name});
    REQUIRE(r.code == 0);
    CHECK(scenario_equal(parse_scenario(Json::parse(r.out)), builtin_scenario(name)));
  }
}

TEST_CASE("modular data report is exact", "[cli]") {
  const auto path = temp_scenario("toric.json",
                                  R"({"kind":"metric","theory":{"named":"toric code"}})");
  const auto r = run_cli({"modular-data", path.string()});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("T exponents: 0/1 0/1 0/1 1/2"));
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("S prefactor: 1/sqrt(4)"));
  const auto rj = run_cli({"modular-data", path.string(), "--json"});
  const auto j = Json::parse(rj.out);
  CHECK(j.at("s_exponents").at(3) == Json::array({"0/1", "1/2", "1/2", "0/1"}));
}
