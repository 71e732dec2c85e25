#include <doctest.h>

#include <fstream>
#include <set>

#include "commands.hpp"
#include "io.hpp"
#include "support/reference.hpp"
#include "tropical/errors.hpp"

using namespace tropical;
using namespace tropical::cli;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

CommonOptions opts(const std::string& family) {
  CommonOptions o;
  o.family_path = fixture(family);
  return o;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = std::string(TEST_TMP_DIR) + "/" + name;
  std::ofstream(path) << body;
  return path;
}

std::set<std::string> deviation_keys(const json& report) {
  std::set<std::string> out;
  for (const auto& d : report["deviations"]) out.insert(d["quantity"].get<std::string>() + d["index"].dump());
  return out;
}

}  // namespace

TEST_CASE("family files round-trip exactly") {
  FamilyFile f = read_family_file(fixture("example_family.json"));
  CHECK(f.n == 5);
  CHECK(f.names == std::vector<std::string>{"A1", "A2", "A3"});
  CHECK(equal(f.members[1], ref::A2()));
  FamilyFile again = parse_family(write_family(f));
  CHECK(write_family(again) == write_family(f));

  FamilyFile g = parse_family(R"({"n": 2, "members": [{"rows": [[0, "-1/3"], [-2.25, "-inf"]]}]})");
  CHECK(g.names[0] == "A1");
  CHECK(g.members[0](0, 1) == ref::q("-1/3"));
  CHECK(g.members[0](1, 0) == ref::q("-9/4"));
  CHECK(parse_family(write_family(g)).members[0](1, 0) == ref::q("-9/4"));
}

TEST_CASE("parse errors carry a location") {
  CHECK_THROWS_AS(read_family_file(fixture("malformed_family.json")), ParseError);
  try {
    read_family_file(fixture("malformed_syntax.json"));
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_family(R"({"n": 2, "members": [{"rows": [[0]]}]})"), ParseError);
  CHECK_THROWS_AS(parse_sequence("[1, 0]"), ParseError);
  CHECK_THROWS_AS(parse_sequence("[]"), ParseError);
  CHECK(parse_sequence("[3, 1]").members == std::vector<std::size_t>{3, 1});
}

TEST_CASE("validate exit codes") {
  CHECK(run_validate(opts("example_family.json")).exit_code == kSuccess);
  CommandResult bad = run_validate(opts("bad_loop_family.json"));
  CHECK(bad.exit_code == kAssumptionFailure);
  CHECK(bad.report["validation"]["assumptions"]["member_loop"]["passed"] == false);
  CHECK(bad.report["validation"]["assumptions"]["member_loop"]["member"] == 2);
  CHECK(bad.report["validation"]["assumptions"]["member_loop"]["witness"] == json::array({1, 1}));
  CHECK(run_validate(opts("malformed_family.json")).exit_code == kInputError);
  CHECK(run_validate(opts("no_such_file.json")).exit_code == kInputError);
}

TEST_CASE("derive lists exactly the documented deviations") {
  CommandResult r = run_derive(opts("example_family.json"));
  REQUIRE(r.exit_code == kSuccess);
  CHECK(r.report["derived"]["lambda_star"]["value"] == "-2/3");
  CHECK(r.report["derived"]["lambda_star"]["witness"] == json::array({2, 5, 4}));
  CHECK(r.report["derived"]["beta"] == json::array({"0", "2", "-2", "1", "-1"}));
  CHECK(r.report["derived"]["alpha"] == json::array({"0", "-3", "-6", "-4", "-1"}));
  CHECK(deviation_keys(r.report) == std::set<std::string>{"alpha[5]", "v[2]", "w[2]", "w[3]", "w[4]"});
}

TEST_CASE("derive on an invalid family") {
  CHECK(run_derive(opts("bad_loop_family.json")).exit_code == kAssumptionFailure);
  CommonOptions forced = opts("bad_loop_family.json");
  forced.force = true;
  CommandResult r = run_derive(forced);
  CHECK(r.exit_code == kSuccess);
  CHECK(r.report["derived"]["a_sup"].is_array());
}

TEST_CASE("bound") {
  CommandResult r = run_bound(opts("example_family.json"), fixture("example_sequence44.json"));
  REQUIRE(r.exit_code == kSuccess);
  const json& b = r.report["bounds"];
  CHECK(b["explicit"]["overall"] == "34");
  CHECK(b["explicit_from_expected"]["overall"] == "65/2");
  CHECK(b["explicit_from_expected"]["min_admissible_length"] == 33);
  CHECK(b["implicit"]["overall"] == "55/2");
  CHECK(b["sequence"]["length_guaranteed"] == true);

  const std::string short_seq = temp_file("short_seq.json", "[1, 2, 3]");
  CommandResult s = run_bound(opts("example_family_plain.json"), short_seq);
  CHECK(s.exit_code == kSuccess);
  CHECK(s.report["bounds"]["sequence"]["note"] == "length not guaranteed");
  CHECK(s.report["deviations"].empty());
}

TEST_CASE("check") {
  CommandResult r = run_check(opts("example_family.json"), fixture("example_sequence44.json"));
  CHECK(r.exit_code == kSuccess);
  CHECK(r.report["check"]["factors"]["column"] == json::array({"0", "-3", "-10", "-10", "-6"}));
  CHECK(r.report["check"]["factors"]["row"] == json::array({"0", "-1", "-2", "-6", "-4"}));
  CHECK(r.report["deviations"].empty());

  CHECK(run_check(opts("example_family.json"), temp_file("one.json", "[1]")).exit_code == kNotRankOne);
  CHECK(run_check(opts("example_family.json"), temp_file("four.json", "[1, 4]")).exit_code == kInputError);
}

TEST_CASE("transient") {
  CommonOptions o = opts("example_family.json");
  TransientArgs a;
  a.horizon = 40;
  a.samples = 200;
  a.seed = 7;
  a.threads = 4;
  CommandResult r = run_transient(o, a);
  REQUIRE(r.exit_code == kSuccess);
  CHECK(r.report["transient"]["counterexamples_above_bound"] == 0);
  CHECK(r.report["transient"]["seed"] == 7);

  a.horizon = 0;
  CHECK(run_transient(o, a).exit_code == kInputError);

  TransientArgs ex;
  ex.mode = SearchMode::Exhaustive;
  ex.horizon = 6;
  ex.samples = 3;
  CommandResult t1 = run_transient(opts("tiny_family.json"), ex);
  ex.samples = 500;
  CommandResult t2 = run_transient(opts("tiny_family.json"), ex);
  CHECK(t1.exit_code == kSuccess);
  CHECK(t1.report.dump() == t2.report.dump());

  ex.horizon = 30;
  CHECK(run_transient(o, ex).exit_code == kBudgetExceeded);
}

TEST_CASE("reports are deterministic") {
  TransientArgs a;
  a.horizon = 15;
  a.samples = 20;
  a.seed = 3;
  a.threads = 1;
  const std::string one = run_transient(opts("example_family.json"), a).report.dump();
  a.threads = 3;
  CHECK(run_transient(opts("example_family.json"), a).report.dump() == one);
}

TEST_CASE("deviations compare values, not spellings") {
  json expected = {{"x", json::array({"1/2", "0.5", "-inf"})}, {"unused", "3"}};
  json computed = {{"x", json::array({"1/2", "1/2", "-inf"})}};
  CHECK(deviations(expected, computed).empty());
  computed["x"][2] = "0";
  CHECK(deviations(expected, computed).size() == 1);
}
