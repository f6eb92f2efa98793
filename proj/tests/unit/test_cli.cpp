#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "patpoly/cli.hpp"
#include "patpoly/error.hpp"

using namespace patpoly;

namespace {

RunConfig compute_cfg(const char* spec, const char* op) {
  RunConfig c;
  c.spec = spec;
  c.op = op;
  return c;
}

int code_of(ErrorCode code) { return exit_code_for(Error(code, "x")); }

}  // namespace

TEST_CASE("compute in markdown") {
  CHECK(cmd_compute(compute_cfg("P(4;123)", "ehrhart")).output == "1 + 11/3 m + 9 m^2 + 31/3 m^3\n");
  CHECK(cmd_compute(compute_cfg("B(4;132)", "hstar")).output == "(1,4,7,5,1)\n");
  CHECK(cmd_compute(compute_cfg("P(1;132,312)", "ehrhart")).output == "1\n");
  const auto verts = cmd_compute(compute_cfg("P(3;123,132)", "vertices")).output;
  CHECK(std::count(verts.begin(), verts.end(), '\n') == 4);
  CHECK(verts.find("(3,2,1)\n") != std::string::npos);
  CHECK(cmd_compute(compute_cfg("B(3;)", "dim")).output == "4\n");
  CHECK(cmd_compute(compute_cfg("P(3;)", "facets")).output.rfind("6 facets\n", 0) == 0);
  CHECK(cmd_compute(compute_cfg("P(4;123)", "volume")).output == "62\n");
  CHECK(cmd_compute(compute_cfg("Simplex(3)", "fvector")).output == "(1,4,6,4,1)\n");
  auto c = compute_cfg("P(4;132,312)", "interior");
  c.m = 1;
  CHECK(cmd_compute(c).output == "2\n");
  CHECK(cmd_compute(compute_cfg("Simplex(2)", "idp")).output == "true\n");
}

TEST_CASE("compute in json and csv") {
  auto c = compute_cfg("B(4;132)", "hstar");
  c.format = Format::json;
  const auto j = nlohmann::json::parse(cmd_compute(c).output);
  CHECK(j.at("spec") == "B(4;132)");
  CHECK(j.at("op") == "hstar");
  CHECK(j.at("result") == nlohmann::json::array({"1", "4", "7", "5", "1"}));
  c.format = Format::csv;
  const auto csv = cmd_compute(c).output;
  CHECK(csv.rfind("spec,op,result\n", 0) == 0);
  CHECK(csv.find("(1,4,7,5,1)") != std::string::npos);
  CHECK(compute_value(compute_cfg("P(4;123)", "volume")) == "62");
}

TEST_CASE("output is byte stable") {
  for (auto f : {Format::markdown, Format::json, Format::csv}) {
    auto c = compute_cfg("B(4;132,312)", "facets");
    c.format = f;
    CHECK(cmd_compute(c).output == cmd_compute(c).output);
  }
  RunConfig t;
  t.format = Format::json;
  CHECK(cmd_table("table4", t).output == cmd_table("table4", t).output);
}

TEST_CASE("exit codes") {
  CHECK(code_of(ErrorCode::budget_exceeded) == 2);
  CHECK(code_of(ErrorCode::parse_error) == 3);
  CHECK(code_of(ErrorCode::unknown_id) == 3);
  CHECK(code_of(ErrorCode::invalid_argument) == 3);
  CHECK(code_of(ErrorCode::empty_class) == 3);
  CHECK(code_of(ErrorCode::verification_failure) == 1);
  try {
    cmd_compute(compute_cfg("P(4;123", "ehrhart"));
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(exit_code_for(e) == exit_usage);
  }
  try {
    cmd_compute(compute_cfg("P(4;123)", "nope"));
    FAIL("expected an unknown op");
  } catch (const Error& e) {
    CHECK(exit_code_for(e) == exit_usage);
  }
  auto tiny = compute_cfg("B(4;)", "ehrhart");
  tiny.budget = 10;
  try {
    cmd_compute(tiny);
    FAIL("expected the budget to run out");
  } catch (const Error& e) {
    CHECK(exit_code_for(e) == exit_budget);
  }
}

TEST_CASE("budget from the environment") {
  ::unsetenv("PATPOLY_BUDGET");
  CHECK(budget_from_env(77) == 77);
  ::setenv("PATPOLY_BUDGET", "1234", 1);
  CHECK(budget_from_env(77) == 1234);
  ::setenv("PATPOLY_BUDGET", "lots", 1);
  CHECK_THROWS_AS(budget_from_env(77), Error);
  ::unsetenv("PATPOLY_BUDGET");
}

TEST_CASE("formats and tables") {
  CHECK(parse_format("md") == Format::markdown);
  CHECK(parse_format("json") == Format::json);
  CHECK_THROWS_AS(parse_format("xml"), Error);
  Table t;
  t.header = {"a", "b"};
  t.rows = {{"1", "x,y"}};
  CHECK(t.render(Format::csv) == "a,b\n1,\"x,y\"\n");
  CHECK(t.render(Format::markdown).find("| a | b |") != std::string::npos);
  CHECK(t.to_json().size() == 1);
  RunConfig bad;
  bad.budget = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("tables and suites") {
  RunConfig c;
  CHECK(cmd_table("table4", c).exit_code == exit_pass);
  CHECK(cmd_table("table5-desk", c).exit_code == exit_mismatch);
  CHECK_THROWS_AS(cmd_table("table9", c), Error);
  CHECK(cmd_verify("posets", c).exit_code == exit_pass);
  CHECK(cmd_verify("conjectures", c).exit_code == exit_pass);
  CHECK_THROWS_AS(cmd_verify("nope", c), Error);
  const auto r = cmd_table("table3", c);
  CHECK(r.exit_code == exit_pass);
  CHECK(r.output.find("result: PASS") != std::string::npos);
}
