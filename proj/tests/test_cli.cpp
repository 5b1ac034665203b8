#include <doctest.h>

#include <sstream>

#include "tautres/cli.hpp"
#include "tautres/json_io.hpp"
#include "tautres/positivity.hpp"
#include "test_util.hpp"

using namespace tautres;
using namespace tautres::testing;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_config(const RunConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig integrate(const std::string& spec) {
  RunConfig c;
  c.command = Command::Integrate;
  c.input = spec;
  return c;
}

const char* kTrivialSpec =
    R"({"schema_version": 1, "n": 2, "k": 1, "bundle": {"rank": 1, "chern": ["formal"]}, "phi": "c1^2",
        "surface": {"name": "p2", "line_degrees": [3]}})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("k=1 spec reports the degree-n part of Phi(V)") {
    const auto o = run_config(integrate(kTrivialSpec));
    REQUIRE(o.code == 0);
    const Json j = Json::parse(o.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["total"] == "9");
    CHECK(j["universal_text"] == "N[cV1[0]^2]");
    CHECK(j["partitions"].size() == 1);
  }

  TEST_CASE("output is byte stable") {
    const std::string spec =
        R"({"schema_version": 1, "n": 2, "k": 3, "bundle": {"rank": 1, "chern": ["formal"]}, "phi": "c1^2*c2^2"})";
    const auto a = run_config(integrate(spec)), b = run_config(integrate(spec));
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("pruning flag leaves the numbers alone") {
    const std::string spec =
        R"({"schema_version": 1, "n": 2, "k": 3, "bundle": {"rank": 1, "chern": ["formal"]}, "phi": "c3^2",
            "surface": {"name": "p2", "line_degrees": [2]}})";
    auto c = integrate(spec);
    const Json plain = Json::parse(run_config(c).out);
    c.prune = true;
    const Json pruned = Json::parse(run_config(c).out);
    CHECK(plain["universal"] == pruned["universal"]);
    CHECK(plain["total"] == pruned["total"]);
  }

  TEST_CASE("malformed or invalid specs exit with 2") {
    CHECK(run_config(integrate("{not json")).code == 2);
    CHECK(run_config(integrate("")).code == 2);
    CHECK(run_config(integrate(R"({"n": 2, "k": 1, "bundle": {"rank": 1, "chern": ["formal"]}, "phi": "c1^2"})")).code ==
          2);  // no schema_version
    CHECK(run_config(integrate(R"({"schema_version": 1, "n": 2, "k": 1, "bundle": {"rank": 1, "chern": ["formal"]},
                                   "phi": "c1^3"})"))
              .code == 2);
    CHECK(run_config(integrate(R"({"schema_version": 1, "n": 2, "k": 1, "bundle": {"rank": 1, "chern": ["formal"]},
                                   "phi": "c1 +"})"))
              .code == 2);
    CHECK(run_config(integrate(R"({"schema_version": 1, "n": 2, "k": 1, "bundle": {"rank": 1, "chern": ["formal"]},
                                   "phi": "c1^2", "extra": 1})"))
              .code == 2);
    const auto missing_q = run_config(integrate(
        R"({"schema_version": 1, "n": 1, "k": 7, "bundle": {"rank": 1, "chern": ["formal"]}, "phi": "c1^7"})"));
    CHECK(missing_q.code == 2);
    CHECK(missing_q.err.find("--q-poly") != std::string::npos);
  }

  TEST_CASE("a wrong-degree Q override trips the consistency checks (exit 3)") {
    auto c = integrate(
        R"({"schema_version": 1, "n": 2, "k": 3, "bundle": {"rank": 1, "chern": ["formal"]}, "phi": "c1^6"})");
    c.q_poly = {{2, "z1"}};
    const auto o = run_config(c);
    CHECK(o.code == 3);
    CHECK(o.out.empty());
  }

  TEST_CASE("Q override is recorded") {
    auto c = integrate(
        R"({"schema_version": 1, "n": 1, "k": 6, "bundle": {"rank": 1, "chern": ["formal"]}, "phi": "c1^6"})");
    c.q_poly = {{5, "(2*z1+z2-z5)*(2*z1^2+3*z1*z2-2*z1*z5+2*z2*z3-z2*z4-z2*z5-z3*z4+z4*z5)"}};
    const auto o = run_config(c);
    REQUIRE(o.code == 0);
    CHECK(Json::parse(o.out)["q_poly_overrides"].contains("5"));
  }

  TEST_CASE("equivariant spec") {
    const auto o = run_config(integrate(
        R"({"schema_version": 1, "n": 2, "k": 2, "mode": "equivariant", "bundle": {"rank": 1, "chern": ["lambda1"]},
            "phi": "c1^4"})"));
    REQUIRE(o.code == 0);
    CHECK(Json::parse(o.out).contains("equivariant_total"));
  }

  TEST_CASE("oracle and series commands") {
    RunConfig c;
    c.command = Command::Oracle;
    c.surface = "p2";
    c.bundle = "1";
    c.k = 2;
    c.phi = "c2^2";
    auto o = run_config(c);
    REQUIRE(o.code == 0);
    CHECK(Json::parse(o.out)["value"] == "0");
    CHECK(Json::parse(o.out)["fixed_point_count"] == 9);
    c.surface = "p3";
    CHECK(run_config(c).code == 2);

    RunConfig s;
    s.command = Command::Series;
    s.kmax = 3;
    s.surface = "p2";
    s.bundle = "1";
    o = run_config(s);
    REQUIRE(o.code == 0);
    const Json j = Json::parse(o.out);
    CHECK(j["agreement"] == true);
    CHECK(j["coefficients"][3]["direct_value"] == "5");
    s.series_class = "custom-json";
    s.class_json = R"({"name": "c", "coefficients": [1, "1/2"]})";
    CHECK(run_config(s).code == 0);
    s.class_json = R"({"coefficients": [2]})";
    CHECK(run_config(s).code == 2);
  }

  TEST_CASE("residue command") {
    RunConfig c;
    c.command = Command::Residue;
    c.input = R"({"numerator": "z1-z2", "factors": [{"form": "z1", "mult": 1}, {"form": "z2", "mult": 1},
                   {"form": "2*z1-z2", "mult": 1}], "z_order": ["z1", "z2"]})";
    c.bruteforce_truncation = 6;
    const auto o = run_config(c);
    REQUIRE(o.code == 0);
    const Json j = Json::parse(o.out);
    CHECK(j["residue_text"] == "1");
    CHECK(j["bruteforce_agrees"] == true);
    CHECK(j["truncation_bounds"].size() == 2);
    c.input = R"({"numerator": "z1", "factors": [{"form": "z1^2", "mult": 1}], "z_order": ["z1"]})";
    CHECK(run_config(c).code == 2);
  }

  TEST_CASE("positivity rows") {
    PositivityScan scan;
    scan.n_values = {2};
    scan.k_values = {1};
    scan.r_values = {1, 2};
    const auto k1 = positivity_scan(scan);
    CHECK(k1.negative == 0);
    for (const auto& r : k1.rows) CHECK(r.sign > 0);

    RunConfig c;
    c.command = Command::Positivity;
    c.n_values = {1};
    c.k_values = {2};
    c.r_values = {1};
    c.phis = {"c1^2"};
    const auto o = run_config(c);
    REQUIRE(o.code == 0);
    const Json j = Json::parse(o.out);
    REQUIRE(j["rows"].size() > 0);
    for (const auto& row : j["rows"])
      for (const char* key : {"n", "k", "r", "phi", "coefficient", "monomial", "sign"}) CHECK(row.contains(key));
  }

  TEST_CASE("term list JSON round trip") {
    const MultiPoly p = z(1).shifted({{reg().z(1, 1), -3}}) * Rational(-2, 3) + lam(1) * theta(1);
    CHECK(poly_from_json(poly_to_json(p)) == p);
    CHECK(poly_to_json(MultiPoly(Rational(5, 2)))[0]["coeff"] == "5/2");
  }

  TEST_CASE("output file") {
    auto c = integrate(kTrivialSpec);
    c.out_path = "cli_test_output.json";
    const auto o = run_config(c);
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::remove("cli_test_output.json");
  }
}
