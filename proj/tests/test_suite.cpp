#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "qmgeo/domain_gen.hpp"
#include "qmgeo/json_io.hpp"
#include "qmgeo/suite.hpp"

using namespace qmgeo;

namespace {

SuiteConfig light_config() {
  SuiteConfig cfg;
  cfg.snowflake_levels = {0.16, 0.08, 0.04};
  cfg.halfline_lo = -200;
  cfg.halfline_hi = 200;
  cfg.arc_u = {0.4};
  cfg.arc_n = 400;
  cfg.random_spaces = 10;
  cfg.random_max_n = 60;
  return cfg;
}

const std::vector<std::string> kCheckOrder{
    "sandwich",          "qh-lower-bound",     "cross-ratio-sixteen",
    "roundtrip",         "sphericalized-quasiconvexity", "qh-additive-bound",
    "proof-constant-c6", "arc-family",         "snowflake-divergence",
    "image-stability"};

}  // namespace

TEST_CASE("config json round trip") {
  Json j = suite_config_to_json(SuiteConfig{});
  SuiteConfig back = suite_config_from_json(j);
  CHECK(suite_config_to_json(back).dump() == j.dump());

  Json lj = suite_config_to_json(light_config());
  CHECK(suite_config_to_json(suite_config_from_json(lj)).dump() == lj.dump());
}

TEST_CASE("config validation rejects malformed fields") {
  CHECK_THROWS_AS(suite_config_from_json(Json::array()), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"nope", 1}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"seed", "seventeen"}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"disk", {{"h", 0.0}}}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"disk", {{"h", 0.2}}}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"disk", {{"radius", 1.0}}}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"snowflake", {{"epsilon", 1.0}}}}),
                  SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"snowflake", {{"levels", Json::array({0.3})}}}}),
                  SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"halfline", {{"ratio", 1.0}}}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"halfline", {{"lo", 5}}}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"rect", {{"s", 0.5}}}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"slit", {{"h", 0.0}}}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"arc", {{"u", Json::array({1.5})}}}}),
                  SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"arc", {{"n", 10}}}}), SuiteConfigError);
  CHECK_THROWS_AS(suite_config_from_json({{"random_spaces", {{"max_n", 2}}}}),
                  SuiteConfigError);
  Json bad_matrix = {{"matrix_spaces",
                      Json::array({{{"name", "m"},
                                    {"matrix", Json::array({Json::array({0, 1}),
                                                            Json::array({1})})}}})}};
  CHECK_THROWS_AS(suite_config_from_json(bad_matrix), SuiteConfigError);
}

TEST_CASE("run_suite validates its inputs before computing") {
  SuiteConfig bad = light_config();
  bad.disk_h = 0.0;
  CHECK_THROWS_AS(run_suite(bad), SuiteConfigError);

  SuiteConfig missing = light_config();
  missing.domain_files = {"no_such_domain_file.json"};
  CHECK_THROWS_AS(run_suite(missing), SuiteConfigError);
}

TEST_CASE("runtime fields strip recursively") {
  Json j = {{"pass", true},
            {"runtime_ms", 5},
            {"checks", Json::array({Json{{"id", "x"},
                                         {"runtime_ms", 2},
                                         {"measured", {{"runtime_ms", 3}, {"keep", 1}}}}})}};
  Json s = without_runtime_fields(j);
  CHECK_FALSE(s.contains("runtime_ms"));
  CHECK_FALSE(s["checks"][0].contains("runtime_ms"));
  CHECK_FALSE(s["checks"][0]["measured"].contains("runtime_ms"));
  CHECK(s["checks"][0]["measured"]["keep"] == 1);
  CHECK(s["pass"] == true);
}

TEST_CASE("suite runs green on a light configuration and is deterministic") {
  save_json_file("suite_extra_domain.json", domain_to_json(gen_halfline(1.2, -8, 8)));
  SuiteConfig cfg = light_config();
  cfg.domain_files = {"suite_extra_domain.json"};

  SuiteReport rep = run_suite(cfg);
  CHECK(rep.pass);
  REQUIRE(rep.checks.size() == kCheckOrder.size());
  for (std::size_t i = 0; i < kCheckOrder.size(); ++i) {
    CHECK(rep.checks[i].id == kCheckOrder[i]);
    CHECK_FALSE(rep.checks[i].claim.empty());
    CHECK(rep.checks[i].runtime_ms >= 0.0);
    if (rep.checks[i].id == "snowflake-divergence")
      CHECK(rep.checks[i].status == "diverges");
    else
      CHECK(rep.checks[i].status == "pass");
  }
  Json j = suite_report_to_json(rep);
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() == kCheckOrder.size());
  // the user-supplied domain participates in the quadrature lower bound check
  CHECK(j.dump().find("suite_extra_domain.json") != std::string::npos);

  SuiteReport again = run_suite(cfg);
  CHECK(without_runtime_fields(suite_report_to_json(again)) == without_runtime_fields(j));
}

TEST_CASE("a triangle-violating matrix space fails the sandwich check") {
  SuiteConfig cfg = light_config();
  SuiteConfig::NamedMatrix m;
  m.name = "badtri";
  m.n = 4;
  m.matrix = {0, 1, 9, 9, 1, 0, 1, 9, 9, 1, 0, 1, 9, 9, 1, 0};
  cfg.matrix_spaces.push_back(m);

  SuiteReport rep = run_suite(cfg);
  CHECK_FALSE(rep.pass);
  REQUIRE_FALSE(rep.checks.empty());
  CHECK(rep.checks[0].id == "sandwich");
  CHECK(rep.checks[0].status == "fail");
  CHECK(suite_report_to_json(rep).dump().find("badtri") != std::string::npos);
}
