#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmgeo/json_io.hpp"

namespace qmgeo {

// Configuration problems: malformed config JSON, parameters outside the
// generator preconditions, unreadable domain files. Raised before any check
// runs, so a bad config never produces a partial report.
class SuiteConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Knobs for the verification suite. The defaults reproduce the reference
// report; every field can be overridden from a JSON config file.
struct SuiteConfig {
  std::uint64_t seed = 17;

  double disk_h = 0.05;
  double snowflake_epsilon = 0.5;
  std::vector<double> snowflake_levels = {0.1, 0.05, 0.025};
  double halfline_ratio = 1.01;
  int halfline_lo = -400;
  int halfline_hi = 400;
  double rect_w = 2.0;
  double rect_h = 1.0;
  double rect_s = 0.1;
  double slit_h = 0.1;
  std::vector<double> arc_u = {0.4, 0.2, 0.1};
  int arc_n = 2000;

  std::size_t random_spaces = 50;  // seeded point clouds for the sandwich check
  std::size_t random_max_n = 200;

  // Optional extra inputs. Matrices join the sandwich check after metric
  // validation (a broken matrix fails that check with the violating triple
  // as witness); domain files join the per-domain checks.
  struct NamedMatrix {
    std::string name;
    std::vector<double> matrix;  // n*n row-major
    std::size_t n = 0;
  };
  std::vector<NamedMatrix> matrix_spaces;
  std::vector<std::string> domain_files;
};

// Parses a config file; unknown keys and malformed values raise
// SuiteConfigError. Missing keys keep their defaults.
SuiteConfig suite_config_from_json(const Json& j);
Json suite_config_to_json(const SuiteConfig& cfg);

struct SuiteCheck {
  std::string id;
  std::string claim;   // the inequality or behavior this check verifies
  std::string status;  // pass | fail | vacuous | diverges
  Json measured;
  Json witnesses;
  double runtime_ms = 0.0;
};

struct SuiteReport {
  bool pass = true;  // no check failed; vacuous and diverges do not fail
  std::vector<SuiteCheck> checks;
  double runtime_ms = 0.0;
};

Json suite_report_to_json(const SuiteReport& r);

// Deep-copies a report JSON with every runtime field removed, for
// determinism comparisons across runs.
Json without_runtime_fields(Json j);

// Runs the ten checks in declared order. Throws SuiteConfigError on bad
// parameters or unreadable inputs before any check executes.
SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace qmgeo
