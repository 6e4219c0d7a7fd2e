#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "prerep/catalog.hpp"

namespace prerep::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kCap = 3 };

struct RunConfig {
  int n = 2;
  int sets = 2;
  /// Empty means the model default.
  std::vector<std::vector<mpq_class>> c;
  int degree = 2;
  double tolerance = 1e-10;
  int pit_trials = 5;
  bool exact = true;
  std::uint64_t seed = 1;
  int count = 5;
  double theta = 1.0471975511965976;  // pi/3
  std::string phase = "printed";
  std::string metric = "minkowski";
  bool timings = false;
  std::string out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Flat canonical form; `out` is not part of it.
nlohmann::json config_to_json(const RunConfig& cfg);
/// Throws DomainError on unknown keys or wrong types.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
/// "0,1;-1,0" style text, or a path to a JSON file holding a list of rows.
std::vector<std::vector<mpq_class>> parse_c_matrix(const std::string& text);
ModelConfig model_config(const RunConfig& cfg);

struct SuiteResult {
  std::string suite;
  nlohmann::json reports = nlohmann::json::array();
  int passed = 0;
  int failed = 0;
  int deviates = 0;
  /// Controls that behaved as expected; they never count as failures.
  int controls = 0;
  std::vector<std::string> skipped;
};

nlohmann::json suite_to_json(const SuiteResult& s);

std::vector<SuiteResult> cmd_check(const std::string& suite, const RunConfig& cfg);
std::vector<SuiteResult> cmd_solve(const std::string& what, const RunConfig& cfg);
std::vector<SuiteResult> cmd_sim(const std::string& what, const RunConfig& cfg);

/// Full command line driver. The JSON document goes to --out, or to `out` when
/// no file is given (the summary table then goes to `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prerep::cli
