#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace focklab {

// One experiment from a config file.
struct Scenario {
  std::string name;
  std::string kind;  // norm | membership | matrix | schatten | spectrum-scan |
                     // carleson | regularity | verify-all
  nlohmann::json params;
};

struct Report {
  std::string scenario;
  std::string kind;
  std::string status;  // pass | fail | inconclusive
  nlohmann::json records;
  std::string csv;  // empty when the scenario has no tabular output
  std::string error;
};

struct RunOptions {
  std::filesystem::path out_dir = "out";
  int jobs = 0;  // 0: hardware concurrency
  std::string filter;  // run only the scenario with this name when nonempty
};

std::vector<Scenario> parse_config(const nlohmann::json& config);

// Executes one scenario; errors surface as ScenarioError/ConfigError.
Report run_scenario(const Scenario& scenario);

// Runs scenarios on a bounded worker pool and writes out/<name>/report.json
// (+ data.csv) per scenario plus a summary.json.  Returns the reports in
// config order.  Exit-code contract: ok() is false iff some scenario failed.
struct RunOutcome {
  std::vector<Report> reports;
  bool ok() const;
};
RunOutcome run_config(const nlohmann::json& config, const RunOptions& options);

nlohmann::json report_to_json(const Report& report, const std::string& config_hash);

// Writes out_dir/<scenario>/report.json and data.csv for one report.
void write_report_files(const Report& report, const std::filesystem::path& out_dir,
                        const std::string& config_hash);

// Packs acceptance-criteria outcomes into a report (status pass iff all pass).
struct CriterionResult;
Report make_acceptance_report(const std::vector<CriterionResult>& results);

}  // namespace focklab
