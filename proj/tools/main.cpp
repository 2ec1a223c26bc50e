#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "focklab/errors.hpp"
#include "focklab/io.hpp"
#include "focklab/scenario.hpp"
#include "focklab/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Volterra-type operators on Fock-Sobolev spaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int jobs = 0;
  std::string filter;
  auto* run = app.add_subcommand("run", "execute the scenarios of a config file");
  run->add_option("config", config_path, "JSON config with a 'scenarios' array")->required();
  run->add_option("--out", out_dir, "output directory (default: out)");
  run->add_option("--jobs", jobs, "worker pool size (default: hardware concurrency)");
  run->add_option("--filter", filter, "run only the scenario with this name");

  std::string verify_out = "out";
  double tolerance_scale = 1.0;
  int m_override = -1;
  std::vector<int> criteria;
  auto* verify = app.add_subcommand("verify-all", "run the full acceptance suite");
  verify->add_option("--out", verify_out, "output directory (default: out)");
  verify->add_option("--tolerance-scale", tolerance_scale, "scales every tolerance (testing aid)");
  verify->add_option("--m-override", m_override, "extra Sobolev order for the weight checks");
  verify->add_option("--criteria", criteria, "run only these criterion numbers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "cannot open config '" << config_path << "'\n";
        return 2;
      }
      nlohmann::json config = nlohmann::json::parse(in);
      focklab::RunOptions options;
      options.out_dir = out_dir;
      options.jobs = jobs;
      options.filter = filter;
      focklab::RunOutcome outcome = focklab::run_config(config, options);
      int failed = 0, inconclusive = 0;
      for (const auto& rep : outcome.reports) {
        std::cout << rep.scenario << ": " << rep.status;
        if (!rep.error.empty()) std::cout << " (" << rep.error << ")";
        std::cout << "\n";
        if (rep.status == "fail") ++failed;
        if (rep.status == "inconclusive") ++inconclusive;
      }
      if (inconclusive) std::cout << inconclusive << " scenario(s) inconclusive\n";
      return failed == 0 ? 0 : 1;
    }
    // verify-all
    focklab::VerifyOptions options;
    options.tolerance_scale = tolerance_scale;
    options.m_override = m_override;
    options.criteria = criteria;
    auto results = focklab::run_acceptance(options, &std::cout);
    focklab::Report report = focklab::make_acceptance_report(results);
    report.scenario = "verify-all";
    report.kind = "verify-all";
    nlohmann::json provenance{{"tolerance_scale", tolerance_scale}, {"m_override", m_override}};
    focklab::write_report_files(report, verify_out, focklab::fnv1a_hex(provenance.dump()));
    return report.status == "pass" ? 0 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const focklab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
