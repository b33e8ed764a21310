// Command-line driver: `plf verify` runs the configured verification suites
// and writes a machine-readable report; `plf explain` prints one case of a
// report together with the conventions in force.

#include "plf/suites.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"exact local gamma factors over p-adic fields: verification driver"};
  app.require_subcommand(1);

  std::string config_path, report_path, case_id;
  std::vector<std::string> suites;
  uint64_t seed = 0;
  bool seed_set = false;

  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--config", config_path, "run configuration file")->required();
  verify->add_option("--suite", suites, "restrict to the named suites (repeatable)");
  verify->add_option("--seed", seed, "override the run seed")->each([&](const std::string&) {
    seed_set = true;
  });
  verify->add_option("--report", report_path, "report output path");

  CLI::App* explain = app.add_subcommand("explain", "print one case of a report");
  explain->add_option("--report", report_path, "report file")->required();
  explain->add_option("--case", case_id, "case identifier")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      plf::RunConfig cfg = plf::parse_config(config_path);
      if (!suites.empty()) {
        cfg.suites = suites;
        cfg.validate();
      }
      if (seed_set) cfg.seed = seed;
      if (!report_path.empty()) cfg.report_path = report_path;
      if (const char* dir = std::getenv("REPORT_DIR")) {
        std::string d = dir;
        if (!d.empty() && d.back() != '/') d += '/';
        std::string base = cfg.report_path;
        size_t slash = base.find_last_of('/');
        if (slash != std::string::npos) base = base.substr(slash + 1);
        cfg.report_path = d + base;
      }
      plf::RunReport report = plf::run_suites(cfg);
      plf::write_report(report, cfg.report_path);
      int failures = report.failures();
      std::cout << report.cases.size() << " cases, " << failures << " failures; report at "
                << cfg.report_path << "\n";
      return failures == 0 ? 0 : 1;
    }
    if (explain->parsed()) {
      std::ifstream f(report_path);
      if (!f) throw plf::Error("ReportRead", "cannot open report '" + report_path + "'");
      std::stringstream ss;
      ss << f.rdbuf();
      std::cout << plf::explain_case(ss.str(), case_id);
      return 0;
    }
  } catch (const plf::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const plf::UnknownCase& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
