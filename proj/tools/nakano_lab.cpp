#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nakano/experiment.hpp"

namespace expt = nakano::expt;

namespace {

int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_path, const std::string& csv_path, double step, double tol,
                std::size_t radial, std::size_t angular) {
  expt::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw expt::ConfigError("cannot open config file: " + config_path);
      nlohmann::json j;
      in >> j;
      cfg = expt::ExperimentConfig::from_json(j);
    }
    cfg.command = command;
    if (step > 0.0) cfg.stencil.step = step;
    if (radial > 0) cfg.radial_order = radial;
    if (angular > 0) cfg.angular_order = angular;
    if (tol > 0.0) cfg.tol.positivity_min = tol;
    if (!out_path.empty()) cfg.out = out_path;
    if (!csv_path.empty()) cfg.csv_out = csv_path;
  } catch (const nlohmann::json::exception& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return expt::kExitConfigError;
  } catch (const expt::ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return expt::kExitConfigError;
  }

  expt::RunResult res;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    res = expt::run(cfg);
  } catch (const expt::ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return expt::kExitConfigError;
  }
  const auto t1 = std::chrono::steady_clock::now();
  // Timing goes to stderr only; the report must be identical run to run.
  std::cerr << "elapsed_ms "
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";

  const std::string text = res.report.dump(2) + "\n";
  std::cout << text;
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out);
    if (!out) {
      std::cerr << "cannot write report: " << cfg.out << "\n";
      return expt::kExitConfigError;
    }
    out << text;
  }
  if (!cfg.csv_out.empty() && res.report.contains("csv")) {
    std::ofstream out(cfg.csv_out);
    if (!out) {
      std::cerr << "cannot write csv: " << cfg.csv_out << "\n";
      return expt::kExitConfigError;
    }
    out << res.report["csv"].get<std::string>();
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for curvature of direct images of split bundles"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_path;
  double step = 0.0, tol = 0.0;
  std::size_t radial = 0, angular = 0;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "write the JSON report here as well as stdout");
  app.add_option("--csv", csv_path, "write the scan table as CSV");
  app.add_option("--step", step, "finite-difference step override");
  app.add_option("--quadrature", radial, "radial quadrature order override");
  app.add_option("--angular", angular, "angular quadrature order override");
  app.add_option("--tol", tol, "positivity threshold override");

  for (const char* name : {"check", "scan-k", "nef-limit", "decompose", "harmonicity",
                           "cohomology", "oracle-compare"})
    app.add_subcommand(name)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  return run_command(command, config_path, out_path, csv_path, step, tol, radial, angular);
}
