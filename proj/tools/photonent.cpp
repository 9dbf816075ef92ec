// photonent: CSV data for the beam-splitter entanglement sweeps, plus a
// self-check of the numerical pipeline against the closed forms.
//
//   photonent [--sigma S] [--sigma-tau T] [--p P] [--grid-n N] [--tau-n T]
//             [--cutoff C] [--sweep lo:hi:step] [--out FILE] [--config FILE]
//             {single | two [--mixed] | vacuum | purity-scan | check}
//
// Exit codes: 0 success, 1 check failure or runtime error, 2 usage error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "photonent/photonent.hpp"

namespace fig = photonent::figures;

namespace {

int write_csv(const fig::CsvTable& table, const std::string& path) {
  const std::string text = fig::to_csv(table);
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return 1;
  }
  out << text;
  return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of one- and two-photon states behind a 50/50 beam splitter"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  fig::RunConfig cfg;
  std::string sweep;
  app.add_option("--sigma", cfg.sigma, "packet / pump width in units of Omega")->capture_default_str();
  app.add_option("--sigma-tau", cfg.sigma_tau, "jitter width in units of 1/Omega")->capture_default_str();
  app.add_option("--p", cfg.p, "weight of the photon component against vacuum")->capture_default_str();
  app.add_option("--grid-n", cfg.grid_n, "frequency grid points")->capture_default_str();
  app.add_option("--tau-n", cfg.tau_n, "jitter nodes (odd)")->capture_default_str();
  app.add_option("--cutoff", cfg.cutoff, "grid spans [-cutoff, cutoff]")->capture_default_str();
  app.add_option("--sweep", sweep, "sweep range lo:hi:step");
  app.add_option("--out", cfg.out, "output file (default stdout)");

  auto* single = app.add_subcommand("single", "single photon with time jitter vs sigma_tau");
  auto* two = app.add_subcommand("two", "photon pair vs pump width, or vs sigma_tau with --mixed");
  two->add_flag("--mixed", cfg.mixed, "sweep sigma_tau for the jittered pair");
  auto* vacuum = app.add_subcommand("vacuum", "jittered pair plus vacuum vs p");
  auto* scan = app.add_subcommand("purity-scan", "entanglement against purity, single and pair");
  auto* check = app.add_subcommand("check", "cross-check the pipeline against closed forms");
  for (auto* sub : {single, two, vacuum, scan, check}) sub->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!sweep.empty()) cfg.sweep = fig::Sweep::parse(sweep);
    if (*check) {
      cfg.command = fig::Command::check;
      cfg.validate();
      return fig::run_checks(std::cout) ? 0 : 1;
    }
    fig::CsvTable table;
    if (*single) {
      cfg.command = fig::Command::single;
      table = fig::cmd_single(cfg);
    } else if (*two) {
      cfg.command = fig::Command::two;
      table = fig::cmd_two(cfg);
    } else if (*vacuum) {
      cfg.command = fig::Command::vacuum;
      table = fig::cmd_vacuum(cfg);
    } else {
      cfg.command = fig::Command::purity_scan;
      table = fig::cmd_purity_scan(cfg);
    }
    return write_csv(table, cfg.out);
  } catch (const fig::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const photonent::InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
