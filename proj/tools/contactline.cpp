#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "contactline/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = contactline::cli;
  CLI::App app{"Contact-line blow-up simulator and rate fitter"};
  app.require_subcommand(1);

  cli::SimulateArgs sim;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Integrate one initial condition to blow-up");
  simulate->add_option("--config", sim.config, "Config file (key=value lines or JSON)")->required();
  simulate->add_option("--out", sim_out, "Output directory");

  cli::FitArgs fit;
  std::string fit_out;
  auto* fitcmd = app.add_subcommand("fit", "Fit a blow-up law to series.csv");
  fitcmd->add_option("--series", fit.series, "series.csv from simulate")->required();
  fitcmd->add_option("--law", fit.law, "power, log or loglogT")
      ->required()
      ->check(CLI::IsMember({"power", "log", "loglogT"}));
  fitcmd->add_option("--start", fit.starts, "Window start (repeat for several windows)")
      ->required();
  fitcmd->add_option("--end", fit.ends, "Window end (once, or once per --start)");
  fitcmd->add_option("--out", fit_out, "Directory for fit.json");

  cli::SweepArgs sweep;
  std::string sweep_out;
  auto* sweepcmd = app.add_subcommand("sweep", "Run several (a,b) initial conditions");
  sweepcmd->add_option("--pairs", sweep.pairs, "CSV of a,b rows")->required();
  sweepcmd->add_option("--config", sweep.config, "Base config")->required();
  sweepcmd->add_option("--out", sweep_out, "Output root");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  auto flag = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional(s); };
  if (*simulate) {
    sim.out = flag(sim_out);
    return cli::cmd_simulate(sim, std::cerr);
  }
  if (*fitcmd) {
    fit.out = flag(fit_out);
    return cli::cmd_fit(fit, std::cerr);
  }
  sweep.out = flag(sweep_out);
  return cli::cmd_sweep(sweep, std::cerr);
}
