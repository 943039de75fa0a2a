// kuz: run one convergence study and write its CSV.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kuz/config.hpp"
#include "kuz/csv.hpp"
#include "kuz/errors.hpp"
#include "kuz/experiments.hpp"

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty()) s += ',';
    s += x;
  }
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Finite element convergence studies for the Kuznetsov equation"};
  app.set_version_flag("--version", "kuz 0.1.0");

  std::string experiment;
  std::string config_file;
  std::vector<std::string> sets;
  std::vector<std::string> degree, beta, nx, tau;
  std::optional<double> t_end, gamma_min;
  std::optional<std::string> out, solver;
  bool reproducible = false;
  bool dry_run = false;
  bool verbose = false;

  app.add_option("experiment", experiment, "space-conv, time-conv, inviscid or pulse")
      ->required();
  app.add_option("--config", config_file, "key=value file applied before flags");
  app.add_option("--set", sets, "extra key=value setting (repeatable)");
  app.add_option("--degree", degree, "polynomial degree(s)")->delimiter(',');
  app.add_option("--beta", beta, "sound diffusivities")->delimiter(',');
  app.add_option("--nx", nx, "cells per side")->delimiter(',');
  app.add_option("--tau", tau, "time steps")->delimiter(',');
  app.add_option("--t-end", t_end, "final time");
  app.add_option("--out", out, "CSV output path");
  app.add_option("--solver", solver, "linear solver")
      ->check(CLI::IsMember({"direct", "iterative"}));
  app.add_option("--gamma-min", gamma_min, "non-degeneracy floor");
  app.add_flag("--reproducible", reproducible, "bit-identical output across runs");
  app.add_flag("--dry-run", dry_run, "print the resolved configuration and exit");
  app.add_flag("-v,--verbose", verbose, "progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    kuz::ExperimentConfig cfg = kuz::default_config(kuz::parse_experiment(experiment));
    if (!config_file.empty()) kuz::apply_config_file(cfg, config_file);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw kuz::ConfigError("--set expects key=value, got '" + kv + "'");
      kuz::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!degree.empty()) kuz::apply_setting(cfg, "degree", join(degree));
    if (!beta.empty()) kuz::apply_setting(cfg, "beta", join(beta));
    if (!nx.empty()) kuz::apply_setting(cfg, "nx", join(nx));
    if (!tau.empty()) kuz::apply_setting(cfg, "tau", join(tau));
    if (t_end) cfg.t_end = *t_end;
    if (out) cfg.out = *out;
    if (solver) kuz::apply_setting(cfg, "solver", *solver);
    if (gamma_min) cfg.gamma_min = *gamma_min;
    if (reproducible) cfg.reproducible = true;
    if (verbose) cfg.verbose = true;
    kuz::validate(cfg);

    if (dry_run) {
      std::cout << kuz::describe(cfg);
      return 0;
    }

    const kuz::ExperimentResult result = kuz::run_experiment(cfg);
    kuz::write_csv(cfg.out, result.rows);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& f : result.failures) std::cerr << "error: " << f << '\n';
    std::cerr << "wrote " << result.rows.size() << " rows to " << cfg.out << '\n';
    return result.failures.empty() ? 0 : 2;
  } catch (const kuz::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const kuz::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const kuz::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
