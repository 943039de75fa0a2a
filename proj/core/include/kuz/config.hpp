#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kuz/solvers.hpp"

namespace kuz {

enum class Experiment { kSpaceConv, kTimeConv, kInviscid, kPulse };

std::string_view to_string(Experiment e);
/// Accepts "space-conv", "time-conv", "inviscid", "pulse"; throws ConfigError.
Experiment parse_experiment(std::string_view name);

/// Everything a driver needs. `default_config` fills in the standard
/// parameter set of each study.
struct ExperimentConfig {
  Experiment experiment = Experiment::kSpaceConv;
  std::vector<int> degrees;
  std::vector<double> betas;
  /// Refinement ladder. For the inviscid study nx[i] is paired with taus[i];
  /// for the pulse study these are the coarse meshes of the spatial ladder.
  std::vector<int> nx;
  /// Step sizes. For the pulse study, the temporal ladder.
  std::vector<double> taus;
  double t_end = 0.8;

  double kappa = 0.7;
  double c2 = 1.0;
  double ell = 2.0;
  double c_sp = 0.1;
  double c_time = 0.5;

  // Pulse study: reference mesh is nx_ref x nx_ref on [-4, 4]^2 and must
  // descend from every ladder mesh by uniform refinement.
  int nx_ref = 200;
  double tau_ref = 0.8 / 1024;

  std::string out;
  bool reproducible = false;
  SolverKind solver = SolverKind::kIterative;
  double solver_tol = 1e-10;
  double gamma_min = 1e-2;
  double cfl_c = 1.0;
  double cfl_eps = 0.0;
  bool track_l6 = true;
  bool verbose = false;
};

ExperimentConfig default_config(Experiment e);

/// Apply one `key=value` setting; keys match the names printed by
/// `describe`. Throws ConfigError for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Apply every `key=value` line of a file; blank lines and lines starting
/// with '#' are ignored. Throws IoError / ConfigError.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

/// Throws ConfigError when the configuration cannot be run.
void validate(const ExperimentConfig& cfg);

/// Fully expanded configuration as `key=value` lines, readable by
/// apply_config_file.
std::string describe(const ExperimentConfig& cfg);

}  // namespace kuz
