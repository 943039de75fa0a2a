#pragma once

#include <string>
#include <vector>

#include "kuz/config.hpp"
#include "kuz/csv.hpp"

namespace kuz {

struct ExperimentResult {
  std::vector<ResultRow> rows;
  /// One message per run that ended in a numerical failure; its row is
  /// still present with empty error fields.
  std::vector<std::string> failures;
  /// Violated coupling (CFL) conditions; informational only.
  std::vector<std::string> warnings;
  /// Smallest 1 + kappa v_h^n over every step of every successful run.
  double min_nondegeneracy = 0.0;
};

/// Manufactured solution on the unit square, error at t_end against h for
/// every (degree, beta).
ExperimentResult run_space_convergence(const ExperimentConfig& cfg);

/// Manufactured solution, fixed mesh, error at the final step against tau
/// for every (degree, beta).
ExperimentResult run_time_convergence(const ExperimentConfig& cfg);

/// Distance between beta > 0 and beta = 0 runs with f = 0, for each paired
/// (nx, tau) and every beta.
ExperimentResult run_inviscid(const ExperimentConfig& cfg);

/// Gaussian pulse on [-4, 4]^2 measured against a reference run: a spatial
/// ladder ("pulse-space", tau = tau_ref) and a temporal ladder
/// ("pulse-time", on the reference mesh).
ExperimentResult run_pulse(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace kuz
