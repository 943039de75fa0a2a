#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kuz/assembly.hpp"
#include "kuz/fe_space.hpp"
#include "kuz/geometry.hpp"
#include "kuz/solvers.hpp"

namespace kuz {

/// Coefficients of
///   (1 + kappa u_t) u_tt - c2 Lap u - beta Lap u_t + ell grad u . grad u_t = f.
struct ModelParams {
  double kappa = 0.0;
  double c2 = 1.0;
  double beta = 0.0;
  double ell = 0.0;
  SpaceTimeFn forcing;  // empty means f = 0

  void validate() const;
  double f(Point2 x, double t) const { return forcing ? forcing(x, t) : 0.0; }
};

/// Initial displacement and velocity with the derivatives the start-up
/// step needs. Laplacians are analytic.
struct InitialData {
  DifferentiableFn u0;
  DifferentiableFn v0;
  SpatialFn lap_u0;
  SpatialFn lap_v0;
};

/// u = u_h^n, v = v_h^n = (u^n - u^{n-1}) / tau, v_prev = v_h^{n-1}; t = n tau.
struct StepperState {
  FieldCoeffs u;
  FieldCoeffs v;
  FieldCoeffs v_prev;
  long n = 0;
  double t = 0.0;
};

struct StepperOptions {
  SolverOptions solver;
  /// Abort when min(1 + kappa v) over quadrature points drops below this.
  double gamma_min = 1e-2;
};

/// Pointwise argument of the Ritz projection that defines w_0, the start-up
/// approximation of u_tt(0):
///   (c2 Lap u0 + beta Lap v0 - ell grad u0 . grad v0 + f(., 0)) / (1 + kappa v0).
SpatialFn startup_acceleration(const ModelParams& p, const InitialData& d);

/// State at n = 1: u^1 = R_h(u0 + tau v0 + tau^2/2 w0), v^1 = R_h(v0 + tau/2 w0),
/// with w0 = R_h(startup_acceleration). v_prev is set to R_h(v0 - tau/2 w0).
/// Throws DegeneracyError if 1 + kappa v0 <= gamma_min at a quadrature point.
StepperState initial_state(const FeSpace& s, const ModelParams& p, const InitialData& d,
                           double tau, const StepperOptions& opts = {});

/// min over all quadrature points of 1 + kappa v_h^n.
double nondegeneracy_min(const StepperState& state, const FeSpace& s, const ModelParams& p);

/// Semi-implicit Euler integrator in the velocity variable. For every test
/// function phi it solves
///   ((1 + kappa v^n) v^{n+1}, phi) + (c2 tau^2 + tau beta)(grad v^{n+1}, grad phi)
///     + tau ell (grad u^n . grad v^{n+1}, phi)
///   = ((1 + kappa v^n) v^n, phi) - tau c2 (grad u^n, grad phi) + tau (f(t_{n+1}), phi)
/// and updates u^{n+1} = u^n + tau v^{n+1}. The state-independent part of the
/// system is assembled once; each step re-assembles the weighted mass and
/// convection terms into a fixed sparsity pattern.
class Stepper {
 public:
  Stepper(const FeSpace& space, ModelParams params, double tau, StepperOptions opts = {});

  const FeSpace& space() const { return space_; }
  const ModelParams& params() const { return params_; }
  double tau() const { return tau_; }

  /// Advance `state` by one step in place.
  void step(StepperState& state);

  /// The step matrix and right-hand side at `state`, on the free DOFs.
  /// Also returns the degeneracy minimum met while assembling.
  struct System {
    SparseMatrix matrix;
    std::vector<double> rhs;
    double nondegeneracy = 0.0;
  };
  System system(const StepperState& state) const;

  int last_iterations() const { return last_stats_.iterations; }
  long fallbacks() const { return fallbacks_; }
  /// min(1 + kappa v^n) seen while assembling the most recent step.
  double last_nondegeneracy() const { return last_nondegeneracy_; }

 private:
  const FeSpace& space_;
  ModelParams params_;
  double tau_;
  StepperOptions opts_;
  SparsityPattern pattern_;
  std::vector<double> stiffness_;  // values on pattern_
  SparseMatrix stiffness_matrix_;
  SparseMatrix matrix_;
  SolveStats last_stats_;
  long fallbacks_ = 0;
  double last_nondegeneracy_ = 0.0;
};

/// Free-function form: returns the state at n + 1.
StepperState step(const StepperState& state, const FeSpace& s, const ModelParams& p, double tau,
                  const StepperOptions& opts = {});

using StepObserver = std::function<void(const StepperState&)>;

struct RunStats {
  long steps = 0;
  long iterations = 0;
  long fallbacks = 0;
  /// Smallest 1 + kappa v^n over all steps taken.
  double min_nondegeneracy = 0.0;
};

/// initial_state, then steps until t >= t_end. The observer is called on the
/// initial state (n = 1) and after every step. Requires t_end >= 2 tau.
/// A DegeneracyError thrown mid-run carries the step index and time.
StepperState run(const FeSpace& s, const ModelParams& p, const InitialData& d, double tau,
                 double t_end, const StepObserver& observer = {}, const StepperOptions& opts = {},
                 RunStats* stats = nullptr);

struct CflReport {
  bool ok = true;
  double tau_threshold = 0.0;  // largest admissible tau
  std::string message;
};

/// Coupling checks between tau and h in two dimensions. For k >= 2:
/// tau <= C h^(1 + 1/3 + 2 eps). For k = 1: tau <= C sqrt(beta) h^(1/3 + 2 eps)
/// and h^(1 - 1/3 - 2 eps) <= C sqrt(beta). Never throws for a violated
/// condition; only eps outside [0, 1/3) or non-positive inputs are rejected.
CflReport cfl_check(double h, double tau, int k, double beta, double C = 1.0, double eps = 0.0);

}  // namespace kuz
