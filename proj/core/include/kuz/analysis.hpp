#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kuz/fe_space.hpp"
#include "kuz/geometry.hpp"
#include "kuz/stepper.hpp"

namespace kuz {

/// (int |exact_grad - grad u_h|^p)^(1/p) for p in {2, 6}, evaluated with the
/// space's quadrature rule. Throws ConfigError for any other p.
double grad_error_lp(const FeSpace& s, std::span<const double> u, const SpatialGradFn& exact_grad,
                     int p);
double grad_error_lp(const FeSpace& s, std::span<const double> u,
                     const SpaceTimeGradFn& exact_grad, int p, double t);

/// ||exact - u_h||_{L2}.
double l2_error(const FeSpace& s, std::span<const double> u, const SpatialFn& exact);
double l2_error(const FeSpace& s, std::span<const double> u, const SpaceTimeFn& exact, double t);

/// Norms of finite element functions.
double l2_norm(const FeSpace& s, std::span<const double> u);
double grad_l2_norm(const FeSpace& s, std::span<const double> u);

/// rate_i = log(e_{i-1} / e_i) / log(p_{i-1} / p_i), one entry per consecutive
/// pair. Requires equal lengths >= 2, positive values and strictly
/// decreasing params.
std::vector<double> observed_order(std::span<const double> errors, std::span<const double> params);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Length of the leading run of a refinement ladder before the errors
/// plateau: row i is kept while e_i <= 0.8 e_{i-1}. Always >= 1 for a
/// non-empty ladder.
std::size_t pre_plateau_length(std::span<const double> errors);

/// Differences of (u, v) pairs measured as
///   grad_u = ||grad(u_a - u_b)||, l2_v = ||v_a - v_b||, grad_v = ||grad(v_a - v_b)||.
struct StateDifference {
  double grad_u = 0.0;
  double l2_v = 0.0;
  double grad_v = 0.0;

  /// H^1 x L^2 distance ||grad(u_a - u_b)|| + ||v_a - v_b||.
  double ebar() const { return grad_u + l2_v; }
};

/// Compare states on the same space, or a coarse state against a fine one
/// whose mesh descends from the coarse mesh through refine_uniform. In the
/// nested case coarse fields are evaluated exactly at fine quadrature points.
/// Throws ConfigError for a pair of meshes that are not nested.
StateDifference compare_states_nested(const FeSpace& coarse, std::span<const double> coarse_u,
                                      std::span<const double> coarse_v, const FeSpace& fine,
                                      std::span<const double> fine_u,
                                      std::span<const double> fine_v);

/// Number of refine_uniform levels separating `fine` from `coarse`; throws
/// ConfigError unless the meshes are nested.
int nesting_levels(const Mesh& coarse, const Mesh& fine);

/// Nodal interpolation of a coarse finite element function on a nested
/// fine space. Exact when the fine degree is at least the coarse degree.
FieldCoeffs prolongate_nested(const FeSpace& coarse, std::span<const double> u,
                              const FeSpace& fine);

/// u(x, t) = c_sp exp(c_time t) sin(pi x) sin(pi y) on the unit square.
struct ManufacturedSolution {
  double c_sp = 0.1;
  double c_time = 0.5;

  double u(Point2 x, double t) const;
  Vec2 grad_u(Point2 x, double t) const;
  double lap_u(Point2 x, double t) const;
  double u_t(Point2 x, double t) const { return c_time * u(x, t); }
  Vec2 grad_u_t(Point2 x, double t) const { return c_time * grad_u(x, t); }
  double u_tt(Point2 x, double t) const { return c_time * c_time * u(x, t); }

  InitialData initial_data() const;
};

/// Source term for which ManufacturedSolution{c_sp, c_time} solves the model:
///   f = (1 + kappa c_time U) c_time^2 U + 2 pi^2 c2 U + 2 pi^2 beta c_time U + ell c_time G
/// with U = u(x, t) and G = |grad u(x, t)|^2.
SpaceTimeFn manufactured_forcing(const ModelParams& p, double c_sp, double c_time);

/// u0 = -exp(-|x|^2), v0 = 0.
InitialData gaussian_pulse_data();

/// Error functionals of a run against a known solution, at time t.
struct ErrorRecord {
  double t = 0.0;
  double err_grad_dt = 0.0;      // ||grad u_t(t) - grad v_h^n||
  double err_dt2 = 0.0;          // ||u_tt(t) - (v_h^n - v_h^{n-1}) / tau||
  double err_grad_l6_acc = 0.0;  // tau sum_{j=1}^n ||grad u(t_j) - grad u_h^j||_{L6}^2
  double degeneracy_min = 0.0;
};

/// Step observer accumulating the L6 term; `record` evaluates the pointwise
/// terms at the current state.
class ManufacturedErrorTracker {
 public:
  ManufacturedErrorTracker(const FeSpace& s, const ModelParams& p, ManufacturedSolution sol,
                           double tau, bool accumulate_l6 = true);

  void operator()(const StepperState& st);
  ErrorRecord record(const StepperState& st) const;

 private:
  const FeSpace& space_;
  ModelParams params_;
  ManufacturedSolution sol_;
  double tau_;
  bool accumulate_l6_;
  double l6_acc_ = 0.0;
};

}  // namespace kuz
