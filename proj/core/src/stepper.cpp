#include "kuz/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kuz/discrete_ops.hpp"
#include "kuz/errors.hpp"

namespace kuz {

void ModelParams::validate() const {
  if (!(c2 > 0.0)) throw ConfigError("model: c2 must be positive");
  if (!(beta >= 0.0)) throw ConfigError("model: beta must be non-negative");
  if (!std::isfinite(kappa) || !std::isfinite(ell) || !std::isfinite(beta)) {
    throw ConfigError("model: coefficients must be finite");
  }
}

namespace {

struct MinLocation {
  double value = std::numeric_limits<double>::infinity();
  Point2 x;
};

std::string describe_degeneracy(double value, Point2 x, double floor) {
  std::ostringstream os;
  os << "1 + kappa v = " << value << " <= gamma_min = " << floor << " at (" << x.x << ", "
     << x.y << ")";
  return os.str();
}

double domain_scale(const FeSpace& s) {
  const Rect& r = s.mesh().domain();
  return std::max(r.width(), r.height());
}

}  // namespace

SpatialFn startup_acceleration(const ModelParams& p, const InitialData& d) {
  return [p, d](Point2 x) {
    const double num = p.c2 * d.lap_u0(x) + p.beta * d.lap_v0(x) -
                       p.ell * dot(d.u0.grad(x), d.v0.grad(x)) + p.f(x, 0.0);
    return num / (1.0 + p.kappa * d.v0.value(x));
  };
}

StepperState initial_state(const FeSpace& s, const ModelParams& p, const InitialData& d,
                           double tau, const StepperOptions& opts) {
  p.validate();
  if (!(tau > 0.0)) throw ConfigError("initial_state: tau must be positive");

  MinLocation lowest;
  const auto& rule = s.rule();
  for (std::size_t c = 0; c < s.num_cells(); ++c) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point2 x = s.geometry(c).map(rule.points[q]);
      const double w = 1.0 + p.kappa * d.v0.value(x);
      if (w < lowest.value) lowest = {w, x};
    }
  }
  if (!(lowest.value > opts.gamma_min)) {
    throw DegeneracyError("initial_state: " +
                              describe_degeneracy(lowest.value, lowest.x, opts.gamma_min),
                          lowest.value, lowest.x.x, lowest.x.y, 0, 0.0);
  }

  const RitzProjector ritz(s);
  const FieldCoeffs u0 = ritz.project(d.u0);
  const FieldCoeffs v0 = ritz.project(d.v0);
  const FieldCoeffs w0 =
      ritz.project(with_fd_gradient(startup_acceleration(p, d), 1e-5 * domain_scale(s)));

  // R_h is linear and the identity on V_h, so the projected Taylor
  // expansions reduce to combinations of the three projections.
  StepperState st;
  const std::size_t n = s.num_dofs();
  st.u.resize(n);
  st.v.resize(n);
  st.v_prev.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    st.u[i] = u0[i] + tau * v0[i] + 0.5 * tau * tau * w0[i];
    st.v[i] = v0[i] + 0.5 * tau * w0[i];
    st.v_prev[i] = v0[i] - 0.5 * tau * w0[i];
  }
  st.n = 1;
  st.t = tau;
  return st;
}

double nondegeneracy_min(const StepperState& state, const FeSpace& s, const ModelParams& p) {
  const auto& rule = s.rule();
  const int nloc = s.dofs_per_cell();
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < s.num_cells(); ++c) {
    const auto dofs = s.cell_dofs(c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      double vq = 0.0;
      for (int l = 0; l < nloc; ++l) vq += state.v[dofs[l]] * s.phi(q, l);
      lowest = std::min(lowest, 1.0 + p.kappa * vq);
    }
  }
  return lowest;
}

Stepper::Stepper(const FeSpace& space, ModelParams params, double tau, StepperOptions opts)
    : space_(space),
      params_(std::move(params)),
      tau_(tau),
      opts_(opts),
      pattern_(space, DofSet::kFree) {
  params_.validate();
  if (!(tau_ > 0.0)) throw ConfigError("Stepper: tau must be positive");
  stiffness_matrix_ = assemble_stiffness(space_, DofSet::kFree);
  stiffness_ = stiffness_matrix_.values();
  matrix_ = pattern_.make_matrix(std::vector<double>(pattern_.nnz()));
  if (stiffness_.size() != pattern_.nnz()) {
    throw Error("Stepper: stiffness pattern mismatch");
  }
}

namespace {

/// Fills `values` (on the free pattern) and `rhs` (free DOFs) for the step
/// from `st`, returning the smallest 1 + kappa v met together with its point.
MinLocation assemble_step(const FeSpace& s, const SparsityPattern& pattern,
                          const std::vector<double>& stiffness,
                          const SparseMatrix& stiffness_matrix, const ModelParams& p,
                          double tau, const StepperState& st, std::vector<double>& values,
                          std::vector<double>& rhs) {
  const int nloc = s.dofs_per_cell();
  const auto& rule = s.rule();
  const double alpha = p.c2 * tau * tau + tau * p.beta;
  const double conv = tau * p.ell;
  const double t_next = (st.n + 1) * tau;

  values.resize(stiffness.size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = alpha * stiffness[k];

  // -tau c2 A u^n (u vanishes on the boundary, so the free block suffices).
  const std::vector<double> u_free = s.restrict_to_free(st.u);
  rhs = stiffness_matrix * u_free;
  for (double& r : rhs) r *= -tau * p.c2;

  MinLocation lowest;
  double elem[100];
  double elem_rhs[10];
  double coef[10];
  Vec2 grads[10];
  for (std::size_t c = 0; c < s.num_cells(); ++c) {
    const CellGeometry& g = s.geometry(c);
    const auto dofs = s.cell_dofs(c);
    std::fill(elem, elem + nloc * nloc, 0.0);
    std::fill(elem_rhs, elem_rhs + nloc, 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double dx = rule.weights[q] * g.det;
      double vq = 0.0;
      Vec2 grad_u;
      for (int l = 0; l < nloc; ++l) {
        grads[l] = g.push_gradient(s.dphi_ref(q, l));
        vq += st.v[dofs[l]] * s.phi(q, l);
        grad_u = grad_u + st.u[dofs[l]] * grads[l];
      }
      const double wq = 1.0 + p.kappa * vq;
      if (wq < lowest.value) lowest = {wq, g.map(rule.points[q])};
      for (int j = 0; j < nloc; ++j) coef[j] = wq * s.phi(q, j) + conv * dot(grad_u, grads[j]);
      double src = wq * vq;
      if (p.forcing) src += tau * p.forcing(g.map(rule.points[q]), t_next);
      for (int i = 0; i < nloc; ++i) {
        const double fi = dx * s.phi(q, i);
        for (int j = 0; j < nloc; ++j) elem[i * nloc + j] += fi * coef[j];
        elem_rhs[i] += fi * src;
      }
    }
    for (int i = 0; i < nloc; ++i) {
      const int r = pattern.row(c, i);
      if (r < 0) continue;
      rhs[r] += elem_rhs[i];
      for (int j = 0; j < nloc; ++j) {
        const int slot = pattern.slot(c, i, j);
        if (slot >= 0) values[slot] += elem[i * nloc + j];
      }
    }
  }
  return lowest;
}

}  // namespace

Stepper::System Stepper::system(const StepperState& state) const {
  std::vector<double> values;
  System out;
  out.nondegeneracy = assemble_step(space_, pattern_, stiffness_, stiffness_matrix_, params_,
                                    tau_, state, values, out.rhs)
                          .value;
  out.matrix = pattern_.make_matrix(std::move(values));
  return out;
}

void Stepper::step(StepperState& state) {
  if (state.u.size() != space_.num_dofs() || state.v.size() != space_.num_dofs()) {
    throw ConfigError("step: state does not live on this space");
  }
  std::vector<double> rhs;
  const MinLocation lowest = assemble_step(space_, pattern_, stiffness_, stiffness_matrix_,
                                           params_, tau_, state, matrix_.values(), rhs);
  last_nondegeneracy_ = lowest.value;
  if (!(lowest.value > opts_.gamma_min)) {
    throw DegeneracyError("step " + std::to_string(state.n) + " (t = " +
                              std::to_string(state.t) + "): " +
                              describe_degeneracy(lowest.value, lowest.x, opts_.gamma_min),
                          lowest.value, lowest.x.x, lowest.x.y, state.n, state.t);
  }

  const std::vector<double> x0 = space_.restrict_to_free(state.v);
  const std::vector<double> x = solve(matrix_, rhs, x0, opts_.solver, &last_stats_);
  if (last_stats_.fell_back) ++fallbacks_;

  state.v_prev = std::move(state.v);
  state.v = space_.extend_from_free(x);
  for (std::size_t i = 0; i < state.u.size(); ++i) state.u[i] += tau_ * state.v[i];
  ++state.n;
  state.t = static_cast<double>(state.n) * tau_;
}

StepperState step(const StepperState& state, const FeSpace& s, const ModelParams& p, double tau,
                  const StepperOptions& opts) {
  Stepper stepper(s, p, tau, opts);
  StepperState next = state;
  stepper.step(next);
  return next;
}

StepperState run(const FeSpace& s, const ModelParams& p, const InitialData& d, double tau,
                 double t_end, const StepObserver& observer, const StepperOptions& opts,
                 RunStats* stats) {
  if (!(tau > 0.0)) throw ConfigError("run: tau must be positive");
  if (!(t_end >= 2.0 * tau)) throw ConfigError("run: t_end must be at least 2 tau");
  StepperState st = initial_state(s, p, d, tau, opts);
  if (observer) observer(st);
  Stepper stepper(s, p, tau, opts);
  const double stop = t_end - 1e-9 * tau;
  RunStats local;
  local.min_nondegeneracy = std::numeric_limits<double>::infinity();
  while (st.t < stop) {
    stepper.step(st);
    ++local.steps;
    local.iterations += stepper.last_iterations();
    local.min_nondegeneracy = std::min(local.min_nondegeneracy, stepper.last_nondegeneracy());
    if (observer) observer(st);
  }
  local.fallbacks = stepper.fallbacks();
  if (stats != nullptr) *stats = local;
  return st;
}

CflReport cfl_check(double h, double tau, int k, double beta, double C, double eps) {
  constexpr double d = 2.0;
  if (!(eps >= 0.0) || !(eps < 1.0 / 3.0)) {
    throw ConfigError("cfl_check: eps must lie in [0, 1/3)");
  }
  if (!(h > 0.0) || !(tau > 0.0) || !(C > 0.0) || !(beta >= 0.0)) {
    throw ConfigError("cfl_check: h, tau, C must be positive and beta non-negative");
  }
  if (k < 1 || k > 3) throw ConfigError("cfl_check: degree must be 1, 2 or 3");

  CflReport rep;
  std::ostringstream os;
  os.precision(6);
  if (k >= 2) {
    rep.tau_threshold = C * std::pow(h, 1.0 + d / 6.0 + 2.0 * eps);
    rep.ok = tau <= rep.tau_threshold;
    if (!rep.ok) os << "tau = " << tau << " exceeds C h^(1+d/6+2eps) = " << rep.tau_threshold;
  } else {
    const double sb = C * std::sqrt(beta);
    rep.tau_threshold = sb * std::pow(h, d / 6.0 + 2.0 * eps);
    const double lhs = std::pow(h, 1.0 - d / 6.0 - 2.0 * eps);
    const bool tau_ok = tau <= rep.tau_threshold;
    const bool h_ok = lhs <= sb;
    rep.ok = tau_ok && h_ok;
    if (!tau_ok) os << "tau = " << tau << " exceeds C sqrt(beta) h^(d/6+2eps) = " << rep.tau_threshold;
    if (!h_ok) {
      if (!tau_ok) os << "; ";
      os << "h^(1-d/6-2eps) = " << lhs << " exceeds C sqrt(beta) = " << sb;
    }
  }
  rep.message = os.str();
  return rep;
}

}  // namespace kuz
