#include "kuz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kuz/basis.hpp"
#include "kuz/errors.hpp"

namespace kuz {

namespace {

constexpr double kPi = std::numbers::pi;

/// Integrate `integrand(cell, q, x, value, grad)` of a finite element field
/// over the domain.
template <class F>
double integrate_field(const FeSpace& s, std::span<const double> u, F&& integrand) {
  if (u.size() != s.num_dofs()) throw ConfigError("norm: coefficient vector has wrong size");
  const int nloc = s.dofs_per_cell();
  const auto& rule = s.rule();
  double total = 0.0;
  for (std::size_t c = 0; c < s.num_cells(); ++c) {
    const CellGeometry& g = s.geometry(c);
    const auto dofs = s.cell_dofs(c);
    double cell_sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      double val = 0.0;
      Vec2 gref;
      for (int l = 0; l < nloc; ++l) {
        val += u[dofs[l]] * s.phi(q, l);
        gref = gref + u[dofs[l]] * s.dphi_ref(q, l);
      }
      cell_sum += rule.weights[q] * integrand(g.map(rule.points[q]), val, g.push_gradient(gref));
    }
    total += g.det * cell_sum;
  }
  return total;
}

double pow_norm(double sq, int p) { return p == 2 ? sq : sq * sq * sq; }

}  // namespace

double grad_error_lp(const FeSpace& s, std::span<const double> u, const SpatialGradFn& exact_grad,
                     int p) {
  if (p != 2 && p != 6) throw ConfigError("grad_error_lp: p must be 2 or 6");
  const double integral = integrate_field(s, u, [&](Point2 x, double, Vec2 grad) {
    const Vec2 d = exact_grad(x) - grad;
    return pow_norm(dot(d, d), p);
  });
  return std::pow(integral, 1.0 / p);
}

double grad_error_lp(const FeSpace& s, std::span<const double> u,
                     const SpaceTimeGradFn& exact_grad, int p, double t) {
  return grad_error_lp(s, u, SpatialGradFn([&](Point2 x) { return exact_grad(x, t); }), p);
}

double l2_error(const FeSpace& s, std::span<const double> u, const SpatialFn& exact) {
  return std::sqrt(integrate_field(s, u, [&](Point2 x, double val, Vec2) {
    const double d = exact(x) - val;
    return d * d;
  }));
}

double l2_error(const FeSpace& s, std::span<const double> u, const SpaceTimeFn& exact, double t) {
  return l2_error(s, u, SpatialFn([&](Point2 x) { return exact(x, t); }));
}

double l2_norm(const FeSpace& s, std::span<const double> u) {
  return std::sqrt(integrate_field(s, u, [](Point2, double val, Vec2) { return val * val; }));
}

double grad_l2_norm(const FeSpace& s, std::span<const double> u) {
  return std::sqrt(integrate_field(s, u, [](Point2, double, Vec2 g) { return dot(g, g); }));
}

std::vector<double> observed_order(std::span<const double> errors,
                                   std::span<const double> params) {
  if (errors.size() != params.size() || errors.size() < 2) {
    throw ConfigError("observed_order: need two or more (error, parameter) pairs");
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(params[i] > 0.0)) {
      throw ConfigError("observed_order: errors and parameters must be positive");
    }
    if (i > 0 && !(params[i] < params[i - 1])) {
      throw ConfigError("observed_order: parameters must be strictly decreasing");
    }
  }
  std::vector<double> rates(errors.size() - 1);
  for (std::size_t i = 1; i < errors.size(); ++i) {
    rates[i - 1] = std::log(errors[i - 1] / errors[i]) / std::log(params[i - 1] / params[i]);
  }
  return rates;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("loglog_slope: need two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ConfigError("loglog_slope: values must be positive");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::size_t pre_plateau_length(std::span<const double> errors) {
  std::size_t n = errors.empty() ? 0 : 1;
  while (n < errors.size() && errors[n] <= 0.8 * errors[n - 1]) ++n;
  return n;
}

int nesting_levels(const Mesh& coarse, const Mesh& fine) {
  const std::size_t nc = coarse.num_triangles();
  std::size_t nf = fine.num_triangles();
  int levels = 0;
  while (nf > nc && nf % 4 == 0) {
    nf /= 4;
    ++levels;
  }
  if (nf != nc || fine.num_vertices() < coarse.num_vertices()) {
    throw ConfigError("compare_states_nested: meshes are not nested");
  }
  for (std::size_t i = 0; i < coarse.num_vertices(); ++i) {
    if (!(coarse.vertices()[i] == fine.vertices()[i])) {
      throw ConfigError("compare_states_nested: meshes are not nested");
    }
  }
  if (levels == 0) {
    if (coarse.triangles() != fine.triangles()) {
      throw ConfigError("compare_states_nested: meshes are not nested");
    }
    return 0;
  }
  // Every fine vertex must lie in its ancestor cell.
  const int shift = 2 * levels;
  for (std::size_t f = 0; f < fine.num_triangles(); ++f) {
    const auto& ct = coarse.triangles()[f >> shift];
    const Point2 a = coarse.vertices()[ct[0]];
    const Point2 b = coarse.vertices()[ct[1]];
    const Point2 c = coarse.vertices()[ct[2]];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    for (int v : fine.triangles()[f]) {
      const Point2 p = fine.vertices()[v];
      const double l1 = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
      const double l2 = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
      constexpr double tol = -1e-12;
      if (l1 < tol || l2 < tol || 1.0 - l1 - l2 < tol) {
        throw ConfigError("compare_states_nested: meshes are not nested");
      }
    }
  }
  return levels;
}

StateDifference compare_states_nested(const FeSpace& coarse, std::span<const double> coarse_u,
                                      std::span<const double> coarse_v, const FeSpace& fine,
                                      std::span<const double> fine_u,
                                      std::span<const double> fine_v) {
  if (coarse_u.size() != coarse.num_dofs() || coarse_v.size() != coarse.num_dofs() ||
      fine_u.size() != fine.num_dofs() || fine_v.size() != fine.num_dofs()) {
    throw ConfigError("compare_states_nested: state sizes do not match their spaces");
  }
  const int levels = nesting_levels(coarse.mesh(), fine.mesh());
  StateDifference out;

  if (levels == 0 && coarse.degree() == fine.degree()) {
    std::vector<double> du(coarse_u.size()), dv(coarse_v.size());
    for (std::size_t i = 0; i < du.size(); ++i) {
      du[i] = coarse_u[i] - fine_u[i];
      dv[i] = coarse_v[i] - fine_v[i];
    }
    out.grad_u = grad_l2_norm(fine, du);
    out.l2_v = l2_norm(fine, dv);
    out.grad_v = grad_l2_norm(fine, dv);
    return out;
  }

  const int shift = 2 * levels;
  const int kc = coarse.degree();
  const int nlc = coarse.dofs_per_cell();
  const int nlf = fine.dofs_per_cell();
  const auto& rule = fine.rule();
  double vals[10];
  Vec2 grads[10];
  double su = 0.0, sv = 0.0, sgv = 0.0;
  for (std::size_t f = 0; f < fine.num_cells(); ++f) {
    const std::size_t c = f >> shift;
    const CellGeometry& gf = fine.geometry(f);
    const CellGeometry& gc = coarse.geometry(c);
    const auto fd = fine.cell_dofs(f);
    const auto cd = coarse.cell_dofs(c);
    double cu = 0.0, cv = 0.0, cgv = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      Vec2 gu_f, gv_f, gu_c, gv_c;
      double v_f = 0.0, v_c = 0.0;
      for (int l = 0; l < nlf; ++l) {
        const Vec2 g = gf.push_gradient(fine.dphi_ref(q, l));
        gu_f = gu_f + fine_u[fd[l]] * g;
        gv_f = gv_f + fine_v[fd[l]] * g;
        v_f += fine_v[fd[l]] * fine.phi(q, l);
      }
      const Point2 ref = gc.inverse_map(gf.map(rule.points[q]));
      reference_basis(kc, ref, std::span<double>(vals, nlc), std::span<Vec2>(grads, nlc));
      for (int l = 0; l < nlc; ++l) {
        const Vec2 g = gc.push_gradient(grads[l]);
        gu_c = gu_c + coarse_u[cd[l]] * g;
        gv_c = gv_c + coarse_v[cd[l]] * g;
        v_c += coarse_v[cd[l]] * vals[l];
      }
      const Vec2 du = gu_c - gu_f;
      const Vec2 dgv = gv_c - gv_f;
      const double dv = v_c - v_f;
      cu += rule.weights[q] * dot(du, du);
      cv += rule.weights[q] * dv * dv;
      cgv += rule.weights[q] * dot(dgv, dgv);
    }
    su += gf.det * cu;
    sv += gf.det * cv;
    sgv += gf.det * cgv;
  }
  out.grad_u = std::sqrt(su);
  out.l2_v = std::sqrt(sv);
  out.grad_v = std::sqrt(sgv);
  return out;
}

FieldCoeffs prolongate_nested(const FeSpace& coarse, std::span<const double> u,
                              const FeSpace& fine) {
  if (u.size() != coarse.num_dofs()) throw ConfigError("prolongate_nested: wrong size");
  const int shift = 2 * nesting_levels(coarse.mesh(), fine.mesh());
  FieldCoeffs out(fine.num_dofs(), 0.0);
  std::vector<char> done(fine.num_dofs(), 0);
  for (std::size_t f = 0; f < fine.num_cells(); ++f) {
    const std::size_t c = f >> shift;
    for (int dof : fine.cell_dofs(f)) {
      if (done[dof]) continue;
      const Point2 ref = coarse.geometry(c).inverse_map(fine.dof_coords()[dof]);
      out[dof] = coarse.evaluate(u, c, ref).value;
      done[dof] = 1;
    }
  }
  return out;
}

double ManufacturedSolution::u(Point2 x, double t) const {
  return c_sp * std::exp(c_time * t) * std::sin(kPi * x.x) * std::sin(kPi * x.y);
}

Vec2 ManufacturedSolution::grad_u(Point2 x, double t) const {
  const double a = c_sp * std::exp(c_time * t) * kPi;
  return {a * std::cos(kPi * x.x) * std::sin(kPi * x.y),
          a * std::sin(kPi * x.x) * std::cos(kPi * x.y)};
}

double ManufacturedSolution::lap_u(Point2 x, double t) const {
  return -2.0 * kPi * kPi * u(x, t);
}

InitialData ManufacturedSolution::initial_data() const {
  const ManufacturedSolution m = *this;
  InitialData d;
  d.u0 = {[m](Point2 x) { return m.u(x, 0.0); }, [m](Point2 x) { return m.grad_u(x, 0.0); }};
  d.v0 = {[m](Point2 x) { return m.u_t(x, 0.0); }, [m](Point2 x) { return m.grad_u_t(x, 0.0); }};
  d.lap_u0 = [m](Point2 x) { return m.lap_u(x, 0.0); };
  d.lap_v0 = [m](Point2 x) { return m.c_time * m.lap_u(x, 0.0); };
  return d;
}

SpaceTimeFn manufactured_forcing(const ModelParams& p, double c_sp, double c_time) {
  const double kappa = p.kappa, c2 = p.c2, beta = p.beta, ell = p.ell;
  return [=](Point2 x, double t) {
    const double e = c_sp * std::exp(c_time * t);
    const double sx = std::sin(kPi * x.x), sy = std::sin(kPi * x.y);
    const double cx = std::cos(kPi * x.x), cy = std::cos(kPi * x.y);
    const double U = e * sx * sy;
    const double G = e * e * kPi * kPi * (cx * cx * sy * sy + sx * sx * cy * cy);
    const double pi2 = 2.0 * kPi * kPi;
    return (1.0 + kappa * c_time * U) * c_time * c_time * U + pi2 * c2 * U +
           pi2 * beta * c_time * U + ell * c_time * G;
  };
}

InitialData gaussian_pulse_data() {
  InitialData d;
  d.u0 = {[](Point2 x) { return -std::exp(-(x.x * x.x + x.y * x.y)); },
          [](Point2 x) {
            const double g = 2.0 * std::exp(-(x.x * x.x + x.y * x.y));
            return Vec2{g * x.x, g * x.y};
          }};
  d.v0 = {[](Point2) { return 0.0; }, [](Point2) { return Vec2{}; }};
  d.lap_u0 = [](Point2 x) {
    const double r2 = x.x * x.x + x.y * x.y;
    return (4.0 - 4.0 * r2) * std::exp(-r2);
  };
  d.lap_v0 = [](Point2) { return 0.0; };
  return d;
}

ManufacturedErrorTracker::ManufacturedErrorTracker(const FeSpace& s, const ModelParams& p,
                                                   ManufacturedSolution sol, double tau,
                                                   bool accumulate_l6)
    : space_(s), params_(p), sol_(sol), tau_(tau), accumulate_l6_(accumulate_l6) {}

void ManufacturedErrorTracker::operator()(const StepperState& st) {
  if (!accumulate_l6_) return;
  const ManufacturedSolution m = sol_;
  const double e = grad_error_lp(
      space_, st.u, SpatialGradFn([&](Point2 x) { return m.grad_u(x, st.t); }), 6);
  l6_acc_ += tau_ * e * e;
}

ErrorRecord ManufacturedErrorTracker::record(const StepperState& st) const {
  const ManufacturedSolution m = sol_;
  ErrorRecord r;
  r.t = st.t;
  r.err_grad_dt = grad_error_lp(
      space_, st.v, SpatialGradFn([&](Point2 x) { return m.grad_u_t(x, st.t); }), 2);
  std::vector<double> dt2(st.v.size());
  for (std::size_t i = 0; i < dt2.size(); ++i) dt2[i] = (st.v[i] - st.v_prev[i]) / tau_;
  r.err_dt2 = l2_error(space_, dt2, SpatialFn([&](Point2 x) { return m.u_tt(x, st.t); }));
  r.err_grad_l6_acc = l6_acc_;
  r.degeneracy_min = nondegeneracy_min(st, space_, params_);
  return r;
}

}  // namespace kuz
