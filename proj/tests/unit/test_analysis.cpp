#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kuz/analysis.hpp"
#include "kuz/assembly.hpp"
#include "kuz/discrete_ops.hpp"
#include "kuz/errors.hpp"
#include "kuz/mesh.hpp"

namespace {

constexpr kuz::Rect kUnit{0.0, 1.0, 0.0, 1.0};
constexpr double kPi = std::numbers::pi;

kuz::FieldCoeffs random_vh(const kuz::FeSpace& s, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> free(s.num_free());
  for (auto& v : free) v = u(rng);
  return s.extend_from_free(free);
}

const kuz::SpatialGradFn kZeroGrad = [](kuz::Point2) { return kuz::Vec2{0, 0}; };
const kuz::SpatialFn kZero = [](kuz::Point2) { return 0.0; };

TEST(Norms, InterpolantOfPolynomialHasZeroError) {
  for (int k = 1; k <= 3; ++k) {
    const kuz::FeSpace s(kuz::build_rect_mesh(kuz::Rect{-1, 1, 0, 2}, 3, 3), k);
    kuz::FieldCoeffs u(s.num_dofs());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto x = s.dof_coords()[i];
      u[i] = std::pow(x.x, k) - x.y;
    }
    const auto grad = kuz::SpatialGradFn([k](kuz::Point2 x) {
      return kuz::Vec2{k * std::pow(x.x, k - 1), -1.0};
    });
    EXPECT_NEAR(kuz::grad_error_lp(s, u, grad, 2), 0.0, 1e-11);
    EXPECT_NEAR(kuz::grad_error_lp(s, u, grad, 6), 0.0, 1e-11);
    EXPECT_NEAR(kuz::l2_error(s, u, kuz::SpatialFn([k](kuz::Point2 x) { return std::pow(x.x, k) - x.y; })),
                0.0, 1e-11);
  }
}

TEST(Norms, ConstantGradientAgainstZero) {
  const kuz::Rect r{0, 2, 0, 3};
  const kuz::FeSpace s(kuz::build_rect_mesh(r, 2, 3), 2);
  const kuz::FieldCoeffs zero(s.num_dofs(), 0.0);
  const kuz::Vec2 g{0.6, -0.8};
  const auto cg = kuz::SpatialGradFn([g](kuz::Point2) { return g; });
  EXPECT_NEAR(kuz::grad_error_lp(s, zero, cg, 6), 1.0 * std::pow(6.0, 1.0 / 6), 1e-13);
  EXPECT_NEAR(kuz::grad_error_lp(s, zero, cg, 2), std::sqrt(6.0), 1e-13);
  const auto cgt = kuz::SpaceTimeGradFn([g](kuz::Point2, double t) { return t * g; });
  EXPECT_NEAR(kuz::grad_error_lp(s, zero, cgt, 6, 2.0), 2.0 * std::pow(6.0, 1.0 / 6), 1e-13);
  EXPECT_THROW(kuz::grad_error_lp(s, zero, cg, 3), kuz::ConfigError);
}

TEST(Norms, L2ErrorBasics) {
  const kuz::FeSpace s(kuz::build_rect_mesh(kUnit, 3, 3), 1);
  const kuz::FieldCoeffs zero(s.num_dofs(), 0.0);
  EXPECT_EQ(kuz::l2_error(s, zero, kZero), 0.0);
  EXPECT_NEAR(kuz::l2_error(s, zero, kuz::SpatialFn([](kuz::Point2) { return 1.0; })), 1.0, 1e-14);
  EXPECT_NEAR(kuz::l2_error(s, zero, kuz::SpaceTimeFn([](kuz::Point2, double t) { return t; }), 3.0), 3.0,
              1e-14);
  EXPECT_EQ(kuz::l2_norm(s, zero), 0.0);
  EXPECT_EQ(kuz::grad_l2_norm(s, zero), 0.0);
}

TEST(Norms, HomogeneousAndStiffnessConsistent) {
  for (int k = 1; k <= 3; ++k) {
    const kuz::FeSpace s(kuz::build_rect_mesh(kUnit, 4, 4), k);
    const auto u = random_vh(s, 40 + k);
    auto scaled = u;
    for (auto& v : scaled) v *= -3.0;
    EXPECT_NEAR(kuz::l2_norm(s, scaled), 3.0 * kuz::l2_norm(s, u), 1e-13);
    EXPECT_NEAR(kuz::grad_l2_norm(s, scaled), 3.0 * kuz::grad_l2_norm(s, u), 1e-12);
    EXPECT_NEAR(kuz::grad_error_lp(s, scaled, kZeroGrad, 6), 3.0 * kuz::grad_error_lp(s, u, kZeroGrad, 6),
                1e-12);
    // p = 2 squared is the stiffness quadratic form
    const double q = kuz::dot(u, kuz::assemble_stiffness(s) * u);
    EXPECT_NEAR(std::pow(kuz::grad_error_lp(s, u, kZeroGrad, 2), 2), q, 1e-10 * std::max(1.0, q));
    const double m = kuz::dot(u, kuz::assemble_mass(s) * u);
    EXPECT_NEAR(std::pow(kuz::l2_norm(s, u), 2), m, 1e-12 * std::max(1.0, m));
  }
}

TEST(Norms, ApproximationOrders) {
  const kuz::DifferentiableFn g{
      [](kuz::Point2 x) { return std::sin(kPi * x.x) * std::sin(kPi * x.y); },
      [](kuz::Point2 x) {
        return kuz::Vec2{kPi * std::cos(kPi * x.x) * std::sin(kPi * x.y),
                         kPi * std::sin(kPi * x.x) * std::cos(kPi * x.y)};
      }};
  for (int k = 1; k <= 3; ++k) {
    std::vector<double> h, eg, ei;
    for (int nx : {4, 8, 16}) {
      const kuz::FeSpace s(kuz::build_rect_mesh(kUnit, nx, nx), k);
      h.push_back(kuz::mesh_size(s.mesh()));
      eg.push_back(kuz::grad_error_lp(s, kuz::ritz_project(s, g), g.grad, 2));
      ei.push_back(kuz::l2_error(s, kuz::nodal_interpolate(s, g.value), g.value));
    }
    EXPECT_NEAR(kuz::observed_order(eg, h).back(), k, 0.15) << "k=" << k;
    EXPECT_NEAR(kuz::observed_order(ei, h).back(), k + 1, 0.15) << "k=" << k;
  }
}

TEST(Rates, ObservedOrder) {
  const std::vector<double> e{1e-2, 2.5e-3}, h{0.1, 0.05};
  ASSERT_EQ(kuz::observed_order(e, h).size(), 1u);
  EXPECT_NEAR(kuz::observed_order(e, h)[0], 2.0, 1e-12);
  EXPECT_EQ(kuz::observed_order(std::vector<double>{3.0, 3.0}, h)[0], 0.0);
  std::vector<double> hs{0.4, 0.2, 0.1, 0.05}, es;
  for (double x : hs) es.push_back(7.0 * x * x * x);
  for (double r : kuz::observed_order(es, hs)) EXPECT_NEAR(r, 3.0, 1e-12);
  EXPECT_NEAR(kuz::loglog_slope(hs, es), 3.0, 1e-12);
}

TEST(Rates, ObservedOrderRejectsBadInput) {
  const std::vector<double> h{0.1, 0.05};
  EXPECT_THROW(kuz::observed_order(std::vector<double>{1.0, 0.0}, h), kuz::ConfigError);
  EXPECT_THROW(kuz::observed_order(std::vector<double>{1.0, -1.0}, h), kuz::ConfigError);
  EXPECT_THROW(kuz::observed_order(std::vector<double>{1.0, 0.5}, std::vector<double>{0.05, 0.1}),
               kuz::ConfigError);
  EXPECT_THROW(kuz::observed_order(std::vector<double>{1.0}, std::vector<double>{0.1}), kuz::ConfigError);
  EXPECT_THROW(kuz::observed_order(std::vector<double>{1.0, 2.0, 3.0}, h), kuz::ConfigError);
}

TEST(Rates, PrePlateauLength) {
  EXPECT_EQ(kuz::pre_plateau_length(std::vector<double>{1.0}), 1u);
  EXPECT_EQ(kuz::pre_plateau_length(std::vector<double>{1.0, 0.25, 0.0625}), 3u);
  EXPECT_EQ(kuz::pre_plateau_length(std::vector<double>{1.0, 0.25, 0.24, 0.1}), 2u);
  EXPECT_EQ(kuz::pre_plateau_length(std::vector<double>{1.0, 0.8, 0.5}), 3u);
  EXPECT_EQ(kuz::pre_plateau_length(std::vector<double>{1.0, 0.81}), 1u);
}

TEST(Compare, IdenticalAndConstantOffset) {
  const kuz::Rect r{0, 2, 0, 2};
  const kuz::FeSpace s(kuz::build_rect_mesh(r, 3, 3), 2);
  const auto u = random_vh(s, 1);
  const auto v = random_vh(s, 2);
  const auto same = kuz::compare_states_nested(s, u, v, s, u, v);
  EXPECT_EQ(same.grad_u, 0.0);
  EXPECT_EQ(same.l2_v, 0.0);
  EXPECT_EQ(same.ebar(), 0.0);
  auto v2 = v;
  for (auto& x : v2) x += 0.3;
  const auto off = kuz::compare_states_nested(s, u, v, s, u, v2);
  EXPECT_NEAR(off.l2_v, 0.3 * 2.0, 1e-13);
  EXPECT_NEAR(off.grad_v, 0.0, 1e-12);
  EXPECT_EQ(off.grad_u, 0.0);
}

TEST(Compare, NestedEvaluationMatchesProlongation) {
  const kuz::Mesh base = kuz::build_rect_mesh(kuz::Rect{-4, 4, -4, 4}, 3, 2);
  const kuz::Mesh fine_mesh = kuz::refine_uniform(kuz::refine_uniform(base));
  for (int k = 1; k <= 3; ++k) {
    const kuz::FeSpace coarse(base, k);
    const kuz::FeSpace fine(fine_mesh, k);
    EXPECT_EQ(kuz::nesting_levels(coarse.mesh(), fine.mesh()), 2);
    const auto uc = random_vh(coarse, 3 + k), vc = random_vh(coarse, 30 + k);
    const auto uf = random_vh(fine, 5 + k), vf = random_vh(fine, 50 + k);
    const auto nested = kuz::compare_states_nested(coarse, uc, vc, fine, uf, vf);
    const auto pu = kuz::prolongate_nested(coarse, uc, fine);
    const auto pv = kuz::prolongate_nested(coarse, vc, fine);
    const auto direct = kuz::compare_states_nested(fine, pu, pv, fine, uf, vf);
    EXPECT_NEAR(nested.grad_u, direct.grad_u, 1e-12 * direct.grad_u);
    EXPECT_NEAR(nested.l2_v, direct.l2_v, 1e-12 * direct.l2_v);
    EXPECT_NEAR(nested.grad_v, direct.grad_v, 1e-12 * direct.grad_v);
    // a coarse function prolongated and compared to itself
    const auto zero = kuz::compare_states_nested(coarse, uc, vc, fine, pu, pv);
    EXPECT_NEAR(zero.ebar(), 0.0, 1e-12);
  }
}

TEST(Compare, RejectsNonNestedMeshes) {
  const kuz::FeSpace a(kuz::build_rect_mesh(kUnit, 2, 2), 1);
  const kuz::FeSpace b(kuz::build_rect_mesh(kUnit, 4, 4), 1);  // same vertices, different lineage
  const kuz::FeSpace c(kuz::build_rect_mesh(kUnit, 3, 3), 1);
  const auto ua = random_vh(a, 1), ub = random_vh(b, 2), uc = random_vh(c, 3);
  EXPECT_THROW(kuz::compare_states_nested(a, ua, ua, b, ub, ub), kuz::ConfigError);
  EXPECT_THROW(kuz::compare_states_nested(a, ua, ua, c, uc, uc), kuz::ConfigError);
  EXPECT_THROW(kuz::nesting_levels(c.mesh(), a.mesh()), kuz::ConfigError);
}

class ManufacturedForcing : public ::testing::Test {
 protected:
  struct Case {
    double kappa, c2, beta, ell, c_sp, c_time;
  };
  static std::vector<Case> cases() {
    return {{0.7, 1.0, 0.0, 2.0, 0.1, 0.5},   {0.7, 1.0, 1e-3, 2.0, 0.1, 0.5},
            {0.7, 1.0, 1e-2, 2.0, 0.1, 0.5},  {0.3, 1.0, 1e-1, 2.0, 0.01, 1.0},
            {0.3, 1.0, 1e-4, 2.0, 0.01, 1.0}, {-0.29, 1.3, 0.05, -1.0, 0.2, 0.8}};
  }
  static kuz::ModelParams params(const Case& c) {
    kuz::ModelParams p;
    p.kappa = c.kappa;
    p.c2 = c.c2;
    p.beta = c.beta;
    p.ell = c.ell;
    return p;
  }
};

TEST_F(ManufacturedForcing, AnalyticResidual) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& c : cases()) {
    const auto p = params(c);
    const auto f = kuz::manufactured_forcing(p, c.c_sp, c.c_time);
    for (int i = 0; i < 200; ++i) {
      const kuz::Point2 x{u(rng), u(rng)};
      const double t = u(rng);
      // u = c_sp e^{ct} S with S = sin(pi x) sin(pi y)
      const double S = std::sin(kPi * x.x) * std::sin(kPi * x.y);
      const double e = c.c_sp * std::exp(c.c_time * t);
      const double U = e * S;
      const double ut = c.c_time * U, utt = c.c_time * c.c_time * U;
      const double lap = -2 * kPi * kPi * U;
      const double gx = e * kPi * std::cos(kPi * x.x) * std::sin(kPi * x.y);
      const double gy = e * kPi * std::sin(kPi * x.x) * std::cos(kPi * x.y);
      const double lhs = (1 + c.kappa * ut) * utt - c.c2 * lap - c.beta * c.c_time * lap +
                         c.ell * c.c_time * (gx * gx + gy * gy);
      EXPECT_NEAR(f(x, t) - lhs, 0.0, 1e-9);
    }
  }
}

TEST_F(ManufacturedForcing, FiniteDifferenceResidual) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& c : cases()) {
    const auto p = params(c);
    const auto f = kuz::manufactured_forcing(p, c.c_sp, c.c_time);
    const kuz::ManufacturedSolution sol{c.c_sp, c.c_time};
    auto U = [&](double x, double y, double t) { return sol.u({x, y}, t); };
    const double h = 1e-3;
    for (int i = 0; i < 200; ++i) {
      const double x = u(rng), y = u(rng), t = u(rng);
      auto lap = [&](double tt) {
        return (U(x + h, y, tt) + U(x - h, y, tt) + U(x, y + h, tt) + U(x, y - h, tt) - 4 * U(x, y, tt)) /
               (h * h);
      };
      const double ut = (U(x, y, t + h) - U(x, y, t - h)) / (2 * h);
      const double utt = (U(x, y, t + h) - 2 * U(x, y, t) + U(x, y, t - h)) / (h * h);
      const double lap_t = (lap(t + h) - lap(t - h)) / (2 * h);
      const double ux = (U(x + h, y, t) - U(x - h, y, t)) / (2 * h);
      const double uy = (U(x, y + h, t) - U(x, y - h, t)) / (2 * h);
      const double uxt = (U(x + h, y, t + h) - U(x - h, y, t + h) - U(x + h, y, t - h) + U(x - h, y, t - h)) /
                         (4 * h * h);
      const double uyt = (U(x, y + h, t + h) - U(x, y - h, t + h) - U(x, y + h, t - h) + U(x, y - h, t - h)) /
                         (4 * h * h);
      const double lhs = (1 + c.kappa * ut) * utt - c.c2 * lap(t) - c.beta * lap_t + c.ell * (ux * uxt + uy * uyt);
      EXPECT_NEAR(f({x, y}, t) - lhs, 0.0, 1e-5);
    }
  }
}

TEST_F(ManufacturedForcing, SpecialValues) {
  kuz::ModelParams p;
  const auto f0 = kuz::manufactured_forcing(params(cases()[0]), 0.0, 0.5);
  EXPECT_EQ(f0({0.3, 0.6}, 0.4), 0.0);
  const auto f = kuz::manufactured_forcing(p, 0.1, 0.5);
  EXPECT_NEAR(f({0.5, 0.5}, 0.0), 0.1 * (0.25 + 2 * kPi * kPi), 1e-14);
}

TEST(Manufactured, SolutionDerivativesConsistent) {
  const kuz::ManufacturedSolution sol{0.1, 0.5};
  const kuz::Point2 x{0.3, 0.7};
  const double h = 1e-5;
  EXPECT_NEAR(sol.u_t(x, 0.4), (sol.u(x, 0.4 + h) - sol.u(x, 0.4 - h)) / (2 * h), 1e-9);
  EXPECT_NEAR(sol.grad_u(x, 0.4).x, (sol.u({x.x + h, x.y}, 0.4) - sol.u({x.x - h, x.y}, 0.4)) / (2 * h), 1e-9);
  EXPECT_NEAR(sol.lap_u(x, 0.4), -2 * kPi * kPi * sol.u(x, 0.4), 1e-14);
  const auto d = sol.initial_data();
  EXPECT_NEAR(d.v0.value(x), 0.5 * sol.u(x, 0.0), 1e-15);
  EXPECT_NEAR(d.lap_v0(x), 0.5 * sol.lap_u(x, 0.0), 1e-14);
}

TEST(Tracker, ErrorsNonNegativeAndL6Monotone) {
  const kuz::FeSpace s(kuz::build_rect_mesh(kUnit, 4, 4), 2);
  kuz::ModelParams p;
  p.kappa = 0.7;
  p.ell = 2.0;
  p.forcing = kuz::manufactured_forcing(p, 0.1, 0.5);
  const kuz::ManufacturedSolution sol{0.1, 0.5};
  kuz::ManufacturedErrorTracker tracker(s, p, sol, 0.02);
  double last = -1.0;
  kuz::run(s, p, sol.initial_data(), 0.02, 0.2, [&](const kuz::StepperState& st) {
    tracker(st);
    const auto rec = tracker.record(st);
    EXPECT_GE(rec.err_grad_dt, 0.0);
    EXPECT_GE(rec.err_dt2, 0.0);
    EXPECT_GE(rec.err_grad_l6_acc, last);
    EXPECT_GT(rec.degeneracy_min, 0.0);
    EXPECT_DOUBLE_EQ(rec.t, st.t);
    last = rec.err_grad_l6_acc;
  });
  EXPECT_GT(last, 0.0);
}

}  // namespace
