#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "kuz/basis.hpp"
#include "kuz/errors.hpp"
#include "kuz/quadrature.hpp"
#include "oracle.hpp"

namespace {

double apply(const kuz::QuadratureRule& r, int a, int b) {
  double s = 0.0;
  for (std::size_t q = 0; q < r.size(); ++q) {
    s += r.weights[q] * std::pow(r.points[q].x, a) * std::pow(r.points[q].y, b);
  }
  return s;
}

// int_ref x^a y^b = a! b! / (a + b + 2)!
double exact_monomial(int a, int b) {
  return oracle::factorial(a) * oracle::factorial(b) / oracle::factorial(a + b + 2);
}

TEST(Quadrature, AreaAndSimpleMonomials) {
  for (int order = 0; order <= kuz::kMaxQuadratureOrder; ++order) {
    const auto r = kuz::quadrature(order);
    EXPECT_NEAR(apply(r, 0, 0), 0.5, 1e-15) << order;
    if (order >= 1) EXPECT_NEAR(apply(r, 1, 0), 1.0 / 6.0, 1e-15) << order;
    if (order >= 4) EXPECT_NEAR(apply(r, 2, 2), 1.0 / 180.0, 1e-15) << order;
  }
}

TEST(Quadrature, ExactUpToOrderWithPositiveWeightsInside) {
  for (int order = 0; order <= kuz::kMaxQuadratureOrder; ++order) {
    const auto r = kuz::quadrature(order);
    EXPECT_GE(r.degree, order);
    for (std::size_t q = 0; q < r.size(); ++q) {
      EXPECT_GT(r.weights[q], 0.0);
      EXPECT_GT(r.points[q].x, 0.0);
      EXPECT_GT(r.points[q].y, 0.0);
      EXPECT_LT(r.points[q].x + r.points[q].y, 1.0);
    }
    for (int a = 0; a <= order; ++a) {
      for (int b = 0; a + b <= order; ++b) {
        EXPECT_NEAR(apply(r, a, b), exact_monomial(a, b), 1e-14 * exact_monomial(0, 0))
            << "order " << order << " x^" << a << " y^" << b;
      }
    }
  }
}

TEST(Quadrature, RejectsOutOfRangeOrder) {
  EXPECT_THROW(kuz::quadrature(-1), kuz::ConfigError);
  EXPECT_THROW(kuz::quadrature(kuz::kMaxQuadratureOrder + 1), kuz::ConfigError);
}

TEST(Quadrature, GaussLegendreOnUnitInterval) {
  std::vector<double> x, w;
  kuz::gauss_legendre_01(5, x, w);
  ASSERT_EQ(x.size(), 5u);
  for (int p = 0; p <= 9; ++p) {
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += w[i] * std::pow(x[i], p);
    EXPECT_NEAR(s, 1.0 / (p + 1), 1e-15);
  }
}

TEST(Basis, P1AtVertexAndBarycenter) {
  auto b = kuz::reference_basis(1, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(b.values[0], 1.0);
  EXPECT_DOUBLE_EQ(b.values[1], 0.0);
  EXPECT_DOUBLE_EQ(b.values[2], 0.0);
  b = kuz::reference_basis(1, {1.0 / 3, 1.0 / 3});
  for (double v : b.values) EXPECT_NEAR(v, 1.0 / 3, 1e-15);
}

TEST(Basis, P2VertexFunctionVanishesOnOppositeEdge) {
  // local 0 is lambda_0 (2 lambda_0 - 1); lambda_0 = 0 on the edge x + y = 1
  EXPECT_NEAR(kuz::reference_basis(2, {0.5, 0.5}).values[0], 0.0, 1e-15);
  EXPECT_NEAR(kuz::reference_basis(2, {0.0, 0.0}).values[0], 1.0, 1e-15);
}

TEST(Basis, NodalProperty) {
  for (int k = 1; k <= 3; ++k) {
    const auto nodes = kuz::reference_nodes(k);
    ASSERT_EQ(static_cast<int>(nodes.size()), kuz::num_local_dofs(k));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto b = kuz::reference_basis(k, nodes[i]);
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        EXPECT_NEAR(b.values[j], i == j ? 1.0 : 0.0, 1e-14) << "k=" << k;
      }
    }
  }
}

TEST(Basis, NodeOrder) {
  const auto n3 = kuz::reference_nodes(3);
  EXPECT_EQ(n3[0], (kuz::Point2{0, 0}));
  EXPECT_EQ(n3[1], (kuz::Point2{1, 0}));
  EXPECT_EQ(n3[2], (kuz::Point2{0, 1}));
  EXPECT_NEAR(n3[3].x, 1.0 / 3, 1e-15);  // edge 0->1, first from vertex 0
  EXPECT_NEAR(n3[4].x, 2.0 / 3, 1e-15);
  EXPECT_NEAR(n3[5].x, 2.0 / 3, 1e-15);  // edge 1->2
  EXPECT_NEAR(n3[5].y, 1.0 / 3, 1e-15);
  EXPECT_NEAR(n3[7].y, 2.0 / 3, 1e-15);  // edge 2->0, first from vertex 2
  EXPECT_NEAR(n3[9].x, 1.0 / 3, 1e-15);
  EXPECT_NEAR(n3[9].y, 1.0 / 3, 1e-15);
}

TEST(Basis, PartitionOfUnityAndGradientsAgainstFiniteDifferences) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.05, 0.45);
  for (int k = 1; k <= 3; ++k) {
    for (int trial = 0; trial < 20; ++trial) {
      const kuz::Point2 p{u(rng), u(rng)};
      const auto b = kuz::reference_basis(k, p);
      EXPECT_NEAR(std::accumulate(b.values.begin(), b.values.end(), 0.0), 1.0, 1e-14);
      const double e = 1e-6;
      const auto bx = kuz::reference_basis(k, {p.x + e, p.y});
      const auto bxm = kuz::reference_basis(k, {p.x - e, p.y});
      const auto by = kuz::reference_basis(k, {p.x, p.y + e});
      const auto bym = kuz::reference_basis(k, {p.x, p.y - e});
      for (std::size_t i = 0; i < b.values.size(); ++i) {
        EXPECT_NEAR(b.gradients[i].x, (bx.values[i] - bxm.values[i]) / (2 * e), 1e-8);
        EXPECT_NEAR(b.gradients[i].y, (by.values[i] - bym.values[i]) / (2 * e), 1e-8);
      }
    }
  }
}

TEST(Basis, MatchesMultiIndexConstruction) {
  // reference triangle: lambda_0 = 1 - x - y, lambda_1 = x, lambda_2 = y
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int k = 1; k <= 3; ++k) {
    const auto nodes = kuz::reference_nodes(k);
    for (int trial = 0; trial < 10; ++trial) {
      const kuz::Point2 p{u(rng), u(rng)};
      const auto b = kuz::reference_basis(k, p);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const oracle::Exp alpha{static_cast<int>(std::lround(k * (1 - nodes[i].x - nodes[i].y))),
                                static_cast<int>(std::lround(k * nodes[i].x)),
                                static_cast<int>(std::lround(k * nodes[i].y))};
        EXPECT_NEAR(b.values[i], oracle::lagrange(k, alpha).at({1 - p.x - p.y, p.x, p.y}), 1e-14);
      }
    }
  }
}

TEST(Basis, RejectsUnsupportedDegree) {
  EXPECT_THROW(kuz::reference_basis(0, {0, 0}), kuz::ConfigError);
  EXPECT_THROW(kuz::reference_basis(4, {0, 0}), kuz::ConfigError);
}

}  // namespace
