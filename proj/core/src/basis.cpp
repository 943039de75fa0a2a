#include "kuz/basis.hpp"

#include <array>
#include <string>

#include "kuz/errors.hpp"

namespace kuz {

namespace {

constexpr std::array<std::array<int, 2>, 3> kEdges = {{{0, 1}, {1, 2}, {2, 0}}};
constexpr std::array<Vec2, 3> kDLambda = {{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};

void check_degree(int k) {
  if (k < 1 || k > 3) {
    throw ConfigError("Lagrange degree must be 1, 2 or 3 (got " + std::to_string(k) + ")");
  }
}

}  // namespace

std::vector<Point2> reference_nodes(int k) {
  check_degree(k);
  const std::array<Point2, 3> vtx = {{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};
  std::vector<Point2> nodes(vtx.begin(), vtx.end());
  for (const auto& [a, b] : kEdges) {
    for (int s = 1; s < k; ++s) {
      const double t = static_cast<double>(s) / k;
      nodes.push_back({(1.0 - t) * vtx[a].x + t * vtx[b].x, (1.0 - t) * vtx[a].y + t * vtx[b].y});
    }
  }
  if (k == 3) nodes.push_back({1.0 / 3.0, 1.0 / 3.0});
  return nodes;
}

void reference_basis(int k, Point2 p, std::span<double> values, std::span<Vec2> gradients) {
  check_degree(k);
  const std::array<double, 3> lam = {1.0 - p.x - p.y, p.x, p.y};
  const auto& dl = kDLambda;

  switch (k) {
    case 1:
      for (int i = 0; i < 3; ++i) {
        values[i] = lam[i];
        gradients[i] = dl[i];
      }
      break;
    case 2:
      for (int i = 0; i < 3; ++i) {
        values[i] = lam[i] * (2.0 * lam[i] - 1.0);
        gradients[i] = (4.0 * lam[i] - 1.0) * dl[i];
      }
      for (int e = 0; e < 3; ++e) {
        const auto [a, b] = kEdges[e];
        values[3 + e] = 4.0 * lam[a] * lam[b];
        gradients[3 + e] = 4.0 * (lam[b] * dl[a] + lam[a] * dl[b]);
      }
      break;
    case 3: {
      for (int i = 0; i < 3; ++i) {
        const double l = lam[i];
        values[i] = 0.5 * l * (3.0 * l - 1.0) * (3.0 * l - 2.0);
        gradients[i] = (0.5 * (27.0 * l * l - 18.0 * l + 2.0)) * dl[i];
      }
      for (int e = 0; e < 3; ++e) {
        const auto [a, b] = kEdges[e];
        // Node at 2/3 a + 1/3 b, then at 1/3 a + 2/3 b.
        for (int s = 0; s < 2; ++s) {
          const int near = s == 0 ? a : b;
          const int far = s == 0 ? b : a;
          const double ln = lam[near];
          const double lf = lam[far];
          values[3 + 2 * e + s] = 4.5 * ln * lf * (3.0 * ln - 1.0);
          gradients[3 + 2 * e + s] =
              4.5 * (6.0 * ln * lf - lf) * dl[near] + 4.5 * (3.0 * ln * ln - ln) * dl[far];
        }
      }
      values[9] = 27.0 * lam[0] * lam[1] * lam[2];
      gradients[9] = 27.0 * (lam[1] * lam[2] * dl[0] + lam[0] * lam[2] * dl[1] +
                             lam[0] * lam[1] * dl[2]);
      break;
    }
  }
}

BasisEval reference_basis(int k, Point2 p) {
  check_degree(k);
  BasisEval out;
  out.values.resize(num_local_dofs(k));
  out.gradients.resize(num_local_dofs(k));
  reference_basis(k, p, out.values, out.gradients);
  return out;
}

}  // namespace kuz
