// Independent reference computations for the unit tests: exact integration of
// polynomials in barycentric coordinates, Lagrange bases built from node
// multi-indices, and dense Gaussian elimination.

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "kuz/fe_space.hpp"
#include "kuz/geometry.hpp"
#include "kuz/sparse.hpp"

namespace oracle {

using Exp = std::array<int, 3>;

/// Polynomial in the barycentric coordinates (l0, l1, l2) of one triangle.
struct Poly {
  std::map<Exp, double> c;

  static Poly constant(double a) {
    Poly p;
    p.c[{0, 0, 0}] = a;
    return p;
  }
  static Poly lambda(int a) {
    Poly p;
    Exp e{0, 0, 0};
    e[a] = 1;
    p.c[e] = 1.0;
    return p;
  }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, v] : o.c) r.c[e] += v;
    return r;
  }
  Poly operator*(const Poly& o) const {
    Poly r;
    for (const auto& [e1, v1] : c) {
      for (const auto& [e2, v2] : o.c) {
        r.c[{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}] += v1 * v2;
      }
    }
    return r;
  }
  Poly operator*(double s) const {
    Poly r = *this;
    for (auto& [e, v] : r.c) v *= s;
    return r;
  }
  /// Partial derivative with respect to l_a, treating the l's as independent.
  Poly d(int a) const {
    Poly r;
    for (const auto& [e, v] : c) {
      if (e[a] == 0) continue;
      Exp f = e;
      --f[a];
      r.c[f] += v * e[a];
    }
    return r;
  }
  double at(std::array<double, 3> l) const {
    double s = 0.0;
    for (const auto& [e, v] : c) s += v * std::pow(l[0], e[0]) * std::pow(l[1], e[1]) * std::pow(l[2], e[2]);
    return s;
  }
};

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// int_T l0^a l1^b l2^c = 2 |T| a! b! c! / (a + b + c + 2)!
inline double integrate(const Poly& p, double area) {
  double s = 0.0;
  for (const auto& [e, v] : p.c) {
    s += v * 2.0 * area * factorial(e[0]) * factorial(e[1]) * factorial(e[2]) /
         factorial(e[0] + e[1] + e[2] + 2);
  }
  return s;
}

/// Physical triangle with its barycentric machinery.
struct Tri {
  std::array<kuz::Point2, 3> v;

  double area() const {
    return 0.5 * ((v[1].x - v[0].x) * (v[2].y - v[0].y) - (v[2].x - v[0].x) * (v[1].y - v[0].y));
  }
  /// Constant gradient of l_a.
  kuz::Vec2 grad_lambda(int a) const {
    const kuz::Point2& p = v[(a + 1) % 3];
    const kuz::Point2& q = v[(a + 2) % 3];
    const double s = 1.0 / (2.0 * area());
    return {(p.y - q.y) * s, (q.x - p.x) * s};
  }
  std::array<double, 3> bary(kuz::Point2 x) const {
    std::array<double, 3> l{};
    for (int a = 0; a < 3; ++a) {
      const kuz::Vec2 g = grad_lambda(a);
      const kuz::Point2& p = v[(a + 1) % 3];
      l[a] = g.x * (x.x - p.x) + g.y * (x.y - p.y);
    }
    return l;
  }
  /// x and y as barycentric polynomials.
  Poly coord(int axis) const {
    Poly p;
    for (int a = 0; a < 3; ++a) p = p + Poly::lambda(a) * (axis == 0 ? v[a].x : v[a].y);
    return p;
  }
  /// grad p . grad q integrated over the triangle.
  double grad_dot(const Poly& p, const Poly& q, const Poly& weight = Poly::constant(1.0)) const {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const kuz::Vec2 ga = grad_lambda(a);
        const kuz::Vec2 gb = grad_lambda(b);
        s += (ga.x * gb.x + ga.y * gb.y) * integrate(p.d(a) * q.d(b) * weight, area());
      }
    }
    return s;
  }
};

/// Lagrange basis function of degree k for the node with barycentric
/// multi-index alpha (alpha_0 + alpha_1 + alpha_2 = k).
inline Poly lagrange(int k, Exp alpha) {
  Poly p = Poly::constant(1.0);
  for (int a = 0; a < 3; ++a) {
    for (int m = 0; m < alpha[a]; ++m) {
      p = p * ((Poly::lambda(a) * double(k) + Poly::constant(-double(m))) * (1.0 / (m + 1)));
    }
  }
  return p;
}

/// For every cell of `s`: the oracle basis polynomial of each global DOF of
/// the cell, matched through DOF coordinates.
struct CellBasis {
  Tri tri;
  std::vector<int> dofs;
  std::vector<Poly> phi;
};

inline std::vector<CellBasis> cell_bases(const kuz::FeSpace& s) {
  const int k = s.degree();
  std::vector<CellBasis> out;
  for (std::size_t c = 0; c < s.num_cells(); ++c) {
    CellBasis cb;
    const auto& t = s.mesh().triangles()[c];
    for (int a = 0; a < 3; ++a) cb.tri.v[a] = s.mesh().vertices()[t[a]];
    for (int dof : s.cell_dofs(c)) {
      const auto l = cb.tri.bary(s.dof_coords()[dof]);
      Exp alpha{};
      int sum = 0;
      for (int a = 0; a < 3; ++a) {
        alpha[a] = static_cast<int>(std::lround(l[a] * k));
        sum += alpha[a];
        if (std::abs(l[a] * k - alpha[a]) > 1e-9) throw std::logic_error("DOF is not a lattice node");
      }
      if (sum != k) throw std::logic_error("DOF outside cell");
      cb.dofs.push_back(dof);
      cb.phi.push_back(lagrange(k, alpha));
    }
    out.push_back(std::move(cb));
  }
  return out;
}

using Dense = std::vector<std::vector<double>>;

inline Dense zeros(std::size_t n) { return Dense(n, std::vector<double>(n, 0.0)); }

inline Dense to_dense(const kuz::SparseMatrix& a) {
  Dense d = zeros(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) d[i][a.cols()[p]] += a.values()[p];
  }
  return d;
}

/// Field w = sum_j coeffs[dofs[j]] phi_j on one cell.
inline Poly field(const CellBasis& cb, const std::vector<double>& coeffs) {
  Poly p;
  for (std::size_t j = 0; j < cb.dofs.size(); ++j) p = p + cb.phi[j] * coeffs[cb.dofs[j]];
  return p;
}

/// Full-space oracle matrices.
inline Dense mass(const kuz::FeSpace& s) {
  Dense m = zeros(s.num_dofs());
  for (const auto& cb : cell_bases(s)) {
    for (std::size_t i = 0; i < cb.dofs.size(); ++i)
      for (std::size_t j = 0; j < cb.dofs.size(); ++j)
        m[cb.dofs[i]][cb.dofs[j]] += integrate(cb.phi[i] * cb.phi[j], cb.tri.area());
  }
  return m;
}

inline Dense weighted_mass(const kuz::FeSpace& s, const std::vector<double>& w, double a, double b) {
  Dense m = zeros(s.num_dofs());
  for (const auto& cb : cell_bases(s)) {
    const Poly weight = Poly::constant(a) + field(cb, w) * b;
    for (std::size_t i = 0; i < cb.dofs.size(); ++i)
      for (std::size_t j = 0; j < cb.dofs.size(); ++j)
        m[cb.dofs[i]][cb.dofs[j]] += integrate(weight * cb.phi[i] * cb.phi[j], cb.tri.area());
  }
  return m;
}

inline Dense stiffness(const kuz::FeSpace& s) {
  Dense m = zeros(s.num_dofs());
  for (const auto& cb : cell_bases(s)) {
    for (std::size_t i = 0; i < cb.dofs.size(); ++i)
      for (std::size_t j = 0; j < cb.dofs.size(); ++j)
        m[cb.dofs[i]][cb.dofs[j]] += cb.tri.grad_dot(cb.phi[i], cb.phi[j]);
  }
  return m;
}

/// C_ij = int (grad w . grad phi_j) phi_i.
inline Dense convection(const kuz::FeSpace& s, const std::vector<double>& w) {
  Dense m = zeros(s.num_dofs());
  for (const auto& cb : cell_bases(s)) {
    const Poly wf = field(cb, w);
    for (std::size_t i = 0; i < cb.dofs.size(); ++i)
      for (std::size_t j = 0; j < cb.dofs.size(); ++j)
        m[cb.dofs[i]][cb.dofs[j]] += cb.tri.grad_dot(wf, cb.phi[j], cb.phi[i]);
  }
  return m;
}

/// Rows/columns of the free DOFs.
inline Dense restrict_free(const kuz::FeSpace& s, const Dense& full) {
  const auto& free = s.free_dofs();
  Dense r = zeros(free.size());
  for (std::size_t i = 0; i < free.size(); ++i)
    for (std::size_t j = 0; j < free.size(); ++j) r[i][j] = full[free[i]][free[j]];
  return r;
}

inline std::vector<double> matvec(const Dense& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

/// Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(Dense a, std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace oracle
