#include "kuz/solvers.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <string>

#include "kuz/errors.hpp"

namespace kuz {

namespace {

constexpr double kDirectResidualTol = 1e-10;

double relative_residual(const SparseMatrix& a, std::span<const double> x,
                         std::span<const double> b, std::ptrdiff_t* worst_row = nullptr) {
  const std::vector<double> ax = a * x;
  double r2 = 0.0;
  double worst = -1.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const double r = std::abs(b[i] - ax[i]);
    r2 += r * r;
    if (worst_row != nullptr && !(r <= worst)) {
      worst = r;
      *worst_row = static_cast<std::ptrdiff_t>(i);
    }
  }
  const double nb = norm2(b);
  return std::sqrt(r2) / (nb > 0.0 ? nb : 1.0);
}

}  // namespace

struct LuFactorization::Impl {
  const SparseMatrix* a = nullptr;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

LuFactorization::LuFactorization(const SparseMatrix& a) : impl_(std::make_unique<Impl>()) {
  impl_->a = &a;
  const auto n = static_cast<Eigen::Index>(a.size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.nnz());
  const auto& rp = a.row_ptr();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int p = rp[i]; p < rp[i + 1]; ++p) trips.emplace_back(i, a.cols()[p], a.values()[p]);
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();

  impl_->lu.analyzePattern(m);
  impl_->lu.factorize(m);
  if (impl_->lu.info() != Eigen::Success) {
    const std::string msg = impl_->lu.lastErrorMessage();
    std::ptrdiff_t row = -1;
    if (const auto pos = msg.find_last_of(' '); pos != std::string::npos) {
      try {
        row = std::stol(msg.substr(pos + 1)) - 1;
      } catch (const std::exception&) {
      }
    }
    throw SolverError("solve_direct: zero pivot at row " + std::to_string(row) + " (" + msg + ")",
                      std::numeric_limits<double>::quiet_NaN(), row);
  }
}

LuFactorization::~LuFactorization() = default;
LuFactorization::LuFactorization(LuFactorization&&) noexcept = default;
LuFactorization& LuFactorization::operator=(LuFactorization&&) noexcept = default;

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const SparseMatrix& a = *impl_->a;
  const auto n = static_cast<Eigen::Index>(a.size());
  if (b.size() != a.size()) throw ConfigError("solve_direct: dimension mismatch");
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  const Eigen::VectorXd sol = impl_->lu.solve(rhs);
  std::vector<double> x(sol.data(), sol.data() + n);

  std::ptrdiff_t worst = -1;
  const double res = relative_residual(a, x, b, &worst);
  if (!(res <= kDirectResidualTol)) {
    throw SolverError("solve_direct: matrix singular to tolerance, residual " +
                          std::to_string(res) + " largest at row " + std::to_string(worst),
                      res, worst);
  }
  return x;
}

std::vector<double> solve_direct(const SparseMatrix& a, std::span<const double> b) {
  if (b.size() != a.size()) throw ConfigError("solve_direct: dimension mismatch");
  if (a.size() == 0) return {};
  return LuFactorization(a).solve(b);
}

IterativeResult solve_iterative(const SparseMatrix& a, std::span<const double> b,
                                std::span<const double> x0, double tol, int maxit) {
  const std::size_t n = a.size();
  if (b.size() != n || x0.size() != n) throw ConfigError("solve_iterative: dimension mismatch");

  IterativeResult out;
  const double nb = norm2(b);
  if (nb == 0.0) {
    out.x.assign(n, 0.0);
    return out;
  }

  std::vector<double> inv_diag = a.diagonal();
  for (double& d : inv_diag) d = d != 0.0 ? 1.0 / d : 1.0;

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> r(n), r_hat(n), p(n, 0.0), v(n, 0.0), s(n), t(n), y(n), z(n);
  a.multiply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  r_hat = r;

  double res = norm2(r) / nb;
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  int it = 0;
  while (res > tol && it < maxit) {
    const double rho_new = dot(r_hat, r);
    if (rho_new == 0.0 || omega == 0.0) break;
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    for (std::size_t i = 0; i < n; ++i) y[i] = inv_diag[i] * p[i];
    a.multiply(y, v);
    const double rv = dot(r_hat, v);
    if (rv == 0.0) break;
    alpha = rho / rv;
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    ++it;
    if (norm2(s) / nb <= tol) {
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha * y[i];
      r = s;
      res = norm2(r) / nb;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * s[i];
    a.multiply(z, t);
    const double tt = dot(t, t);
    omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * y[i] + omega * z[i];
      r[i] = s[i] - omega * t[i];
    }
    res = norm2(r) / nb;
  }

  // The recursive residual can drift from the true one; confirm.
  if (res <= tol) res = relative_residual(a, x, b);
  if (!(res <= tol)) {
    throw SolverError("solve_iterative: no convergence after " + std::to_string(it) +
                          " iterations, residual " + std::to_string(res),
                      res);
  }
  out.x = std::move(x);
  out.iterations = it;
  out.residual = res;
  return out;
}

std::vector<double> solve(const SparseMatrix& a, std::span<const double> b,
                          std::span<const double> x0, const SolverOptions& opts,
                          SolveStats* stats) {
  if (opts.kind == SolverKind::kDirect) {
    if (stats != nullptr) *stats = {};
    return solve_direct(a, b);
  }
  try {
    auto r = solve_iterative(a, b, x0, opts.tol, opts.maxit);
    if (stats != nullptr) *stats = {r.iterations, false};
    return std::move(r.x);
  } catch (const SolverError&) {
    if (stats != nullptr) *stats = {opts.maxit, true};
    return solve_direct(a, b);
  }
}

}  // namespace kuz
