#pragma once

#include <memory>
#include <span>
#include <vector>

#include "kuz/sparse.hpp"

namespace kuz {

/// Sparse LU factorization kept for repeated solves with the same matrix.
/// `a` must outlive the factorization (it is used for residual checks).
class LuFactorization {
 public:
  /// Throws SolverError when a zero pivot is met; the error names the row.
  explicit LuFactorization(const SparseMatrix& a);
  ~LuFactorization();
  LuFactorization(LuFactorization&&) noexcept;
  LuFactorization& operator=(LuFactorization&&) noexcept;

  /// Throws SolverError when the relative residual exceeds 1e-10.
  std::vector<double> solve(std::span<const double> b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Sparse LU solve. Throws SolverError when the factorization breaks down or
/// the relative residual of the result exceeds 1e-10 (singular to tolerance);
/// the error names the offending row.
std::vector<double> solve_direct(const SparseMatrix& a, std::span<const double> b);

struct IterativeResult {
  std::vector<double> x;
  int iterations = 0;
  double residual = 0.0;  // relative, ||b - A x|| / ||b||
};

/// Jacobi-preconditioned BiCGStab. Throws SolverError carrying the last
/// relative residual if `tol` is not reached within `maxit` iterations.
IterativeResult solve_iterative(const SparseMatrix& a, std::span<const double> b,
                                std::span<const double> x0, double tol, int maxit);

enum class SolverKind { kDirect, kIterative };

struct SolverOptions {
  SolverKind kind = SolverKind::kIterative;
  double tol = 1e-10;
  int maxit = 2000;
};

struct SolveStats {
  int iterations = 0;
  bool fell_back = false;
};

/// Dispatch on `opts.kind`; iterative solves fall back to the direct solver
/// on non-convergence.
std::vector<double> solve(const SparseMatrix& a, std::span<const double> b,
                          std::span<const double> x0, const SolverOptions& opts,
                          SolveStats* stats = nullptr);

}  // namespace kuz
