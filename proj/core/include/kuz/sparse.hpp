#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kuz {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Square matrix in compressed sparse row form. Column indices are strictly
/// increasing within each row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t n, std::vector<int> row_ptr, std::vector<int> cols,
               std::vector<double> values);

  /// Compress a coordinate buffer. Duplicates are summed in their original
  /// buffer order (stable sort), so the result is bit-reproducible.
  static SparseMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets);
  static SparseMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t nnz() const { return values_.size(); }
  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& cols() const { return cols_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Entry (i, j); zero when not stored.
  double at(std::size_t i, std::size_t j) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;

  std::vector<double> diagonal() const;
  SparseMatrix transpose() const;

 private:
  std::size_t n_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
};

/// Inner product and Euclidean norm, accumulated in index order.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace kuz
