#include "kuz/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kuz/errors.hpp"

namespace kuz {

SparseMatrix::SparseMatrix(std::size_t n, std::vector<int> row_ptr, std::vector<int> cols,
                           std::vector<double> values)
    : n_(n), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), values_(std::move(values)) {
  if (row_ptr_.size() != n_ + 1 || cols_.size() != values_.size() ||
      static_cast<std::size_t>(row_ptr_.back()) != cols_.size()) {
    throw ConfigError("SparseMatrix: inconsistent CSR arrays");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      if (cols_[p] < 0 || static_cast<std::size_t>(cols_[p]) >= n_ ||
          (p > row_ptr_[i] && cols_[p] <= cols_[p - 1])) {
        throw ConfigError("SparseMatrix: column indices must be in range and increasing");
      }
    }
  }
}

SparseMatrix SparseMatrix::from_triplets(std::size_t n, std::vector<Triplet> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<int> row_ptr(n + 1, 0);
  std::vector<int> cols;
  std::vector<double> values;
  cols.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t p = 0; p < triplets.size();) {
    const Triplet t = triplets[p];
    if (t.row < 0 || t.col < 0 || static_cast<std::size_t>(t.row) >= n ||
        static_cast<std::size_t>(t.col) >= n) {
      throw ConfigError("SparseMatrix: triplet index out of range");
    }
    double sum = 0.0;
    for (; p < triplets.size() && triplets[p].row == t.row && triplets[p].col == t.col; ++p) {
      sum += triplets[p].value;
    }
    cols.push_back(t.col);
    values.push_back(sum);
    ++row_ptr[t.row + 1];
  }
  for (std::size_t i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
  return SparseMatrix(n, std::move(row_ptr), std::move(cols), std::move(values));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<int> row_ptr(n + 1);
  std::vector<int> cols(n);
  for (std::size_t i = 0; i < n; ++i) {
    row_ptr[i + 1] = static_cast<int>(i + 1);
    cols[i] = static_cast<int>(i);
  }
  return SparseMatrix(n, std::move(row_ptr), std::move(cols), std::vector<double>(n, 1.0));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = cols_.begin() + row_ptr_[i];
  const auto last = cols_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(first, last, static_cast<int>(j));
  return it != last && *it == static_cast<int>(j) ? values_[it - cols_.begin()] : 0.0;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += values_[p] * x[cols_[p]];
    y[i] = s;
  }
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = at(i, i);
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t i = 0; i < n_; ++i) {
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      t.push_back({cols_[p], static_cast<int>(i), values_[p]});
    }
  }
  return from_triplets(n_, std::move(t));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace kuz
