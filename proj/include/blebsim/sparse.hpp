// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bleb {

/// Square scalar matrix in compressed-sparse-row storage. Column indices are
/// sorted within each row. Matrices assembled on the same mesh share one
/// sparsity pattern, which lets them be combined entry-wise.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<std::size_t> cols);

  std::size_t size() const { return n_; }
  std::size_t nnz() const { return cols_.size(); }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::size_t> cols() const { return cols_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  // Position of (i, j) in values(); the entry must be in the pattern.
  std::size_t find(std::size_t i, std::size_t j) const;
  double at(std::size_t i, std::size_t j) const;
  void add(std::size_t i, std::size_t j, double v) { values_[find(i, j)] += v; }

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  std::vector<double> diagonal() const;
  std::vector<double> row_sums() const;
  double sum() const;
  double quadratic_form(std::span<const double> x) const;

  // this += s * other; patterns must match.
  void add_scaled(const SparseMatrix& other, double s);
  bool same_pattern(const SparseMatrix& other) const;

  // Dense row-major copy, for small test systems.
  std::vector<double> to_dense() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

// Linear combination sum_k coeff[k] * mats[k] on a shared pattern.
SparseMatrix combine(std::span<const SparseMatrix* const> mats, std::span<const double> coeff);

}  // namespace bleb
