// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blebsim Authors

#include "blebsim/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bleb {

SparseMatrix::SparseMatrix(std::size_t n, std::vector<std::size_t> row_ptr,
                           std::vector<std::size_t> cols)
    : n_(n), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), values_(cols_.size(), 0.0) {
  if (row_ptr_.size() != n_ + 1 || row_ptr_.back() != cols_.size()) {
    throw std::invalid_argument("SparseMatrix: inconsistent row pointer");
  }
}

std::size_t SparseMatrix::find(std::size_t i, std::size_t j) const {
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) {
    throw std::out_of_range("SparseMatrix: entry (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") not in pattern");
  }
  return static_cast<std::size_t>(it - cols_.begin());
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += values_[k] * x[cols_[k]];
    y[i] = acc;
  }
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) d[i] = at(i, i);
  return d;
}

std::vector<double> SparseMatrix::row_sums() const {
  std::vector<double> s(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s[i] += values_[k];
  }
  return s;
}

double SparseMatrix::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

double SparseMatrix::quadratic_form(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += values_[k] * x[cols_[k]];
    s += x[i] * acc;
  }
  return s;
}

bool SparseMatrix::same_pattern(const SparseMatrix& other) const {
  return n_ == other.n_ && row_ptr_ == other.row_ptr_ && cols_ == other.cols_;
}

void SparseMatrix::add_scaled(const SparseMatrix& other, double s) {
  if (!same_pattern(other)) throw std::invalid_argument("SparseMatrix::add_scaled: pattern mismatch");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += s * other.values_[k];
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) d[i * n_ + cols_[k]] = values_[k];
  }
  return d;
}

SparseMatrix combine(std::span<const SparseMatrix* const> mats, std::span<const double> coeff) {
  if (mats.empty() || mats.size() != coeff.size()) {
    throw std::invalid_argument("combine: need one coefficient per matrix");
  }
  SparseMatrix out = *mats[0];
  for (double& v : out.values()) v *= coeff[0];
  for (std::size_t k = 1; k < mats.size(); ++k) out.add_scaled(*mats[k], coeff[k]);
  return out;
}

}  // namespace bleb
