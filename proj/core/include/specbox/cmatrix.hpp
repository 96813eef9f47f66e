#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "specbox/errors.hpp"

namespace specbox {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major, possibly rectangular. The arena for all
/// finite-section arithmetic; sizes stay at desk scale so storage is always
/// dense even when the content is banded.
class CMatrix {
public:
  CMatrix() : rows_(0), cols_(0) {}
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  /// Builds from row-major entries; rejects NaN/Inf and size mismatches.
  static CMatrix from_rows(std::size_t rows, std::size_t cols,
                           std::vector<Complex> entries);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<Complex>& data() const { return data_; }

  bool is_square() const { return rows_ == cols_; }

  double frobenius_norm() const;

  /// max_ij |a_ij - b_ij|; matrices must have equal shape.
  static double max_abs_diff(const CMatrix& a, const CMatrix& b);

  /// Frobenius norm of a - b; matrices must have equal shape.
  static double frobenius_dist(const CMatrix& a, const CMatrix& b);

  bool all_finite() const;

  friend bool operator==(const CMatrix& a, const CMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

}  // namespace specbox
