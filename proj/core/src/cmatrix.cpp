#include "specbox/cmatrix.hpp"

#include <cmath>
#include <utility>

namespace specbox {

CMatrix CMatrix::from_rows(std::size_t rows, std::size_t cols,
                           std::vector<Complex> entries) {
  if (entries.size() != rows * cols) {
    throw InvalidArgument("entry count does not match rows*cols");
  }
  CMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(entries);
  if (!m.all_finite()) {
    throw InvalidArgument("matrix entries must be finite");
  }
  return m;
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw InvalidArgument("shape mismatch in max_abs_diff");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    m = std::max(m, std::abs(a.data_[i] - b.data_[i]));
  }
  return m;
}

double CMatrix::frobenius_dist(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw InvalidArgument("shape mismatch in frobenius_dist");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    s += std::norm(a.data_[i] - b.data_[i]);
  }
  return std::sqrt(s);
}

bool CMatrix::all_finite() const {
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace specbox
