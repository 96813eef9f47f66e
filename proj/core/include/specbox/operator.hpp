#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "specbox/cmatrix.hpp"

namespace specbox {

enum class GenKind { Constant, Periodic, Window, Sampled };

/// One diagonal of a tridiagonal bi-infinite operator: a rule assigning a
/// p x p complex block (p = 1 for scalar entries) to every integer index.
/// Sampled generators are only defined on their declared range and refuse
/// extraction outside it; silent extension would corrupt the inclusion
/// guarantees.
class DiagonalGen {
public:
  static DiagonalGen constant(CMatrix value);
  static DiagonalGen periodic(std::vector<CMatrix> values);
  static DiagonalGen window(std::map<std::int64_t, CMatrix> entries,
                            CMatrix default_value);
  static DiagonalGen sampled(std::vector<CMatrix> values, std::int64_t start);

  GenKind kind() const { return kind_; }
  std::size_t block_dim() const { return block_dim_; }
  std::size_t period() const { return values_.size(); }
  std::int64_t start() const { return start_; }
  const std::vector<CMatrix>& values() const { return values_; }
  const std::map<std::int64_t, CMatrix>& entries() const { return entries_; }
  const CMatrix& default_value() const { return default_; }

  /// Value at absolute index j.
  const CMatrix& at(std::int64_t j) const;

  /// True unless indices [lo, hi] fall outside a Sampled range.
  bool covers(std::int64_t lo, std::int64_t hi) const;

  /// Exact sup of the block spectral norms over all representable values.
  double max_norm() const;

  /// Generator for j -> conj_transpose(this->at(j + shift)).
  DiagonalGen shifted_adjoint(std::int64_t shift) const;

private:
  DiagonalGen() = default;

  GenKind kind_ = GenKind::Constant;
  std::size_t block_dim_ = 1;
  std::vector<CMatrix> values_;              // Periodic list or Sampled list
  std::map<std::int64_t, CMatrix> entries_;  // Window
  CMatrix default_;                          // Window default
  std::int64_t start_ = 0;                   // Sampled start index
};

/// Symbolic tridiagonal bi-infinite operator. alpha is the subdiagonal
/// (a_{j+1,j}), beta the main diagonal (a_{j,j}), gamma the superdiagonal
/// (a_{j-1,j}). Norm bounds are computed exactly from the generators and may
/// be overridden upward by the caller (they act as the oracle for sup norms).
class OperatorSpec {
public:
  OperatorSpec(DiagonalGen alpha, DiagonalGen beta, DiagonalGen gamma,
               std::optional<double> alpha_max = std::nullopt,
               std::optional<double> beta_max = std::nullopt,
               std::optional<double> gamma_max = std::nullopt);

  const DiagonalGen& alpha() const { return alpha_; }
  const DiagonalGen& beta() const { return beta_; }
  const DiagonalGen& gamma() const { return gamma_; }

  std::size_t block_dim() const { return block_dim_; }
  double alpha_max() const { return alpha_max_; }
  double beta_max() const { return beta_max_; }
  double gamma_max() const { return gamma_max_; }

  /// r(A) = sup|alpha| + sup|gamma|.
  double r() const { return alpha_max_ + gamma_max_; }
  /// Upper bound R for ||A||.
  double norm_bound() const { return alpha_max_ + beta_max_ + gamma_max_; }

  /// Throws IndexOutsideRange if a Sampled diagonal does not cover [lo, hi].
  void require_window(std::int64_t lo, std::int64_t hi) const;

private:
  DiagonalGen alpha_, beta_, gamma_;
  std::size_t block_dim_;
  double alpha_max_, beta_max_, gamma_max_;
};

enum class SubmatrixShape { Square, Periodised, Rect };

struct Submatrix {
  CMatrix matrix;
  std::int64_t origin_k = 0;
  SubmatrixShape shape = SubmatrixShape::Square;
  Complex t = Complex(1.0, 0.0);  // Periodised corner factor
};

/// n x n principal section with rows/columns k+1 .. k+n.
Submatrix extract_square(const OperatorSpec& op, std::size_t n, std::int64_t k);

/// Square section plus circulant corners t*alpha_k at (1,n) and
/// conj(t)*gamma_{k+n+1} at (n,1); for n = 1 both corner terms add onto the
/// single entry.
Submatrix extract_periodised(const OperatorSpec& op, std::size_t n,
                             std::int64_t k, Complex t);

/// (n+2) x n one-sided section: row of gamma_{k+1}, the square section, row
/// of alpha_{k+n}.
Submatrix extract_rect(const OperatorSpec& op, std::size_t n, std::int64_t k);

/// extract_rect minus lambda * I_n^+ (identity in the middle n block rows).
CMatrix rect_shifted(const OperatorSpec& op, std::size_t n, std::int64_t k,
                     Complex lambda);

/// The (n+2)p x np matrix I_n^+ pattern applied to an arbitrary rect section:
/// b - lambda * I_n^+.
CMatrix rect_shift_matrix(const CMatrix& b, std::size_t block_dim,
                          Complex lambda);

/// Hilbert-space adjoint: swaps the roles of alpha and gamma with an index
/// shift so that extract_* of the result are the conjugate transposes of the
/// corresponding sections of op. Norm bounds swap accordingly.
OperatorSpec adjoint(const OperatorSpec& op);

/// Explicit band matrix a_{i,j} (|i-j| <= width) described by one generator
/// per diagonal: diags[d + width] gives a_{j+d, j} indexed by column j.
struct BandSpec {
  std::size_t width = 1;
  std::vector<DiagonalGen> diags;  // size 2*width + 1

  std::size_t block_dim() const { return diags.empty() ? 1 : diags.front().block_dim(); }
  /// a_{i,j}; zero block outside the band.
  CMatrix entry(std::int64_t i, std::int64_t j) const;
};

/// Blocking reduction: groups b consecutive indices so the band matrix
/// becomes tridiagonal with b*q-dimensional blocks (q the input block dim).
/// Requires b >= width.
OperatorSpec block_reduce(const BandSpec& banded, std::size_t b);

}  // namespace specbox
