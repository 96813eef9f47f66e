#pragma once

#include <vector>

#include "specbox/cmatrix.hpp"

namespace specbox {

/// Tolerances for the dense kernels; every entry point takes them, and the
/// CLI exposes them as flags.
struct LinalgTols {
  /// Entrywise tolerance for the Hermitian symmetry check.
  double hermitian_tol = 1e-12;
  /// LDL^T pivots within pivot_rel_tol * max|diag| of zero count as zero.
  double pivot_rel_tol = 1e-13;
  /// Bisection tolerance for singular values, on the squared scale.
  double sv_tol = 1e-12;
};

/// Max allowed entrywise deviation |M - M'| for a matrix to pass as Hermitian.
struct HermitianCheck {
  double tolerance = 1e-12;
};

CMatrix conj_transpose(const CMatrix& m);

/// m' * m, symmetrized as (G + G')/2 to kill rounding drift before any
/// eigen/pivot routine consumes it.
CMatrix gram(const CMatrix& m);

/// True iff h - shift*I is positive semidefinite, decided by an LDL^T
/// factorization with diagonal-pivot sign inspection. A pivot within
/// tolerance of zero counts as nonnegative provided the rest of its column
/// vanishes at the matching scale (a PSD matrix with a zero diagonal entry
/// has a zero column).
bool is_psd(const CMatrix& h, double shift, const LinalgTols& tols = {},
            const HermitianCheck& check = {});

/// Strict variant: true iff h - shift*I is positive definite (all pivots
/// clear the zero band).
bool is_pd(const CMatrix& h, double shift, const LinalgTols& tols = {},
           const HermitianCheck& check = {});

/// s_min(m) = sqrt(min eig of gram(m)), computed by bisection on the shift in
/// the LDL^T test over [0, frobenius_norm(m)^2] (squared scale).
double smallest_singular_value(const CMatrix& m, const LinalgTols& tols = {});

/// Largest singular value, via the Hermitian eigenvalues of gram(m).
double spectral_norm(const CMatrix& m);

/// mu(m) = nu(m) = s_min(m) for square m.
double mu_square(const CMatrix& m, const LinalgTols& tols = {});

/// All eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi
/// rotations (tridiagonalization-free).
std::vector<double> hermitian_eigenvalues(const CMatrix& h,
                                          const HermitianCheck& check = {});

/// Eigenvalues with multiplicity of a small square matrix (rows <= 16),
/// via Faddeev-LeVerrier characteristic-polynomial coefficients and
/// Aberth-Ehrlich simultaneous root refinement.
std::vector<Complex> complex_eigenvalues_small(const CMatrix& m,
                                               std::size_t max_iters = 500);

/// Monic characteristic polynomial coefficients c[0..p-1] of a p x p matrix:
/// det(lambda I - m) = lambda^p + c[0] lambda^{p-1} + ... + c[p-1].
std::vector<Complex> char_poly(const CMatrix& m);

/// Precomputed quadratic expansion of gram(B - lambda*J) in lambda, where J
/// is I_n for square sections or I_n^+ for (n+2)-row rectangular sections:
///   gram(B - lambda J) = G0 - lambda*M' - conj(lambda)*M + |lambda|^2 I,
/// with G0 = B'B and M = J'B (the middle rows of B). Everything is stored
/// band-limited, so one lower-norm query costs a single banded assembly plus
/// banded LDL^T factorizations; sweeps over many lambda stay cheap.
class ShiftKernel {
public:
  /// rect: J = I^+ with block_dim leading/trailing zero rows; otherwise
  /// J = I and b must be square.
  ShiftKernel(const CMatrix& b, std::size_t block_dim, bool rect);

  /// s_min(B - lambda J) by bisection (squared-scale tolerance sv_tol).
  double nu(Complex lambda, const LinalgTols& tols = {}) const;

  /// True iff s_min(B - lambda J) > eps, by one strict LDL^T test on
  /// gram - eps^2 I. Exact on the closed-set boundary up to pivot_rel_tol.
  bool nu_greater(Complex lambda, double eps, const LinalgTols& tols = {}) const;

  std::size_t cols() const { return n_; }

private:
  void assemble(Complex lambda, std::vector<Complex>& band) const;

  std::size_t n_ = 0;  // columns
  std::size_t w_ = 0;  // gram band width (scalar index distance)
  std::size_t wm_ = 0; // band width of the middle block M
  std::vector<Complex> g0_;    // (w+1) x n lower band of G0
  std::vector<Complex> mid_lo_; // (wm+1) x n lower band of M
  std::vector<Complex> mid_up_; // (wm+1) x n upper band of M: mid_up_[d][j] = M(j, j+d)
};

}  // namespace specbox
