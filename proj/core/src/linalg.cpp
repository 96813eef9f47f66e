#include "specbox/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace specbox {

namespace {

enum class Definiteness { Indefinite, Semi, Definite };

/// LDL^T sign classification of (H - shift*I) given in lower-band storage
/// band[d*n + j] = H(j+d, j), d = 0..w. Destroys the buffer. A pivot within
/// tol of zero is accepted as zero only if the rest of its column vanishes
/// at the matching scale.
Definiteness ldl_classify_band(std::vector<Complex>& band, std::size_t n,
                               std::size_t w, double shift,
                               double pivot_rel_tol) {
  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    scale = std::max(scale, std::abs(band[j].real() - shift));
  }
  const double tol = pivot_rel_tol * scale;
  const double col_tol = std::sqrt(tol * scale);
  bool singular = false;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = band[j].real() - shift;
    if (d < -tol) return Definiteness::Indefinite;
    const std::size_t reach = std::min(w, n - 1 - j);
    if (d <= tol) {
      for (std::size_t r = 1; r <= reach; ++r) {
        if (std::abs(band[r * n + j]) > col_tol) return Definiteness::Indefinite;
      }
      singular = true;
      continue;
    }
    for (std::size_t c = 1; c <= reach; ++c) {
      const Complex ljc = std::conj(band[c * n + j] / d);
      for (std::size_t r = c; r <= reach; ++r) {
        band[(r - c) * n + (j + c)] -= band[r * n + j] * ljc;
      }
    }
  }
  return singular ? Definiteness::Semi : Definiteness::Definite;
}

/// Effective lower band width of a Hermitian dense matrix.
std::size_t dense_bandwidth(const CMatrix& h) {
  const std::size_t n = h.rows();
  std::size_t w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + w < i; ++j) {
      if (h(i, j) != Complex(0.0, 0.0)) w = i - j;
    }
  }
  return w;
}

void dense_to_band(const CMatrix& h, std::size_t w, std::vector<Complex>& band) {
  const std::size_t n = h.rows();
  band.assign((w + 1) * n, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t d = 0; d <= std::min(w, n - 1 - j); ++d) {
      band[d * n + j] = h(j + d, j);
    }
  }
}

void require_hermitian(const CMatrix& h, double tol) {
  if (!h.is_square()) throw NotHermitian("matrix is not square");
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (std::abs(h(i, j) - std::conj(h(j, i))) > tol) {
        throw NotHermitian("symmetry check failed");
      }
    }
  }
}

Definiteness classify_dense(const CMatrix& h, double shift,
                            double pivot_rel_tol) {
  std::vector<Complex> band;
  const std::size_t w = dense_bandwidth(h);
  dense_to_band(h, w, band);
  return ldl_classify_band(band, h.rows(), w, shift, pivot_rel_tol);
}

/// Bisection for the smallest eigenvalue of a PSD-up-to-rounding Hermitian
/// band matrix, on the squared scale. `hi` must be a valid upper bound.
double bisect_min_eig_band(const std::vector<Complex>& base, std::size_t n,
                           std::size_t w, double hi, const LinalgTols& tols) {
  if (hi <= 0.0) return 0.0;
  std::vector<Complex> work;
  auto psd_at = [&](double s) {
    work = base;
    return ldl_classify_band(work, n, w, s, tols.pivot_rel_tol) !=
           Definiteness::Indefinite;
  };
  if (psd_at(hi)) return hi;
  if (!psd_at(0.0)) return 0.0;
  double lo = 0.0;
  while (hi - lo > tols.sv_tol) {
    const double mid = 0.5 * (lo + hi);
    if (psd_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Complex trace(const CMatrix& m) {
  Complex t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

}  // namespace

CMatrix conj_transpose(const CMatrix& m) {
  CMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      t(j, i) = std::conj(m(i, j));
    }
  }
  return t;
}

CMatrix gram(const CMatrix& m) {
  const std::size_t n = m.cols();
  CMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Complex s = 0.0;
      for (std::size_t r = 0; r < m.rows(); ++r) {
        s += std::conj(m(r, i)) * m(r, j);
      }
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
    g(i, i) = Complex(g(i, i).real(), 0.0);
  }
  return g;
}

bool is_psd(const CMatrix& h, double shift, const LinalgTols& tols,
            const HermitianCheck& check) {
  require_hermitian(h, check.tolerance);
  return classify_dense(h, shift, tols.pivot_rel_tol) != Definiteness::Indefinite;
}

bool is_pd(const CMatrix& h, double shift, const LinalgTols& tols,
           const HermitianCheck& check) {
  require_hermitian(h, check.tolerance);
  return classify_dense(h, shift, tols.pivot_rel_tol) == Definiteness::Definite;
}

double smallest_singular_value(const CMatrix& m, const LinalgTols& tols) {
  if (m.cols() == 0) throw InvalidArgument("matrix must have at least one column");
  const CMatrix g = gram(m);
  const std::size_t w = dense_bandwidth(g);
  std::vector<Complex> band;
  dense_to_band(g, w, band);
  const double fro = m.frobenius_norm();
  const double s2 = bisect_min_eig_band(band, g.rows(), w, fro * fro, tols);
  return std::sqrt(std::max(s2, 0.0));
}

double spectral_norm(const CMatrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0.0;
  const std::vector<double> eigs = hermitian_eigenvalues(gram(m));
  return std::sqrt(std::max(eigs.back(), 0.0));
}

double mu_square(const CMatrix& m, const LinalgTols& tols) {
  if (!m.is_square()) throw NotSquare("mu_square requires a square matrix");
  return smallest_singular_value(m, tols);
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h,
                                          const HermitianCheck& check) {
  require_hermitian(h, check.tolerance);
  const std::size_t n = h.rows();
  if (n == 0) return {};

  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    }
    a(i, i) = Complex(a(i, i).real(), 0.0);
  }

  const double fro = a.frobenius_norm();
  const double off_stop = 1e-15 * std::max(fro, 1e-300);

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * std::norm(a(i, j));
    }
    if (std::sqrt(off) <= off_stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        const Complex u = a(p, q) / apq;  // phase of the pivot entry
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
        double t;
        if (tau >= 0.0) {
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        } else {
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex su = s * u;

        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = c * arp - std::conj(su) * arq;
          a(p, r) = std::conj(a(r, p));
          a(r, q) = su * arp + c * arq;
          a(q, r) = std::conj(a(r, q));
        }
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = a(i, i).real();
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

std::vector<Complex> char_poly(const CMatrix& m) {
  if (!m.is_square()) throw NotSquare("char_poly requires a square matrix");
  const std::size_t p = m.rows();
  std::vector<Complex> c(p);
  if (p == 0) return c;
  CMatrix mk = m;
  c[0] = -trace(mk);
  for (std::size_t k = 2; k <= p; ++k) {
    for (std::size_t i = 0; i < p; ++i) mk(i, i) += c[k - 2];
    mk = multiply(m, mk);
    c[k - 1] = -trace(mk) / static_cast<double>(k);
  }
  return c;
}

namespace {

/// Horner evaluation of the monic polynomial with coefficients c (degree d)
/// and its derivative; also accumulates the coefficient-magnitude scale used
/// for relative residual tests.
void horner(const std::vector<Complex>& c, Complex z, Complex& pv, Complex& dv,
            double& scale) {
  pv = 1.0;
  dv = 0.0;
  scale = 1.0;
  const double az = std::abs(z);
  for (const Complex& ck : c) {
    dv = dv * z + pv;
    pv = pv * z + ck;
    scale = scale * az + std::abs(ck);
  }
}

std::vector<Complex> aberth(const std::vector<Complex>& c,
                            std::size_t max_iters) {
  const std::size_t d = c.size();
  std::vector<Complex> z(d);
  if (d == 0) return z;
  if (d == 1) {
    z[0] = -c[0];
    return z;
  }

  const Complex centroid = -c[0] / static_cast<double>(d);
  double radius = 0.0;
  for (std::size_t k = 1; k <= d; ++k) {
    radius = std::max(radius, std::pow(std::abs(c[k - 1]), 1.0 / k));
  }
  radius = 2.0 * radius + 1e-3;
  for (std::size_t j = 0; j < d; ++j) {
    const double ang =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d) +
        0.4;
    z[j] = centroid + radius * Complex(std::cos(ang), std::sin(ang));
  }

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    bool done = true;
    for (std::size_t i = 0; i < d; ++i) {
      Complex pv, dv;
      double scale;
      horner(c, z[i], pv, dv, scale);
      if (std::abs(pv) <= 1e-16 * scale) continue;
      if (dv == Complex(0.0, 0.0)) {
        z[i] += 1e-8 * (1.0 + std::abs(z[i]));
        done = false;
        continue;
      }
      const Complex newton = pv / dv;
      Complex sum = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0.0);
        sum += 1.0 / diff;
      }
      const Complex denom = 1.0 - newton * sum;
      const Complex w = (std::abs(denom) < 1e-300) ? newton : newton / denom;
      z[i] -= w;
      if (std::abs(w) > 1e-14 * (1.0 + std::abs(z[i]))) done = false;
    }
    if (done) {
      std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
      });
      return z;
    }
  }
  throw NonConvergence("Aberth-Ehrlich iteration did not converge");
}

}  // namespace

std::vector<Complex> complex_eigenvalues_small(const CMatrix& m,
                                               std::size_t max_iters) {
  if (!m.is_square()) throw NotSquare("eigenvalues require a square matrix");
  const std::size_t p = m.rows();
  if (p > 16) throw TooLarge("complex_eigenvalues_small is limited to 16x16");
  if (p == 0) return {};
  if (p == 1) return {m(0, 0)};

  double sigma = 1.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) sigma = std::max(sigma, std::abs(m(i, j)));
  }
  CMatrix scaled(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) scaled(i, j) = m(i, j) / sigma;
  }
  std::vector<Complex> roots = aberth(char_poly(scaled), max_iters);
  for (Complex& r : roots) r *= sigma;
  return roots;
}

ShiftKernel::ShiftKernel(const CMatrix& b, std::size_t block_dim, bool rect) {
  const std::size_t rows = b.rows();
  n_ = b.cols();
  const std::size_t off = rect ? block_dim : 0;
  if (!rect && rows != n_) {
    throw NotSquare("square shift kernel requires a square section");
  }
  if (rect && rows != n_ + 2 * block_dim) {
    throw InvalidArgument("rectangular section must have cols + 2*block_dim rows");
  }

  // Column supports of b, for band detection and band-limited gram entries.
  std::vector<std::size_t> rlo(n_, rows), rhi(n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t r = 0; r < rows; ++r) {
      if (b(r, j) != Complex(0.0, 0.0)) {
        rlo[j] = std::min(rlo[j], r);
        rhi[j] = std::max(rhi[j], r);
      }
    }
    if (rlo[j] > rhi[j]) {  // zero column
      rlo[j] = 0;
      rhi[j] = 0;
    }
  }
  std::size_t wg = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (rlo[j] <= rhi[i] && rlo[i] <= rhi[j]) wg = std::max(wg, j - i);
    }
  }
  wm_ = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (b(i + off, j) != Complex(0.0, 0.0)) {
        wm_ = std::max(wm_, i >= j ? i - j : j - i);
      }
    }
  }
  w_ = std::max(wg, wm_);

  g0_.assign((w_ + 1) * n_, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t d = 0; d <= std::min(w_, n_ - 1 - j); ++d) {
      const std::size_t i = j + d;
      const std::size_t lo = std::max(rlo[i], rlo[j]);
      const std::size_t hi = std::min(rhi[i], rhi[j]);
      Complex s = 0.0;
      for (std::size_t r = lo; r <= hi && r < rows; ++r) {
        s += std::conj(b(r, i)) * b(r, j);
      }
      if (d == 0) s = Complex(s.real(), 0.0);
      g0_[d * n_ + j] = s;
    }
  }
  mid_lo_.assign((wm_ + 1) * n_, Complex(0.0, 0.0));
  mid_up_.assign((wm_ + 1) * n_, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t d = 0; d <= std::min(wm_, n_ - 1 - j); ++d) {
      mid_lo_[d * n_ + j] = b(j + d + off, j);
      mid_up_[d * n_ + j] = b(j + off, j + d);
    }
  }
}

void ShiftKernel::assemble(Complex lambda, std::vector<Complex>& band) const {
  band.assign((w_ + 1) * n_, Complex(0.0, 0.0));
  const Complex cl = std::conj(lambda);
  const double l2 = std::norm(lambda);
  for (std::size_t d = 0; d <= w_; ++d) {
    for (std::size_t j = 0; j + d < n_; ++j) {
      Complex v = g0_[d * n_ + j];
      if (d <= wm_) {
        v -= cl * mid_lo_[d * n_ + j] + lambda * std::conj(mid_up_[d * n_ + j]);
      }
      if (d == 0) v = Complex(v.real() + l2, 0.0);
      band[d * n_ + j] = v;
    }
  }
}

double ShiftKernel::nu(Complex lambda, const LinalgTols& tols) const {
  std::vector<Complex> base;
  assemble(lambda, base);
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n_; ++j) hi = std::min(hi, base[j].real());
  const double s2 = bisect_min_eig_band(base, n_, w_, hi, tols);
  return std::sqrt(std::max(s2, 0.0));
}

bool ShiftKernel::nu_greater(Complex lambda, double eps,
                             const LinalgTols& tols) const {
  std::vector<Complex> band;
  assemble(lambda, band);
  return ldl_classify_band(band, n_, w_, eps * eps, tols.pivot_rel_tol) ==
         Definiteness::Definite;
}

}  // namespace specbox
