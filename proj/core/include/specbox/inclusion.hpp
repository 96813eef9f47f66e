#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "specbox/linalg.hpp"
#include "specbox/operator.hpp"
#include "specbox/penalty.hpp"

namespace specbox {

/// Which k (or which explicit matrices) the infimum over Z is replaced by.
/// WindowScan applies the greedy Frobenius net at the given radius to the
/// sections found in [k_lo, k_hi]; Frobenius dominates the spectral norm, so
/// the 1/n net condition of the finite-reduction theorem is certified.
class IndexFamily {
public:
  enum class Kind { ExplicitK, Matrices, MatrixPairs, WindowScan };

  static IndexFamily explicit_k(std::vector<std::int64_t> ks);
  static IndexFamily matrices(std::vector<CMatrix> mats);
  static IndexFamily matrix_pairs(std::vector<std::pair<CMatrix, CMatrix>> pairs);
  static IndexFamily window_scan(std::int64_t k_lo, std::int64_t k_hi,
                                 double net_radius);

  Kind kind() const { return kind_; }
  const std::vector<std::int64_t>& ks() const { return ks_; }
  const std::vector<CMatrix>& mats() const { return mats_; }
  const std::vector<std::pair<CMatrix, CMatrix>>& pairs() const { return pairs_; }
  std::int64_t k_lo() const { return k_lo_; }
  std::int64_t k_hi() const { return k_hi_; }
  double net_radius() const { return net_radius_; }

private:
  IndexFamily() = default;
  Kind kind_ = Kind::ExplicitK;
  std::vector<std::int64_t> ks_;
  std::vector<CMatrix> mats_;
  std::vector<std::pair<CMatrix, CMatrix>> pairs_;
  std::int64_t k_lo_ = 0, k_hi_ = 0;
  double net_radius_ = 0.0;
};

/// A resolved family of finite sections for one (op, method, n, t), with the
/// per-section shift kernels precomputed: grid sweeps then cost one banded
/// assembly + LDL^T per point and section.
class SectionFamily {
public:
  static SectionFamily squares(std::vector<CMatrix> mats, std::size_t block_dim);
  static SectionFamily rect_pairs(std::vector<std::pair<CMatrix, CMatrix>> pairs,
                                  std::size_t block_dim);
  static SectionFamily resolve(const OperatorSpec& op, Method method,
                               std::size_t n, const IndexFamily& family,
                               Complex t = Complex(1.0, 0.0),
                               const LinalgTols& tols = {});

  /// mu at lambda: min over sections of the relevant lower norms (the
  /// adjoint branch of rectangular pairs is evaluated at conj(lambda)).
  double mu(Complex lambda, const LinalgTols& tols = {}) const;

  /// Closed-set membership mu <= eps, decided by one strict-definiteness
  /// LDL^T test per section instead of a full bisection.
  bool member(Complex lambda, double eps, const LinalgTols& tols = {}) const;

  std::size_t size() const { return square_.size() + rect_.size(); }

private:
  SectionFamily() = default;
  std::vector<ShiftKernel> square_;
  std::vector<std::pair<ShiftKernel, ShiftKernel>> rect_;
};

double mu_tau(const OperatorSpec& op, std::size_t n, const IndexFamily& family,
              Complex lambda, const LinalgTols& tols = {});

double mu_pi(const OperatorSpec& op, std::size_t n, const IndexFamily& family,
             Complex t, Complex lambda, const LinalgTols& tols = {});

double mu_tau1(const OperatorSpec& op, std::size_t n, const IndexFamily& family,
               Complex lambda, const LinalgTols& tols = {});

bool member(const OperatorSpec& op, Method method, std::size_t n,
            const IndexFamily& family, double eps, Complex lambda,
            Complex t = Complex(1.0, 0.0), const LinalgTols& tols = {});

/// Greedy net over the window: k is kept unless an existing representative is
/// within Frobenius distance 1/n on both the A^+ and (A*)^+ sections.
IndexFamily kn_select(const OperatorSpec& op, std::size_t n, std::int64_t k_lo,
                      std::int64_t k_hi);

/// Finite symbol sets for pseudoergodic enumeration.
struct SymbolAlphabet {
  std::vector<Complex> alpha;
  std::vector<Complex> beta;
  std::vector<Complex> gamma;
};

struct PiWith {
  Complex t = Complex(1.0, 0.0);
};

/// All tridiagonal n x n matrices with entries drawn from the alphabet; for
/// the pi variant each is further augmented by every corner pair
/// (t*a at (1,n), conj(t)*g at (n,1)). Throws TooMany above the cap.
IndexFamily enumerate_pseudoergodic(const SymbolAlphabet& alphabet,
                                    std::size_t n, Method method,
                                    Complex t = Complex(1.0, 0.0),
                                    std::size_t cap = (std::size_t{1} << 24));

struct GridSpec {
  std::size_t n = 1;     // lattice spacing 1/n
  double radius = 1.0;   // open disc radius
};

struct PointSet {
  std::vector<Complex> points;
};

/// Lattice points (j + ik)/n with modulus < radius (open disc), ordered by
/// (imag, real). The |lambda| < R decision runs on the integers j, k.
PointSet grid_points(const GridSpec& g);

/// Deduplicate within 1e-12 per coordinate (sorted by (re, im)).
PointSet dedup(PointSet s);

struct MuGrid {
  std::vector<Complex> points;
  std::vector<double> mu_values;
  std::vector<char> members;
  Method method = Method::Tau;
  std::size_t n = 0;
  double eps = 0.0;
};

/// Sweep mu and membership over a lattice; data-parallel over points with
/// deterministic ordering. threads = 0 picks SPECBOX_THREADS or the hardware
/// count.
MuGrid mu_grid(const SectionFamily& family, Method method, std::size_t n,
               const GridSpec& grid, double eps, unsigned threads = 0,
               const LinalgTols& tols = {});

struct DilatedPointSet {
  PointSet centers;
  double dilation_radius = 0.0;  // report as centers + radius*closed disc
  double threshold = 0.0;        // membership threshold used
  double grid_radius = 0.0;      // R of the Grid(n, R) sweep
};

/// Gamma^n_fin: grid points of Grid(n, R) with mu_tau1 <= eps*_n + 3/n
/// (+ delta_n when a band-dominated truncation bound is supplied);
/// R = alpha_max + beta_max + gamma_max.
DilatedPointSet gamma_fin(const OperatorSpec& op, std::size_t n,
                          const IndexFamily& family, double bdo_delta = 0.0,
                          unsigned threads = 0, const LinalgTols& tols = {});

/// Pi^n_fin for a pseudoergodic alphabet: grid points where the minimum over
/// the pi enumeration of s_min(B - lambda I) is <= eps†_n + 3/n.
DilatedPointSet pi_fin(const SymbolAlphabet& alphabet, std::size_t n, Complex t,
                       double bdo_delta = 0.0, unsigned threads = 0,
                       std::size_t cap = (std::size_t{1} << 24),
                       const LinalgTols& tols = {});

/// Membership threshold inflation for band-dominated truncation: one
/// application per perturbation step (apply twice for the outer bound).
double bdo_inflate(double eps, double delta_n);

/// Hausdorff distance by exhaustive pairing; both sets must be nonempty.
double hausdorff(const PointSet& a, const PointSet& b);

/// Thread count resolution: explicit hint, else SPECBOX_THREADS, else
/// hardware concurrency.
unsigned effective_threads(unsigned hint);

}  // namespace specbox
