#pragma once

#include "specbox/inclusion.hpp"
#include "specbox/operator.hpp"
#include "specbox/penalty.hpp"

namespace specbox {

enum class ShiftRegionKind { Disc, DiscUnion, Annulus };

/// Closed-form inclusion-set geometry for the shift operator: a closed disc
/// (tau), a union of closed discs around rotated roots of unity (pi), or a
/// closed annulus (tau1). Closed-set convention throughout.
struct ShiftRegion {
  ShiftRegionKind kind = ShiftRegionKind::Disc;
  double outer = 1.0;
  double inner = 0.0;
  std::vector<Complex> centers;
  double disc_radius = 0.0;

  bool contains(Complex lambda) const;
};

ShiftRegion shift_sets(std::size_t n, Method method,
                       Complex t = Complex(1.0, 0.0));

/// Eigenvalues of the periodised symbol sections A^{per,z}_{p,k} over
/// num_samples points z on the unit circle.
struct SymbolSweep {
  std::vector<Complex> samples;
  std::vector<std::vector<Complex>> eigenvalues;  // block_dim * period each

  PointSet flatten() const;
};

/// Sweeps the p x p (block) symbol sections of an operator whose diagonals
/// are all Constant or Periodic; p is the lcm of the three periods.
/// Requires p * block_dim <= 16 and num_samples >= 8.
SymbolSweep periodic_symbol_sweep(const OperatorSpec& op,
                                  std::size_t num_samples, std::int64_t k = 0);

/// Sampled spectrum of a periodic operator: union of the symbol eigenvalues
/// over the unit-circle sweep.
PointSet periodic_spectrum(const OperatorSpec& op, std::size_t num_samples);

/// Union of periodic_spectrum over all coefficient words of period
/// <= max_period drawn from the alphabet, skipping words whose period is a
/// proper divisor (their spectra already appear at the shorter period).
PointSet pseudoergodic_period_union(const SymbolAlphabet& alphabet,
                                    std::size_t max_period,
                                    std::size_t num_samples,
                                    std::size_t cap = (std::size_t{1} << 24));

}  // namespace specbox
