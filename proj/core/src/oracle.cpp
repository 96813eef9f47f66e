#include "specbox/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace specbox {

namespace {
constexpr double kPi = std::numbers::pi;
}

bool ShiftRegion::contains(Complex lambda) const {
  const double a = std::abs(lambda);
  switch (kind) {
    case ShiftRegionKind::Disc:
      return a <= outer;
    case ShiftRegionKind::Annulus:
      return a >= inner && a <= outer;
    case ShiftRegionKind::DiscUnion:
      for (const Complex& c : centers) {
        if (std::abs(lambda - c) <= disc_radius) return true;
      }
      return false;
  }
  return false;
}

ShiftRegion shift_sets(std::size_t n, Method method, Complex t) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  ShiftRegion r;
  switch (method) {
    case Method::Tau:
      r.kind = ShiftRegionKind::Disc;
      r.outer = 1.0;
      return r;
    case Method::Pi: {
      r.kind = ShiftRegionKind::DiscUnion;
      r.disc_radius = eps_pi(n, 1.0, 0.0);
      // principal branch of t^{1/n}; the set t^{1/n} T_n is branch-free
      const double base = std::arg(t) / static_cast<double>(n);
      for (std::size_t j = 0; j < n; ++j) {
        const double ang = base + 2.0 * kPi * static_cast<double>(j) / n;
        r.centers.emplace_back(std::cos(ang), std::sin(ang));
      }
      return r;
    }
    case Method::Tau1: {
      const double eps = eps_tau1(n, 1.0, 0.0);
      if (n >= 3) {
        r.kind = ShiftRegionKind::Annulus;
        r.inner = 1.0 - eps * eps;
        r.outer = 1.0;
      } else {
        r.kind = ShiftRegionKind::Disc;
        r.outer = 1.0;
      }
      return r;
    }
  }
  throw InvalidArgument("unreachable");
}

PointSet SymbolSweep::flatten() const {
  PointSet out;
  for (const auto& eigs : eigenvalues) {
    out.points.insert(out.points.end(), eigs.begin(), eigs.end());
  }
  return out;
}

SymbolSweep periodic_symbol_sweep(const OperatorSpec& op,
                                  std::size_t num_samples, std::int64_t k) {
  if (num_samples < 8) throw InvalidArgument("need at least 8 samples");
  auto period_of = [](const DiagonalGen& g) -> std::size_t {
    switch (g.kind()) {
      case GenKind::Constant:
        return 1;
      case GenKind::Periodic:
        return g.period();
      default:
        throw PeriodMismatch("diagonals must be constant or periodic");
    }
  };
  const std::size_t p = std::lcm(
      std::lcm(period_of(op.alpha()), period_of(op.beta())),
      period_of(op.gamma()));
  if (p * op.block_dim() > 16) {
    throw TooLarge("symbol section exceeds the 16x16 eigenvalue kernel");
  }

  SymbolSweep sweep;
  sweep.samples.reserve(num_samples);
  sweep.eigenvalues.reserve(num_samples);
  for (std::size_t m = 0; m < num_samples; ++m) {
    const double ang = 2.0 * kPi * static_cast<double>(m) / num_samples;
    const Complex z(std::cos(ang), std::sin(ang));
    const CMatrix section = extract_periodised(op, p, k, z).matrix;
    sweep.samples.push_back(z);
    sweep.eigenvalues.push_back(complex_eigenvalues_small(section));
  }
  return sweep;
}

PointSet periodic_spectrum(const OperatorSpec& op, std::size_t num_samples) {
  return periodic_symbol_sweep(op, num_samples).flatten();
}

namespace {

/// True iff the word triple repeats with some proper divisor period.
bool has_proper_period(const std::vector<std::size_t>& a,
                       const std::vector<std::size_t>& b,
                       const std::vector<std::size_t>& c) {
  const std::size_t q = a.size();
  for (std::size_t d = 1; d < q; ++d) {
    if (q % d != 0) continue;
    bool rep = true;
    for (std::size_t i = 0; i < q && rep; ++i) {
      rep = a[i] == a[i % d] && b[i] == b[i % d] && c[i] == c[i % d];
    }
    if (rep) return true;
  }
  return false;
}

}  // namespace

PointSet pseudoergodic_period_union(const SymbolAlphabet& alphabet,
                                    std::size_t max_period,
                                    std::size_t num_samples, std::size_t cap) {
  if (alphabet.alpha.empty() || alphabet.beta.empty() || alphabet.gamma.empty()) {
    throw InvalidArgument("alphabet sets must be nonempty");
  }
  if (max_period == 0) throw InvalidArgument("max period must be >= 1");

  const double na = static_cast<double>(alphabet.alpha.size());
  const double nb = static_cast<double>(alphabet.beta.size());
  const double ng = static_cast<double>(alphabet.gamma.size());
  double total = 0.0;
  for (std::size_t q = 1; q <= max_period; ++q) {
    total += std::pow(na * nb * ng, static_cast<double>(q));
  }
  if (total > static_cast<double>(cap)) {
    throw TooMany("period union exceeds the configured cap");
  }

  PointSet out;
  for (std::size_t q = 1; q <= max_period; ++q) {
    std::vector<std::size_t> a(q, 0), b(q, 0), c(q, 0);
    while (true) {
      if (!has_proper_period(a, b, c)) {
        std::vector<CMatrix> av, bv, cv;
        for (std::size_t i = 0; i < q; ++i) {
          av.push_back(CMatrix::from_rows(1, 1, {alphabet.alpha[a[i]]}));
          bv.push_back(CMatrix::from_rows(1, 1, {alphabet.beta[b[i]]}));
          cv.push_back(CMatrix::from_rows(1, 1, {alphabet.gamma[c[i]]}));
        }
        const OperatorSpec word_op(DiagonalGen::periodic(std::move(av)),
                                   DiagonalGen::periodic(std::move(bv)),
                                   DiagonalGen::periodic(std::move(cv)));
        const PointSet spec = periodic_spectrum(word_op, num_samples);
        out.points.insert(out.points.end(), spec.points.begin(),
                          spec.points.end());
      }
      // odometer over the three words
      std::size_t pos = 0;
      bool carried = true;
      for (auto* word : {&a, &b, &c}) {
        const std::size_t base = word == &a   ? alphabet.alpha.size()
                                 : word == &b ? alphabet.beta.size()
                                              : alphabet.gamma.size();
        for (pos = 0; pos < q; ++pos) {
          if (++(*word)[pos] < base) break;
          (*word)[pos] = 0;
        }
        carried = pos == q;
        if (!carried) break;
      }
      if (carried) break;
    }
  }
  return dedup(std::move(out));
}

}  // namespace specbox
