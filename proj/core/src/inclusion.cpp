#include "specbox/inclusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace specbox {

IndexFamily IndexFamily::explicit_k(std::vector<std::int64_t> ks) {
  if (ks.empty()) throw EmptyFamily("explicit index list is empty");
  IndexFamily f;
  f.kind_ = Kind::ExplicitK;
  f.ks_ = std::move(ks);
  return f;
}

IndexFamily IndexFamily::matrices(std::vector<CMatrix> mats) {
  if (mats.empty()) throw EmptyFamily("matrix list is empty");
  IndexFamily f;
  f.kind_ = Kind::Matrices;
  f.mats_ = std::move(mats);
  return f;
}

IndexFamily IndexFamily::matrix_pairs(
    std::vector<std::pair<CMatrix, CMatrix>> pairs) {
  if (pairs.empty()) throw EmptyFamily("matrix pair list is empty");
  IndexFamily f;
  f.kind_ = Kind::MatrixPairs;
  f.pairs_ = std::move(pairs);
  return f;
}

IndexFamily IndexFamily::window_scan(std::int64_t k_lo, std::int64_t k_hi,
                                     double net_radius) {
  if (k_lo > k_hi) throw EmptyWindow("window is empty");
  if (net_radius <= 0.0) throw InvalidArgument("net radius must be positive");
  IndexFamily f;
  f.kind_ = Kind::WindowScan;
  f.k_lo_ = k_lo;
  f.k_hi_ = k_hi;
  f.net_radius_ = net_radius;
  return f;
}

SectionFamily SectionFamily::squares(std::vector<CMatrix> mats,
                                     std::size_t block_dim) {
  if (mats.empty()) throw EmptyFamily("no sections to evaluate");
  SectionFamily fam;
  fam.square_.reserve(mats.size());
  for (const CMatrix& m : mats) {
    fam.square_.emplace_back(m, block_dim, /*rect=*/false);
  }
  return fam;
}

SectionFamily SectionFamily::rect_pairs(
    std::vector<std::pair<CMatrix, CMatrix>> pairs, std::size_t block_dim) {
  if (pairs.empty()) throw EmptyFamily("no sections to evaluate");
  SectionFamily fam;
  fam.rect_.reserve(pairs.size());
  for (const auto& [p, q] : pairs) {
    fam.rect_.emplace_back(ShiftKernel(p, block_dim, /*rect=*/true),
                           ShiftKernel(q, block_dim, /*rect=*/true));
  }
  return fam;
}

namespace {

/// Greedy Frobenius net: keeps the first section of each 1/n-cluster.
template <class Section, class Dist>
std::vector<std::int64_t> greedy_net(std::int64_t k_lo, std::int64_t k_hi,
                                     double radius, Section&& section,
                                     Dist&& dist) {
  std::vector<std::int64_t> reps;
  std::vector<decltype(section(k_lo))> rep_secs;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    auto sec = section(k);
    bool covered = false;
    for (const auto& r : rep_secs) {
      if (dist(r, sec) <= radius) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      reps.push_back(k);
      rep_secs.push_back(std::move(sec));
    }
  }
  return reps;
}

}  // namespace

SectionFamily SectionFamily::resolve(const OperatorSpec& op, Method method,
                                     std::size_t n, const IndexFamily& family,
                                     Complex t, const LinalgTols& tols) {
  (void)tols;
  const std::size_t p = op.block_dim();

  if (family.kind() == IndexFamily::Kind::Matrices) {
    if (method == Method::Tau1) {
      throw InvalidArgument("tau1 needs matrix pairs, not single matrices");
    }
    return squares(family.mats(), p);
  }
  if (family.kind() == IndexFamily::Kind::MatrixPairs) {
    if (method != Method::Tau1) {
      throw InvalidArgument("matrix pairs are only meaningful for tau1");
    }
    return rect_pairs(family.pairs(), p);
  }

  std::vector<std::int64_t> ks;
  if (family.kind() == IndexFamily::Kind::ExplicitK) {
    ks = family.ks();
  } else {
    const double radius = family.net_radius();
    switch (method) {
      case Method::Tau:
        ks = greedy_net(
            family.k_lo(), family.k_hi(), radius,
            [&](std::int64_t k) { return extract_square(op, n, k).matrix; },
            [](const CMatrix& a, const CMatrix& b) {
              return CMatrix::frobenius_dist(a, b);
            });
        break;
      case Method::Pi:
        ks = greedy_net(
            family.k_lo(), family.k_hi(), radius,
            [&](std::int64_t k) {
              return extract_periodised(op, n, k, t).matrix;
            },
            [](const CMatrix& a, const CMatrix& b) {
              return CMatrix::frobenius_dist(a, b);
            });
        break;
      case Method::Tau1: {
        const OperatorSpec adj = adjoint(op);
        ks = greedy_net(
            family.k_lo(), family.k_hi(), radius,
            [&](std::int64_t k) {
              return std::make_pair(extract_rect(op, n, k).matrix,
                                    extract_rect(adj, n, k).matrix);
            },
            [](const auto& a, const auto& b) {
              return std::max(CMatrix::frobenius_dist(a.first, b.first),
                              CMatrix::frobenius_dist(a.second, b.second));
            });
        break;
      }
    }
  }
  if (ks.empty()) throw EmptyFamily("family resolved to no sections");

  switch (method) {
    case Method::Tau: {
      std::vector<CMatrix> mats;
      mats.reserve(ks.size());
      for (std::int64_t k : ks) mats.push_back(extract_square(op, n, k).matrix);
      return squares(std::move(mats), p);
    }
    case Method::Pi: {
      std::vector<CMatrix> mats;
      mats.reserve(ks.size());
      for (std::int64_t k : ks) {
        mats.push_back(extract_periodised(op, n, k, t).matrix);
      }
      return squares(std::move(mats), p);
    }
    case Method::Tau1: {
      const OperatorSpec adj = adjoint(op);
      std::vector<std::pair<CMatrix, CMatrix>> pairs;
      pairs.reserve(ks.size());
      for (std::int64_t k : ks) {
        pairs.emplace_back(extract_rect(op, n, k).matrix,
                           extract_rect(adj, n, k).matrix);
      }
      return rect_pairs(std::move(pairs), p);
    }
  }
  throw InvalidArgument("unreachable");
}

double SectionFamily::mu(Complex lambda, const LinalgTols& tols) const {
  double best = std::numeric_limits<double>::infinity();
  for (const ShiftKernel& k : square_) {
    best = std::min(best, k.nu(lambda, tols));
  }
  const Complex cl = std::conj(lambda);
  for (const auto& [fwd, adj] : rect_) {
    best = std::min(best, fwd.nu(lambda, tols));
    best = std::min(best, adj.nu(cl, tols));
  }
  return best;
}

bool SectionFamily::member(Complex lambda, double eps,
                           const LinalgTols& tols) const {
  for (const ShiftKernel& k : square_) {
    if (!k.nu_greater(lambda, eps, tols)) return true;
  }
  const Complex cl = std::conj(lambda);
  for (const auto& [fwd, adj] : rect_) {
    if (!fwd.nu_greater(lambda, eps, tols)) return true;
    if (!adj.nu_greater(cl, eps, tols)) return true;
  }
  return false;
}

double mu_tau(const OperatorSpec& op, std::size_t n, const IndexFamily& family,
              Complex lambda, const LinalgTols& tols) {
  return SectionFamily::resolve(op, Method::Tau, n, family, 1.0, tols)
      .mu(lambda, tols);
}

double mu_pi(const OperatorSpec& op, std::size_t n, const IndexFamily& family,
             Complex t, Complex lambda, const LinalgTols& tols) {
  return SectionFamily::resolve(op, Method::Pi, n, family, t, tols)
      .mu(lambda, tols);
}

double mu_tau1(const OperatorSpec& op, std::size_t n, const IndexFamily& family,
               Complex lambda, const LinalgTols& tols) {
  return SectionFamily::resolve(op, Method::Tau1, n, family, 1.0, tols)
      .mu(lambda, tols);
}

bool member(const OperatorSpec& op, Method method, std::size_t n,
            const IndexFamily& family, double eps, Complex lambda, Complex t,
            const LinalgTols& tols) {
  if (eps < 0.0) throw InvalidArgument("membership threshold must be >= 0");
  return SectionFamily::resolve(op, method, n, family, t, tols)
      .member(lambda, eps, tols);
}

IndexFamily kn_select(const OperatorSpec& op, std::size_t n, std::int64_t k_lo,
                      std::int64_t k_hi) {
  if (k_lo > k_hi) throw EmptyWindow("window is empty");
  const OperatorSpec adj = adjoint(op);
  const double radius = 1.0 / static_cast<double>(n);
  std::vector<std::int64_t> reps = greedy_net(
      k_lo, k_hi, radius,
      [&](std::int64_t k) {
        return std::make_pair(extract_rect(op, n, k).matrix,
                              extract_rect(adj, n, k).matrix);
      },
      [](const auto& a, const auto& b) {
        return std::max(CMatrix::frobenius_dist(a.first, b.first),
                        CMatrix::frobenius_dist(a.second, b.second));
      });
  return IndexFamily::explicit_k(std::move(reps));
}

IndexFamily enumerate_pseudoergodic(const SymbolAlphabet& alphabet,
                                    std::size_t n, Method method, Complex t,
                                    std::size_t cap) {
  if (alphabet.alpha.empty() || alphabet.beta.empty() || alphabet.gamma.empty()) {
    throw InvalidArgument("alphabet sets must be nonempty");
  }
  if (n == 0) throw InvalidArgument("n must be >= 1");
  if (method == Method::Tau1) {
    throw InvalidArgument("pseudoergodic enumeration covers tau and pi only");
  }
  const double na = static_cast<double>(alphabet.alpha.size());
  const double nb = static_cast<double>(alphabet.beta.size());
  const double ng = static_cast<double>(alphabet.gamma.size());
  double count = std::pow(na, static_cast<double>(n - 1)) *
                 std::pow(nb, static_cast<double>(n)) *
                 std::pow(ng, static_cast<double>(n - 1));
  if (method == Method::Pi) count *= na * ng;
  if (count > static_cast<double>(cap)) {
    throw TooMany("pseudoergodic enumeration exceeds the configured cap");
  }

  // Odometer over (sub, diag, super[, corner-a, corner-g]) digit positions.
  const std::size_t subs = n - 1;
  const std::size_t sups = n - 1;
  const bool corners = method == Method::Pi;
  std::vector<std::size_t> digit(subs + n + sups + (corners ? 2 : 0), 0);
  std::vector<std::size_t> base(digit.size());
  for (std::size_t i = 0; i < subs; ++i) base[i] = alphabet.alpha.size();
  for (std::size_t i = 0; i < n; ++i) base[subs + i] = alphabet.beta.size();
  for (std::size_t i = 0; i < sups; ++i) base[subs + n + i] = alphabet.gamma.size();
  if (corners) {
    base[subs + n + sups] = alphabet.alpha.size();
    base[subs + n + sups + 1] = alphabet.gamma.size();
  }

  std::vector<CMatrix> mats;
  mats.reserve(static_cast<std::size_t>(count));
  while (true) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < subs; ++i) {
      m(i + 1, i) = alphabet.alpha[digit[i]];
    }
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = alphabet.beta[digit[subs + i]];
    }
    for (std::size_t i = 0; i < sups; ++i) {
      m(i, i + 1) = alphabet.gamma[digit[subs + n + i]];
    }
    if (corners) {
      m(0, n - 1) += t * alphabet.alpha[digit[subs + n + sups]];
      m(n - 1, 0) += std::conj(t) * alphabet.gamma[digit[subs + n + sups + 1]];
    }
    mats.push_back(std::move(m));

    std::size_t pos = 0;
    while (pos < digit.size() && ++digit[pos] == base[pos]) {
      digit[pos] = 0;
      ++pos;
    }
    if (pos == digit.size()) break;
  }
  return IndexFamily::matrices(std::move(mats));
}

PointSet grid_points(const GridSpec& g) {
  if (g.n == 0 || g.radius <= 0.0) {
    throw InvalidArgument("grid needs n >= 1 and radius > 0");
  }
  const std::int64_t n = static_cast<std::int64_t>(g.n);
  const long double thr = static_cast<long double>(g.radius) * g.radius *
                          static_cast<long double>(n) * n;
  const std::int64_t kmax = static_cast<std::int64_t>(
      std::ceil(g.radius * static_cast<double>(g.n)));
  PointSet out;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    for (std::int64_t j = -kmax; j <= kmax; ++j) {
      const long double jk2 = static_cast<long double>(j) * j +
                              static_cast<long double>(k) * k;
      if (jk2 < thr) {
        out.points.emplace_back(static_cast<double>(j) / g.n,
                                static_cast<double>(k) / g.n);
      }
    }
  }
  return out;
}

PointSet dedup(PointSet s) {
  std::sort(s.points.begin(), s.points.end(),
            [](const Complex& a, const Complex& b) {
              if (a.real() != b.real()) return a.real() < b.real();
              return a.imag() < b.imag();
            });
  std::vector<Complex> out;
  for (const Complex& z : s.points) {
    if (!out.empty() && std::abs(out.back().real() - z.real()) <= 1e-12 &&
        std::abs(out.back().imag() - z.imag()) <= 1e-12) {
      continue;
    }
    out.push_back(z);
  }
  s.points = std::move(out);
  return s;
}

unsigned effective_threads(unsigned hint) {
  if (hint > 0) return hint;
  if (const char* env = std::getenv("SPECBOX_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

namespace {

/// Chunked parallel loop; each index writes only its own output slot, so the
/// result is independent of the thread count.
void parallel_for(std::size_t count, unsigned threads, auto&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 256) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace

MuGrid mu_grid(const SectionFamily& family, Method method, std::size_t n,
               const GridSpec& grid, double eps, unsigned threads,
               const LinalgTols& tols) {
  MuGrid out;
  out.points = grid_points(grid).points;
  out.mu_values.assign(out.points.size(), 0.0);
  out.members.assign(out.points.size(), 0);
  out.method = method;
  out.n = n;
  out.eps = eps;
  parallel_for(out.points.size(), effective_threads(threads), [&](std::size_t i) {
    out.mu_values[i] = family.mu(out.points[i], tols);
    out.members[i] = family.member(out.points[i], eps, tols) ? 1 : 0;
  });
  return out;
}

namespace {

DilatedPointSet member_sweep(const SectionFamily& family, std::size_t n,
                             double radius, double eps, unsigned threads,
                             const LinalgTols& tols) {
  const PointSet grid = grid_points({n, radius});
  std::vector<char> in(grid.points.size(), 0);
  parallel_for(grid.points.size(), effective_threads(threads),
               [&](std::size_t i) {
                 in[i] = family.member(grid.points[i], eps, tols) ? 1 : 0;
               });
  DilatedPointSet out;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    if (in[i]) out.centers.points.push_back(grid.points[i]);
  }
  out.dilation_radius = 2.0 / static_cast<double>(n);
  out.threshold = eps;
  out.grid_radius = radius;
  return out;
}

}  // namespace

DilatedPointSet gamma_fin(const OperatorSpec& op, std::size_t n,
                          const IndexFamily& family, double bdo_delta,
                          unsigned threads, const LinalgTols& tols) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  const SectionFamily fam =
      SectionFamily::resolve(op, Method::Tau1, n, family, 1.0, tols);
  const double eps = bdo_inflate(
      eps_rational(RationalKind::Star, n, op.alpha_max(), op.gamma_max()) +
          3.0 / static_cast<double>(n),
      bdo_delta);
  return member_sweep(fam, n, op.norm_bound(), eps, threads, tols);
}

DilatedPointSet pi_fin(const SymbolAlphabet& alphabet, std::size_t n, Complex t,
                       double bdo_delta, unsigned threads, std::size_t cap,
                       const LinalgTols& tols) {
  if (n == 0) throw InvalidArgument("n must be >= 1");
  auto max_abs = [](const std::vector<Complex>& v) {
    double m = 0.0;
    for (const Complex& z : v) m = std::max(m, std::abs(z));
    return m;
  };
  const double amax = max_abs(alphabet.alpha);
  const double bmax = max_abs(alphabet.beta);
  const double gmax = max_abs(alphabet.gamma);
  const IndexFamily fam = enumerate_pseudoergodic(alphabet, n, Method::Pi, t, cap);
  const SectionFamily sections = SectionFamily::squares(fam.mats(), 1);
  const double eps = bdo_inflate(
      eps_rational(RationalKind::Dagger, n, amax, gmax) +
          3.0 / static_cast<double>(n),
      bdo_delta);
  return member_sweep(sections, n, amax + bmax + gmax, eps, threads, tols);
}

double bdo_inflate(double eps, double delta_n) {
  if (delta_n < 0.0) throw NegativeDelta("truncation bound must be >= 0");
  return eps + delta_n;
}

double hausdorff(const PointSet& a, const PointSet& b) {
  if (a.points.empty() || b.points.empty()) {
    throw EmptySet("hausdorff distance needs nonempty sets");
  }
  auto directed = [](const PointSet& from, const PointSet& to) {
    double worst = 0.0;
    for (const Complex& p : from.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& q : to.points) {
        best = std::min(best, std::abs(p - q));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace specbox
