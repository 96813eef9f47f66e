#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "specbox/inclusion.hpp"
#include "specbox/oracle.hpp"

using namespace specbox;

namespace {
constexpr double kPi = std::numbers::pi;

IndexFamily window(std::int64_t lo, std::int64_t hi, std::size_t n) {
  return IndexFamily::window_scan(lo, hi, 1.0 / static_cast<double>(n));
}
}  // namespace

TEST_CASE("mu_tau basics") {
  const OperatorSpec shift = oracles::shift_operator();
  CHECK(mu_tau(shift, 1, window(-3, 3, 1), Complex(0.7)) ==
        doctest::Approx(0.7).epsilon(1e-9));

  // far lambda: mu >= |lambda| - R
  const OperatorSpec per = oracles::per3_a();
  const double far = per.norm_bound() + 1.0;
  CHECK(mu_tau(per, 4, window(-4, 4, 4), Complex(far)) >= 1.0 - 1e-9);
}

TEST_CASE("mu_tau over the n=3 sign-pattern enumeration hits zero") {
  const IndexFamily fam =
      enumerate_pseudoergodic(oracles::feinberg_zee(), 3, Method::Tau);
  CHECK(fam.mats().size() == 4);  // 2^{n-1}

  // independent route: min over the family of the eigenvalue-based s_min
  double brute = 1e300;
  for (const CMatrix& m : fam.mats()) {
    brute = std::min(brute, oracles::smin_eig_route(m));
  }
  CHECK(brute == doctest::Approx(0.0).epsilon(1e-12));

  const SectionFamily sections = SectionFamily::squares(fam.mats(), 1);
  CHECK(sections.mu(Complex(0.0)) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("mu_pi on the shift") {
  const OperatorSpec shift = oracles::shift_operator();
  CHECK(mu_pi(shift, 4, window(-2, 2, 4), Complex(1.0), Complex(1.0)) ==
        doctest::Approx(0.0).epsilon(1e-9));
  // V^{per,1}_n is normal, so mu is the distance to T_n; at 0 that is 1
  CHECK(mu_pi(shift, 4, window(-2, 2, 4), Complex(1.0), Complex(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-9));

  const OperatorSpec diag(DiagonalGen::constant(CMatrix::from_rows(1, 1, {0.0})),
                          DiagonalGen::constant(CMatrix::from_rows(1, 1, {2.0})),
                          DiagonalGen::constant(CMatrix::from_rows(1, 1, {0.0})));
  const Complex lambda(0.5, 0.25);
  CHECK(mu_pi(diag, 3, window(0, 0, 3), Complex(1.0), lambda) ==
        doctest::Approx(mu_tau(diag, 3, window(0, 0, 3), lambda)).epsilon(1e-12));
}

TEST_CASE("mu_tau1 closed forms") {
  const OperatorSpec shift = oracles::shift_operator();
  CHECK(mu_tau1(shift, 2, window(-2, 2, 2), Complex(0.5)) ==
        doctest::Approx(std::sqrt(0.75)).epsilon(1e-9));

  // |lambda| = 1: v(1) = 2 sin(pi/(2(n+1))) = eps''_n for r(A) = 1
  for (std::size_t n : {3, 6, 9}) {
    CHECK(mu_tau1(shift, n, window(-2, 2, n), Complex(1.0)) ==
          doctest::Approx(eps_tau1(n, 1.0, 0.0)).epsilon(1e-9));
  }

  const OperatorSpec ex = oracles::paired_laurent(0.3);
  CHECK(mu_tau1(ex, 2, window(-10, 10, 2), Complex(0.0)) ==
        doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("member uses the closed convention") {
  const OperatorSpec shift = oracles::shift_operator();
  const IndexFamily fam = window(-2, 2, 4);

  const double eps4 = eps_tau(4, 1.0, 0.0).value;
  CHECK(member(shift, Method::Tau, 4, fam, eps4, Complex(0.99)));
  CHECK(member(shift, Method::Tau, 4, fam, eps4, Complex(1.0)));  // boundary

  const double eps8 = eps_tau1(8, 1.0, 0.0);
  CHECK_FALSE(member(shift, Method::Tau1, 8, window(-2, 2, 8), eps8,
                     Complex(0.5)));  // annulus hole
  CHECK(member(shift, Method::Tau1, 8, window(-2, 2, 8), eps8, Complex(0.95)));

  // eps >= R + |lambda| makes everything a member
  const OperatorSpec per = oracles::per3_b();
  CHECK(member(per, Method::Tau, 3, window(-3, 3, 3),
               per.norm_bound() + 2.0, Complex(2.0)));
}

TEST_CASE("kn_select") {
  const OperatorSpec shift = oracles::shift_operator();
  CHECK(kn_select(shift, 5, -20, 20).ks().size() == 1);

  const OperatorSpec per = oracles::per3_a();
  const IndexFamily k3 = kn_select(per, 6, -10, 10);
  CHECK(k3.ks().size() <= 3);

  CHECK_THROWS_AS(kn_select(per, 4, 3, 2), EmptyWindow);

  // net property: every k in the window has a representative within 1/n in
  // Frobenius norm on both one-sided sections
  const OperatorSpec ex = oracles::paired_laurent(0.35, 40);
  const std::size_t n = 3;
  const IndexFamily reps = kn_select(ex, n, -20, 20);
  const OperatorSpec adj = adjoint(ex);
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::int64_t> pick(-20, 20);
  for (int rep = 0; rep < 50; ++rep) {
    const std::int64_t k = pick(rng);
    const CMatrix fk = extract_rect(ex, n, k).matrix;
    const CMatrix ak = extract_rect(adj, n, k).matrix;
    bool covered = false;
    for (std::int64_t j : reps.ks()) {
      const double df = CMatrix::frobenius_dist(fk, extract_rect(ex, n, j).matrix);
      const double da = CMatrix::frobenius_dist(ak, extract_rect(adj, n, j).matrix);
      if (df <= 1.0 / n && da <= 1.0 / n) {
        covered = true;
        break;
      }
    }
    CHECK(covered);
  }
}

TEST_CASE("pseudoergodic enumeration counts") {
  const SymbolAlphabet fz = oracles::feinberg_zee();
  CHECK(enumerate_pseudoergodic(fz, 6, Method::Tau).mats().size() == 32);
  CHECK(enumerate_pseudoergodic(fz, 6, Method::Pi).mats().size() == 64);

  const SymbolAlphabet single{{Complex(0.5)}, {Complex(1.0)}, {Complex(2.0)}};
  CHECK(enumerate_pseudoergodic(single, 5, Method::Tau).mats().size() == 1);

  CHECK_THROWS_AS(enumerate_pseudoergodic(fz, 34, Method::Tau), TooMany);
}

TEST_CASE("pi enumeration corners add onto small sections") {
  const SymbolAlphabet single{{Complex(2.0)}, {Complex(5.0)}, {Complex(3.0)}};
  const Complex t(0.0, 1.0);
  const IndexFamily fam = enumerate_pseudoergodic(single, 1, Method::Pi, t);
  REQUIRE(fam.mats().size() == 1);
  CHECK(std::abs(fam.mats()[0](0, 0) -
                 (Complex(5.0) + t * 2.0 + std::conj(t) * 3.0)) <= 1e-15);
}

TEST_CASE("grid_points") {
  // enumeration oracle: j^2 + k^2 < (1.1 * 2)^2 = 4.84
  std::size_t count = 0;
  for (int j = -3; j <= 3; ++j) {
    for (int k = -3; k <= 3; ++k) {
      if (j * j + k * k < 4.84) ++count;
    }
  }
  CHECK(count == 13);
  CHECK(grid_points({2, 1.1}).points.size() == 13);

  const PointSet tiny = grid_points({1, 0.5});
  REQUIRE(tiny.points.size() == 1);
  CHECK(tiny.points[0] == Complex(0.0, 0.0));

  // lattice symmetry under negation and conjugation
  const PointSet g = grid_points({3, 1.7});
  auto contains = [&](Complex z) {
    for (const Complex& p : g.points) {
      if (std::abs(p - z) <= 1e-15) return true;
    }
    return false;
  };
  for (const Complex& p : g.points) {
    CHECK(contains(-p));
    CHECK(contains(std::conj(p)));
  }
}

TEST_CASE("gamma_fin on the shift matches the closed-form filter") {
  const OperatorSpec shift = oracles::shift_operator();
  const std::size_t n = 4;
  const DilatedPointSet got = gamma_fin(shift, n, window(-2, 2, n));
  CHECK(got.dilation_radius == doctest::Approx(0.5));

  const double eps = 22.0 / 35.0 + 3.0 / 4.0;  // eps*_4 + 3/4 with r(A) = 1
  CHECK(got.threshold == doctest::Approx(eps).epsilon(1e-15));
  std::size_t expect = 0;
  for (const Complex& z : grid_points({n, 1.0}).points) {
    if (oracles::shift_v(n, z) <= eps) ++expect;
  }
  CHECK(got.centers.points.size() == expect);
  for (const Complex& z : got.centers.points) {
    CHECK(oracles::shift_v(n, z) <= eps + 1e-9);
  }
}

TEST_CASE("gamma_fin of the zero operator keeps |lambda| <= 3/n") {
  const OperatorSpec zero(DiagonalGen::constant(CMatrix::from_rows(1, 1, {0.0})),
                          DiagonalGen::constant(CMatrix::from_rows(1, 1, {0.0})),
                          DiagonalGen::constant(CMatrix::from_rows(1, 1, {0.0})));
  // R = 0 means an empty grid; use a positive beta bound to get a grid at all
  const OperatorSpec tiny(DiagonalGen::constant(CMatrix::from_rows(1, 1, {0.0})),
                          DiagonalGen::constant(CMatrix::from_rows(1, 1, {0.0})),
                          DiagonalGen::constant(CMatrix::from_rows(1, 1, {0.0})),
                          0.0, 1.0, 0.0);
  const std::size_t n = 5;
  const DilatedPointSet got = gamma_fin(tiny, n, window(0, 0, n));
  for (const Complex& z : grid_points({n, 1.0}).points) {
    const bool in =
        std::find_if(got.centers.points.begin(), got.centers.points.end(),
                     [&](Complex w) { return std::abs(w - z) < 1e-15; }) !=
        got.centers.points.end();
    CHECK(in == (std::abs(z) <= 3.0 / n + 1e-12));
  }
}

TEST_CASE("pi_fin with a diagonal alphabet keeps a disc around beta") {
  const SymbolAlphabet diag{{Complex(0.0)}, {Complex(1.5)}, {Complex(0.0)}};
  const std::size_t n = 6;
  const DilatedPointSet got = pi_fin(diag, n, Complex(1.0));
  const double eps = got.threshold;
  CHECK(eps == doctest::Approx(3.0 / n).epsilon(1e-15));  // eps† = 0 here
  for (const Complex& z : got.centers.points) {
    CHECK(std::abs(z - Complex(1.5)) <= eps + 1e-9);
  }
  CHECK(!got.centers.points.empty());
}

TEST_CASE("pi_fin over the sign-flip alphabet keeps the unit disc") {
  const std::size_t n = 4;
  const DilatedPointSet got = pi_fin(oracles::feinberg_zee(), n, Complex(1.0));
  // the open unit disc sits inside the spectrum, so interior grid points with
  // a 1/n margin must all be members
  for (const Complex& z : grid_points({n, 2.0}).points) {
    if (std::abs(z) > 1.0 - 1.0 / static_cast<double>(n)) continue;
    const bool in =
        std::find_if(got.centers.points.begin(), got.centers.points.end(),
                     [&](Complex w) { return std::abs(w - z) < 1e-15; }) !=
        got.centers.points.end();
    CHECK(in);
  }
}

TEST_CASE("pi_fin with a singleton alphabet hugs the rotated roots of unity") {
  const SymbolAlphabet shift{{Complex(1.0)}, {Complex(0.0)}, {Complex(0.0)}};
  const std::size_t n = 8;
  const DilatedPointSet got = pi_fin(shift, n, Complex(1.0));
  CHECK(!got.centers.points.empty());
  // members live within the threshold of T_n (periodised sections are normal)
  for (const Complex& z : got.centers.points) {
    double d = 1e300;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = 2.0 * kPi * static_cast<double>(j) / n;
      d = std::min(d, std::abs(z - Complex(std::cos(ang), std::sin(ang))));
    }
    CHECK(d <= got.threshold + 1e-9);
  }
}

TEST_CASE("periodic oracle samples are tau and pi members at their penalties") {
  const OperatorSpec per = oracles::per3_a();
  const PointSet samples = periodic_spectrum(per, 128);
  const std::size_t n = 8;
  const double r = per.alpha_max(), s = per.gamma_max();
  const SectionFamily tau =
      SectionFamily::resolve(per, Method::Tau, n, window(-4, 4, n));
  const SectionFamily pi1 =
      SectionFamily::resolve(per, Method::Pi, n, window(-4, 4, n), Complex(1.0));
  const double eps_t = eps_tau(n, r, s).value;
  const double eps_p = eps_pi(n, r, s);
  for (const Complex& lam : samples.points) {
    CHECK(tau.member(lam, eps_t));
    CHECK(pi1.member(lam, eps_p));
  }
}

TEST_CASE("bdo_inflate") {
  CHECK(bdo_inflate(0.3, 0.0) == 0.3);
  CHECK(bdo_inflate(0.1, 0.05) == doctest::Approx(0.15));
  CHECK(bdo_inflate(bdo_inflate(0.1, 0.05), 0.05) == doctest::Approx(0.2));
  CHECK_THROWS_AS(bdo_inflate(0.1, -0.01), NegativeDelta);

  // Wiener tail for kappa_k = 2^{-|k|}: eta_3 = 0.25 by direct summation
  double eta3 = 0.0;
  for (int k = 4; k < 60; ++k) eta3 += 2.0 * std::pow(2.0, -k);
  CHECK(eta3 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(bdo_inflate(0.5, eta3) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("hausdorff distance") {
  PointSet a;
  a.points = {Complex(0, 0), Complex(1, 0), Complex(0, 1)};
  CHECK(hausdorff(a, a) == 0.0);

  PointSet origin;
  origin.points = {Complex(0, 0)};
  PointSet circle;
  for (int m = 0; m < 256; ++m) {
    const double ang = 2.0 * kPi * m / 256.0;
    circle.points.emplace_back(std::cos(ang), std::sin(ang));
  }
  CHECK(hausdorff(origin, circle) == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937 rng(33);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_set = [&] {
    PointSet s;
    for (int i = 0; i < 7; ++i) s.points.emplace_back(u(rng), u(rng));
    return s;
  };
  for (int rep = 0; rep < 20; ++rep) {
    const PointSet x = random_set(), y = random_set(), z = random_set();
    CHECK(hausdorff(x, z) <= hausdorff(x, y) + hausdorff(y, z) + 1e-12);
  }

  CHECK_THROWS_AS(hausdorff(PointSet{}, a), EmptySet);
}

TEST_CASE("mu is 1-Lipschitz in lambda") {
  const OperatorSpec per = oracles::per3_b();
  const SectionFamily fam = SectionFamily::resolve(
      per, Method::Tau1, 6, window(-6, 6, 6), Complex(1.0));
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 200; ++rep) {
    const Complex l1(u(rng), u(rng)), l2(u(rng), u(rng));
    const double d = std::abs(fam.mu(l1) - fam.mu(l2));
    CHECK(d <= std::abs(l1 - l2) + 3e-12);
  }
}

TEST_CASE("strict-inclusion witness: positive local minimum at zero") {
  const double delta = 0.3;
  const OperatorSpec ex = oracles::paired_laurent(delta);
  const SectionFamily fam = SectionFamily::resolve(
      ex, Method::Tau1, 2, window(-10, 10, 2), Complex(1.0));
  CHECK(fam.mu(Complex(0.0)) == doctest::Approx(delta).epsilon(1e-10));
  double ring_min = 1e300;
  for (int m = 0; m < 64; ++m) {
    const double ang = 2.0 * kPi * m / 64.0;
    ring_min = std::min(ring_min,
                        fam.mu(1e-3 * Complex(std::cos(ang), std::sin(ang))));
  }
  CHECK(ring_min > delta - 1e-9);
}

TEST_CASE("mu_grid is deterministic across thread counts") {
  const OperatorSpec per = oracles::per3_b();
  const SectionFamily fam = SectionFamily::resolve(
      per, Method::Tau1, 4, window(-4, 4, 4), Complex(1.0));
  const double eps = eps_tau1(4, per.alpha_max(), per.gamma_max());
  const MuGrid a = mu_grid(fam, Method::Tau1, 4, {6, 2.2}, eps, 1);
  const MuGrid b = mu_grid(fam, Method::Tau1, 4, {6, 2.2}, eps, 3);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i] == b.points[i]);
    CHECK(a.mu_values[i] == b.mu_values[i]);
    CHECK(a.members[i] == b.members[i]);
  }
}

TEST_CASE("mu_tau1 on a blocked operator matches the dense route") {
  BandSpec band;
  band.width = 2;
  band.diags = {oracles::periodic_scalar({0.3, 0.3, 0.3}),
                oracles::periodic_scalar({1, 1, 1}),
                oracles::periodic_scalar({-0.5, 2, 0.25}),
                oracles::periodic_scalar({1, -1, 1}),
                oracles::periodic_scalar({0.7, 0.7, 0.7})};
  const OperatorSpec blocked = block_reduce(band, 2);
  const OperatorSpec adj = adjoint(blocked);
  const Complex lambda(0.6, -0.4);
  const std::size_t n = 3;

  double dense = 1e300;
  for (std::int64_t k : {-1, 0, 1}) {
    dense = std::min(dense, oracles::smin_eig_route(
                                rect_shifted(blocked, n, k, lambda)));
    dense = std::min(dense, oracles::smin_eig_route(
                                rect_shifted(adj, n, k, std::conj(lambda))));
  }
  const double fast = mu_tau1(blocked, n, window(-1, 1, n), lambda);
  CHECK(std::abs(fast - dense) <= 1e-9);
}

TEST_CASE("thread count resolution honours the environment") {
  setenv("SPECBOX_THREADS", "5", 1);
  CHECK(effective_threads(0) == 5);
  CHECK(effective_threads(2) == 2);  // explicit hint wins
  unsetenv("SPECBOX_THREADS");
  CHECK(effective_threads(0) >= 1);
}

TEST_CASE("empty families are rejected") {
  CHECK_THROWS_AS(IndexFamily::explicit_k({}), EmptyFamily);
  CHECK_THROWS_AS(IndexFamily::matrices({}), EmptyFamily);
  CHECK_THROWS_AS(IndexFamily::window_scan(2, 1, 0.5), EmptyWindow);
}
