#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "specbox/oracle.hpp"

using namespace specbox;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("shift_sets geometry") {
  const ShiftRegion tau = shift_sets(5, Method::Tau);
  CHECK(tau.kind == ShiftRegionKind::Disc);
  CHECK(tau.contains(Complex(0.3, -0.4)));
  CHECK(tau.contains(Complex(1.0, 0.0)));
  CHECK_FALSE(tau.contains(Complex(1.0001, 0.0)));

  const ShiftRegion t1 = shift_sets(8, Method::Tau1);
  CHECK(t1.kind == ShiftRegionKind::Annulus);
  const double eps = 2.0 * std::sin(kPi / 18.0);
  CHECK(t1.inner == doctest::Approx(1.0 - eps * eps).epsilon(1e-14));
  CHECK(t1.inner == doctest::Approx(0.8793852).epsilon(1e-6));
  CHECK_FALSE(t1.contains(Complex(0.5, 0.0)));
  CHECK(t1.contains(Complex(0.95, 0.0)));

  CHECK(shift_sets(1, Method::Tau1).kind == ShiftRegionKind::Disc);
  CHECK(shift_sets(2, Method::Tau1).kind == ShiftRegionKind::Disc);

  const ShiftRegion pi4 = shift_sets(4, Method::Pi, Complex(1.0));
  CHECK(pi4.kind == ShiftRegionKind::DiscUnion);
  REQUIRE(pi4.centers.size() == 4);
  CHECK(pi4.disc_radius == doctest::Approx(2.0 * std::sin(kPi / 8.0)));
  // centers are the 4th roots of unity
  for (const Complex& c : pi4.centers) {
    CHECK(std::abs(std::pow(c, 4) - Complex(1.0)) <= 1e-12);
  }
}

TEST_CASE("shift_sets pi centers are branch independent as a set") {
  const Complex t(0.0, 1.0);  // i
  const ShiftRegion principal = shift_sets(4, Method::Pi, t);
  // the other branch: rotate every center by a primitive 4th root of unity
  for (const Complex& c : principal.centers) {
    const Complex rotated = c * Complex(0.0, 1.0);
    bool found = false;
    for (const Complex& d : principal.centers) {
      if (std::abs(rotated - d) <= 1e-12) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("periodic_spectrum of the shift lies on the circle") {
  const PointSet pts = periodic_spectrum(oracles::shift_operator(), 64);
  CHECK(pts.points.size() == 64);
  for (const Complex& z : pts.points) {
    CHECK(std::abs(std::abs(z) - 1.0) <= 1e-12);
  }
}

TEST_CASE("laurent symbol samples match direct evaluation") {
  const OperatorSpec laurent(
      DiagonalGen::constant(CMatrix::from_rows(1, 1, {Complex(0.5)})),
      DiagonalGen::constant(CMatrix::from_rows(1, 1, {Complex(1.0)})),
      DiagonalGen::constant(CMatrix::from_rows(1, 1, {Complex(2.0)})));
  const SymbolSweep sweep = periodic_symbol_sweep(laurent, 32);
  REQUIRE(sweep.samples.size() == 32);
  for (std::size_t m = 0; m < sweep.samples.size(); ++m) {
    const Complex z = sweep.samples[m];
    REQUIRE(sweep.eigenvalues[m].size() == 1);
    const Complex want = 0.5 * z + 1.0 + 2.0 / z;
    CHECK(std::abs(sweep.eigenvalues[m][0] - want) <= 1e-12);
  }
}

TEST_CASE("3-periodic sweep has p eigenvalues per sample") {
  const SymbolSweep sweep = periodic_symbol_sweep(oracles::per3_a(), 16);
  for (const auto& eigs : sweep.eigenvalues) CHECK(eigs.size() == 3);
  CHECK(periodic_spectrum(oracles::per3_a(), 512).points.size() == 1536);
}

TEST_CASE("periodic sections are k independent") {
  for (std::int64_t k : {1, 2}) {
    const PointSet a = periodic_spectrum(oracles::per3_a(), 64);
    const PointSet b = periodic_symbol_sweep(oracles::per3_a(), 64, k).flatten();
    CHECK(hausdorff(a, b) <= 1e-9);
  }
}

TEST_CASE("fixed-t section samples sit inside the full sweep") {
  const OperatorSpec per = oracles::per3_b();
  const PointSet full = periodic_spectrum(per, 512);
  const CMatrix sec = extract_periodised(per, 3, 0, Complex(1.0)).matrix;
  for (const Complex& lam : complex_eigenvalues_small(sec)) {
    double d = 1e300;
    for (const Complex& q : full.points) d = std::min(d, std::abs(lam - q));
    CHECK(d <= 1e-9);  // t = 1 is one of the 512 samples
  }
}

TEST_CASE("block-Laurent flip operator has the two-point spectrum") {
  // 2-periodic scalar operator whose 2-blocking is diagonal with the flip
  // block [[0,1],[1,0]]: the spectrum is exactly {-1, 1}
  BandSpec band;
  band.width = 1;
  band.diags = {oracles::periodic_scalar({1, 0}),   // gamma_j = a_{j-1,j}
                oracles::periodic_scalar({0, 0}),   // beta
                oracles::periodic_scalar({0, 1})};  // alpha_j = a_{j+1,j}
  const OperatorSpec blocked = block_reduce(band, 2);
  CHECK(blocked.block_dim() == 2);
  CHECK(blocked.alpha().at(0).frobenius_norm() == 0.0);
  CHECK(blocked.gamma().at(0).frobenius_norm() == 0.0);

  const PointSet pts = periodic_spectrum(blocked, 32);
  CHECK(pts.points.size() == 64);
  for (const Complex& z : pts.points) {
    CHECK(std::min(std::abs(z - Complex(1.0)), std::abs(z + Complex(1.0))) <=
          1e-9);
  }

  // the scalar 2-periodic route must agree
  const OperatorSpec scalar_op(oracles::periodic_scalar({0, 1}),
                               oracles::periodic_scalar({0, 0}),
                               oracles::periodic_scalar({1, 0}));
  for (const Complex& z : periodic_spectrum(scalar_op, 32).points) {
    CHECK(std::min(std::abs(z - Complex(1.0)), std::abs(z + Complex(1.0))) <=
          1e-9);
  }
}

TEST_CASE("an 8-periodic restatement of the shift still samples the circle") {
  std::vector<CMatrix> ones(8, CMatrix::from_rows(1, 1, {Complex(1.0)}));
  std::vector<CMatrix> zeros(8, CMatrix::from_rows(1, 1, {Complex(0.0)}));
  const OperatorSpec shift8(DiagonalGen::periodic(ones),
                            DiagonalGen::periodic(zeros),
                            DiagonalGen::periodic(zeros));
  const PointSet pts = periodic_spectrum(shift8, 16);
  CHECK(pts.points.size() == 128);  // degree-8 sections per sample
  for (const Complex& z : pts.points) {
    CHECK(std::abs(std::abs(z) - 1.0) <= 1e-8);
  }
}

TEST_CASE("non-periodic input is rejected") {
  const OperatorSpec ex = oracles::paired_laurent(0.3);
  CHECK_THROWS_AS(periodic_spectrum(ex, 64), PeriodMismatch);
  CHECK_THROWS_AS(periodic_spectrum(oracles::shift_operator(), 4),
                  InvalidArgument);
}

TEST_CASE("period union of the sign-flip alphabet") {
  const SymbolAlphabet fz = oracles::feinberg_zee();

  // p = 1 words: z + 1/z (real segment) and -z + 1/z (imaginary segment)
  const PointSet p1 = pseudoergodic_period_union(fz, 1, 64);
  for (const Complex& z : p1.points) {
    CHECK((std::abs(z.imag()) <= 1e-9 || std::abs(z.real()) <= 1e-9));
  }

  // single word: one ellipse
  const SymbolAlphabet single{{Complex(0.5)}, {Complex(1.0)}, {Complex(2.0)}};
  const PointSet ellipse = pseudoergodic_period_union(single, 1, 64);
  for (const Complex& z : ellipse.points) {
    // (x-1)/2.5 and y/1.5 parametrize the ellipse of E(0.5, 1, 2)
    const double x = (z.real() - 1.0) / 2.5;
    const double y = z.imag() / 1.5;
    CHECK(std::abs(x * x + y * y - 1.0) <= 1e-9);
  }

  // unions grow with the period cap
  const PointSet p2 = pseudoergodic_period_union(fz, 2, 64);
  double directed = 0.0;
  for (const Complex& z : p1.points) {
    double best = 1e300;
    for (const Complex& w : p2.points) best = std::min(best, std::abs(z - w));
    directed = std::max(directed, best);
  }
  CHECK(directed <= 1e-12);
  CHECK(p2.points.size() > p1.points.size());

  CHECK_THROWS_AS(pseudoergodic_period_union(fz, 30, 64), TooMany);
}

TEST_CASE("oracle samples pass the tau1 membership bridge") {
  const OperatorSpec per = oracles::per3_a();
  const PointSet samples = periodic_spectrum(per, 128);
  for (std::size_t n : {8, 16}) {
    const IndexFamily fam = kn_select(per, n, -6, 6);
    const SectionFamily sections =
        SectionFamily::resolve(per, Method::Tau1, n, fam);
    const double eps = eps_tau1(n, per.alpha_max(), per.gamma_max());
    for (const Complex& lam : samples.points) {
      CHECK(sections.member(lam, eps));
    }
  }
}
