#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "specbox/inclusion.hpp"
#include "specbox/linalg.hpp"
#include "specbox/oracle.hpp"
#include "specbox/penalty.hpp"

using namespace specbox;

namespace {

DiagonalGen periodic_scalar(std::vector<double> vals) {
  std::vector<CMatrix> blocks;
  for (double v : vals) blocks.push_back(CMatrix::from_rows(1, 1, {Complex(v)}));
  return DiagonalGen::periodic(std::move(blocks));
}

OperatorSpec per3() {
  return OperatorSpec(periodic_scalar({0, 0, 0}), periodic_scalar({-1.5, 1, 1}),
                      periodic_scalar({1, 2, 1}));
}

void BM_SmallestSingularValue(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(n + 2, n);
  for (std::size_t j = 0; j < n; ++j) {
    m(j, j) = Complex(u(rng), u(rng));
    m(j + 1, j) = Complex(u(rng), u(rng));
    m(j + 2, j) = Complex(u(rng), u(rng));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(smallest_singular_value(m));
  }
}
BENCHMARK(BM_SmallestSingularValue)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_ShiftKernelNu(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const OperatorSpec op = per3();
  const ShiftKernel kern(extract_rect(op, n, 0).matrix, 1, true);
  const Complex lambda(0.3, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kern.nu(lambda));
  }
}
BENCHMARK(BM_ShiftKernelNu)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_ShiftKernelMember(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const OperatorSpec op = per3();
  const ShiftKernel kern(extract_rect(op, n, 0).matrix, 1, true);
  const Complex lambda(0.3, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kern.nu_greater(lambda, 0.25));
  }
}
BENCHMARK(BM_ShiftKernelMember)->Arg(16)->Arg(64);

void BM_EpsTauOptimal(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eps_tau(n, 1.0, 2.0).value);
  }
}
BENCHMARK(BM_EpsTauOptimal)->Arg(4)->Arg(16)->Arg(64);

void BM_HermitianEigenvalues(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
  }
  const CMatrix h = gram(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigenvalues(h));
  }
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(8)->Arg(24)->Arg(50);

void BM_GammaFinSweep(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const OperatorSpec op = per3();
  const IndexFamily fam =
      IndexFamily::window_scan(-4, 4, 1.0 / static_cast<double>(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_fin(op, n, fam, 0.0, 1));
  }
}
BENCHMARK(BM_GammaFinSweep)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FeinbergZeeMember(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const SymbolAlphabet fz{{Complex(-1.0), Complex(1.0)}, {Complex(0.0)}, {Complex(1.0)}};
  const SectionFamily fam = SectionFamily::squares(
      enumerate_pseudoergodic(fz, n, Method::Tau).mats(), 1);
  const double eps = eps_tau(n, 1.0, 1.0).value;
  const Complex lambda(0.4, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fam.member(lambda, eps));
  }
}
BENCHMARK(BM_FeinbergZeeMember)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
