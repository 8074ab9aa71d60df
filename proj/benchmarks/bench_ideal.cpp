#include <benchmark/benchmark.h>

#include "germscan/dangelo.hpp"

using namespace germscan;

namespace {

void BM_InequalityChainMaximalPower(benchmark::State& state) {
  const auto ideal = MonomialIdeal::maximal_power(3, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_inequality_chain(ideal));
}
BENCHMARK(BM_InequalityChainMaximalPower)->DenseRange(2, 6, 2);

void BM_HoloDecompose(benchmark::State& state) {
  const std::size_t n = 3;
  BiPolynomial poly(n);
  for (unsigned a = 0; a <= 2; ++a) {
    for (unsigned b = 0; b <= 2; ++b) {
      if (a + b == 0) continue;
      const ComplexRational c(Rational(a + 1) / Rational(b + 2), Rational(a));
      poly.add_term(MultiIndex{a, b, 0}, MultiIndex{b, 0, a}, c);
      poly.add_term(MultiIndex{b, 0, a}, MultiIndex{a, b, 0}, c.conj());
    }
  }
  const HermitianPolynomial rho(poly);
  for (auto _ : state) benchmark::DoNotOptimize(holo_decompose(rho));
}
BENCHMARK(BM_HoloDecompose);

}  // namespace
