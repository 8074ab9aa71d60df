#include <benchmark/benchmark.h>

#include "germscan/float_eval.hpp"
#include "germscan/polynomial.hpp"

using namespace germscan;

namespace {

HermitianPolynomial mmz() {
  BiPolynomial x1 = BiPolynomial::re(4, 0), x2 = BiPolynomial::re(4, 1), x3 = BiPolynomial::re(4, 2),
               x4 = BiPolynomial::re(4, 3);
  return HermitianPolynomial(x1 * x1 - x2 * x2 + x3 * x3 - pow(x4, 3));
}

void BM_ExactEval(benchmark::State& state) {
  const auto rho = mmz();
  const QPoint z{ComplexRational(Rational(3, 7), 1), ComplexRational(2), ComplexRational(0, Rational(-1, 3)),
                 ComplexRational(Rational(5, 11))};
  for (auto _ : state) benchmark::DoNotOptimize(eval_hermitian(rho, z, z));
}
BENCHMARK(BM_ExactEval);

void BM_FloatEvalWithGradient(benchmark::State& state) {
  const CompiledHermitian f(mmz());
  const CPoint z{{0.4, 1.0}, {2.0, 0.0}, {0.0, -0.3}, {0.45, 0.0}};
  std::vector<std::complex<double>> dz, dw;
  for (auto _ : state) benchmark::DoNotOptimize(f.eval_with_gradient(z, z, dz, dw));
}
BENCHMARK(BM_FloatEvalWithGradient);

}  // namespace
