#include <benchmark/benchmark.h>

#include <cmath>

#include "germscan/grid.hpp"

using namespace germscan;

namespace {

HermitianPolynomial mmz() {
  BiPolynomial x1 = BiPolynomial::re(4, 0), x2 = BiPolynomial::re(4, 1), x3 = BiPolynomial::re(4, 2),
               x4 = BiPolynomial::re(4, 3);
  return HermitianPolynomial(x1 * x1 - x2 * x2 + x3 * x3 - pow(x4, 3));
}

// kappa given by the benchmark argument, at the point (sqrt(1 + 0.2^3), 1, 0, 0.2)
void BM_SearchGrid(benchmark::State& state) {
  const auto rho = mmz();
  const CPoint p{{std::sqrt(1.008), 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.2, 0.0}};
  SearchConfig cfg;
  const auto kappa = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_grid(rho, p, cfg, kappa, cfg.eps0, {0}));
}
BENCHMARK(BM_SearchGrid)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ClassifyOut(benchmark::State& state) {
  const auto rho = mmz();
  const CPoint p{{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}};
  SearchConfig cfg;
  cfg.kappas = {1};
  for (auto _ : state) benchmark::DoNotOptimize(classify_point(rho, p, cfg));
}
BENCHMARK(BM_ClassifyOut)->Unit(benchmark::kMillisecond);

}  // namespace
