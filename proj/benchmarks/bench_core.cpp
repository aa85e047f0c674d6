#include <benchmark/benchmark.h>

#include "pfe/recurrence.hpp"
#include "pfe/weights.hpp"

using namespace pfe;

static void BM_WeightScanRational(benchmark::State& state) {
  Prime p(3);
  PAdicElement alpha = rational_elt(make_rat(5, 2));
  Int N(state.range(0));
  for (auto _ : state) {
    ScanReport rep = weight_empirical(p, alpha, Int(0), N);
    benchmark::DoNotOptimize(rep.mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeightScanRational)->Range(1 << 12, 1 << 20);

static void BM_BoundedOrdMeanScan(benchmark::State& state) {
  Prime p(2);
  Int N(state.range(0));
  for (auto _ : state) {
    ScanReport rep = bounded_ord_mean_scan(p, 3, N);
    benchmark::DoNotOptimize(rep.mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BoundedOrdMeanScan)->Range(1 << 12, 1 << 20);

static void BM_OrdFactorial(benchmark::State& state) {
  Prime p(5);
  for (auto _ : state) {
    for (long n = 1; n <= state.range(0); ++n)
      benchmark::DoNotOptimize(ord_factorial(p, Int(n)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_OrdFactorial)->Range(1 << 8, 1 << 14);

static void BM_PolyMul(benchmark::State& state) {
  std::vector<Rat> ca, cb;
  for (long i = 0; i <= state.range(0); ++i) {
    ca.push_back(make_rat(i + 1, 2 * i + 3));
    cb.push_back(make_rat(3 * i - 7, i + 5));
  }
  Poly a(ca), b(cb);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMul)->Arg(8)->Arg(20);

static void BM_ForwardSolve(benchmark::State& state) {
  Prime p(3);
  OdeE E{Poly::from_longs({1}), Poly(), Poly::from_longs({-1})};  // y'' - y = 0
  Recurrence R = derive_recurrence(p, E);
  Jet init{{Rat(1), Rat(0)}};
  for (auto _ : state) {
    SeriesPrefix s = forward_solve(R, init, state.range(0));
    benchmark::DoNotOptimize(s.coeffs.back());
  }
}
BENCHMARK(BM_ForwardSolve)->Arg(64)->Arg(256);

static void BM_HenselSqrt(benchmark::State& state) {
  Prime p(7);
  for (auto _ : state) benchmark::DoNotOptimize(hensel_sqrt(p, Int(2), state.range(0)));
}
BENCHMARK(BM_HenselSqrt)->Arg(8)->Arg(64);

BENCHMARK_MAIN();
