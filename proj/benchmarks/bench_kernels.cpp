#include <benchmark/benchmark.h>

#include "scp/arith.hpp"
#include "scp/lfunc.hpp"
#include "scp/quadforms.hpp"
#include "scp/shifted.hpp"
#include "scp/special.hpp"

namespace {

using namespace scp;

void BM_RamanujanTau(benchmark::State& state) {
  const auto M = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(arith::ramanujan_tau(M));
  state.SetComplexityN(M);
}
BENCHMARK(BM_RamanujanTau)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_EnumeratePoints(benchmark::State& state) {
  const auto f = quadforms::QuadraticForm::parse("3;2 1 0 2 1 4");
  const auto M = state.range(0);
  std::size_t points = 0;
  for (auto _ : state) {
    const auto pts = quadforms::enumerate_points(f, M);
    points = pts.size();
    benchmark::DoNotOptimize(pts.norms.data());
  }
  state.counters["points"] = static_cast<double>(points);
}
BENCHMARK(BM_EnumeratePoints)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_QuadShiftSum(benchmark::State& state) {
  const double Y = static_cast<double>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  const auto table = arith::delta_coefficients(static_cast<std::int64_t>(2 * Y) + 2);
  const auto f = quadforms::sum_of_two_squares();
  const auto p = quadforms::SphericalPoly::constant(2);
  const shifted::WeightFn W{shifted::WeightFamily::compact_bump, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(shifted::quad_shift_sum(table, f, p, 1, Y, W, threads));
}
BENCHMARK(BM_QuadShiftSum)
    ->ArgsProduct({{10000, 100000}, {1, 4}})
    ->ArgNames({"Y", "threads"})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_WhittakerW(benchmark::State& state) {
  const special::WhittakerParams params{0.3, {0.0, 1.5}};
  const double y = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(special::whittaker_w(params, y));
}
BENCHMARK(BM_WhittakerW)->DenseRange(-6, 1)->Unit(benchmark::kMicrosecond);

void BM_CentralValueEisenstein(benchmark::State& state) {
  const auto rep = arith::formal_ones_rep();
  const auto chi = arith::dirichlet_char(state.range(0), 0);
  for (auto _ : state) benchmark::DoNotOptimize(lfunc::central_value(rep, chi, {}));
}
BENCHMARK(BM_CentralValueEisenstein)->Arg(1)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
