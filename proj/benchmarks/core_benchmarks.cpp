#include <benchmark/benchmark.h>

#include "hasse/census.hpp"
#include "hasse/globalsearch.hpp"
#include "hasse/localsolve.hpp"

namespace {

using namespace hasse;

void BM_KthRootMod(benchmark::State& state) {
  const i64 p = 1'000'003;
  i64 a = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kth_root_mod(a, 3, p));
    a = a % (p - 1) + 1;
  }
}
BENCHMARK(BM_KthRootMod);

void BM_CertifyThue(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(certify(ThueEquation{431, -107, k}));
}
BENCHMARK(BM_CertifyThue)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_CertifySelmer(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify(FermatEquation{3, 4, 5, 3}));
}
BENCHMARK(BM_CertifySelmer)->Unit(benchmark::kMillisecond);

void BM_LocalStrategy(benchmark::State& state) {
  LocalOptions options;
  options.shortcuts = false;
  options.strategy = state.range(0) == 0 ? SearchStrategy::unit_fibres : SearchStrategy::exhaustive_points;
  for (auto _ : state) benchmark::DoNotOptimize(thue_local({16, 27, 4}, 2, options));
}
BENCHMARK(BM_LocalStrategy)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_ThueSolutions(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(thue_solutions({3, 4, 3}, state.range(0)));
}
BENCHMARK(BM_ThueSolutions)->Arg(100)->Arg(1000);

void BM_ThueCensus(benchmark::State& state) {
  const i64 H = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(thue_census(4, {H}));
}
BENCHMARK(BM_ThueCensus)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
