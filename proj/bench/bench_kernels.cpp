#include <benchmark/benchmark.h>

#include "lowdeg/estimators.hpp"
#include "lowdeg/oracle.hpp"

namespace {

using namespace lowdeg;

void BM_GramSubmatrix(benchmark::State& state) {
  OracleOptions oo;
  oo.parallel = state.range(0) != 0;
  SubmatrixParams p{5, 1.0, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(build_gram(p, 3, oo).G.sum());
}
BENCHMARK(BM_GramSubmatrix)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_McWignerSaw(benchmark::State& state) {
  WignerParams w;
  w.n = 60;
  w.lambda = 1.5;
  EstimatorSpec spec{EstimatorKind::SawWigner, 0, 3, w};
  for (auto _ : state) benchmark::DoNotOptimize(mc_correlation(spec, 500, 1, state.range(0) != 0).corr);
}
BENCHMARK(BM_McWignerSaw)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_TreeSecondMoment(benchmark::State& state) {
  SubmatrixParams p{7, 0.8, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(exact_second_moment_tree(p, 0, state.range(0) != 0).exact);
}
BENCHMARK(BM_TreeSecondMoment)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
