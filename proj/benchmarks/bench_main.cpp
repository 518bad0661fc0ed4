#include <benchmark/benchmark.h>

#include "xdof/allocator.hpp"
#include "xdof/bounds.hpp"
#include "xdof/channel.hpp"
#include "xdof/subspace.hpp"
#include "xdof/synthesis.hpp"

namespace {

using namespace xdof;

const std::array<Rational, 4> kUnit{1, 1, 1, 1};

void BM_OuterBoundLp(benchmark::State& state) {
  const AntennaConfig cfg{4, 5, 3, 6};
  const DofRegion region = x_outer_region(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(lp_max_weighted(region, {1, 2, 3, 1}));
}
BENCHMARK(BM_OuterBoundLp);

void BM_SolveIlp(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const int T = static_cast<int>(state.range(1));
  const AntennaConfig cfg{M, M, 3, 3};
  const IlpProblem p = build_p0(cfg, generic_dims(cfg), T);
  long long nodes = 0;
  for (auto _ : state) {
    const AllocationResult r = solve_ilp(p);
    nodes = r.stats.nodes;
    benchmark::DoNotOptimize(r.dof);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_SolveIlp)->Args({3, 1})->Args({3, 3})->Args({4, 3})->Args({6, 6});

void BM_SweepBest(benchmark::State& state) {
  const AntennaConfig cfg{4, 5, 3, 6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_best(cfg, RankProfile::full(cfg), MessageMask::x(), kUnit).dof);
  }
}
BENCHMARK(BM_SweepBest);

void BM_GridSweep(benchmark::State& state) {
  for (auto _ : state) {
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b)
        for (int c = 1; c <= 4; ++c)
          for (int d = 1; d <= 4; ++d) {
            const AntennaConfig cfg{a, b, c, d};
            benchmark::DoNotOptimize(sweep_best(cfg, RankProfile::full(cfg), MessageMask::x(), kUnit).dof);
          }
  }
}
BENCHMARK(BM_GridSweep)->Unit(benchmark::kMillisecond);

void BM_JointDecomposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream rng(1, 0);
  const CMatrix A = rng.complex_gaussian_matrix(n, n), B = rng.complex_gaussian_matrix(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(gsvd(A, B).s);
}
BENCHMARK(BM_JointDecomposition)->Arg(2)->Arg(4)->Arg(8);

void BM_DesignAndVerify(benchmark::State& state) {
  const AntennaConfig cfg{3, 3, 3, 3};
  StreamAllocation alloc;
  alloc.T = 3;
  alloc.ia = {6, 6, 6, 6};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_trial(cfg, RankProfile::full(cfg), alloc, seed++).passed);
  }
}
BENCHMARK(BM_DesignAndVerify)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
