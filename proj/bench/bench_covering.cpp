#include <benchmark/benchmark.h>

#include <random>

#include "rsat/bounds.hpp"
#include "rsat/constructions.hpp"
#include "rsat/covering.hpp"

using namespace rsat;

namespace {

// Workloads, indexed by the benchmark argument.
Matrix workload(int which) {
  switch (which) {
    case 0:  // [6,3] cutting set over F_256
      return extend_scalars(example_cutting_6_3(), FieldTower::make(2, 8)).generator();
    case 1:  // identity block, q = 3, m = 3, k = 4, rho = 2
      return construct_identity_block(FieldTower::make(3, 3), 4, 2).generator();
    case 2: {  // parity check of a random [7,3] code over F_8
      std::mt19937_64 rng(5);
      Matrix g;
      do g = random_matrix(FieldTower::make(2, 3), 3, 7, rng);
      while (rank(g) != 3);
      return RankCode(g).parity_check();
    }
    default:  // subgeometry r = t = 2, h = 2 over F_16
      return construct_subgeometry(FieldTower::make(2, 4), SubgeometryShape{2, 2, 2}).generator();
  }
}

const char* label(int which) {
  static const char* names[] = {"cutting-6-3/F256", "identity-block/q3m3k4", "parity-7-3/F8", "subgeometry/F16"};
  return names[which];
}

void BM_CoverParallel(benchmark::State& state) {
  const Matrix a = workload(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_cover_profile(a, kDefaultBudget, Execution::Parallel).radius);
  state.SetLabel(label(static_cast<int>(state.range(0))));
}

void BM_CoverSerial(benchmark::State& state) {
  const Matrix a = workload(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_cover_profile(a, kDefaultBudget, Execution::Serial).radius);
  state.SetLabel(label(static_cast<int>(state.range(0))));
}

void BM_CoverReference(benchmark::State& state) {
  const Matrix a = workload(static_cast<int>(state.range(0)));
  state.SetLabel(label(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(rank_cover_profile_reference(a).radius);
    } catch (const BudgetExceeded&) {
      state.SkipWithError("reference sweep exceeds the default budget");
      break;
    }
  }
}

void BM_Geometric(benchmark::State& state) {
  const QSystem sys(workload(0));
  for (auto _ : state) benchmark::DoNotOptimize(saturation_radius_geometric(sys));
}

void BM_BoundsAudit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(audit_table({2, 3, 4, 5}, 12, 12).cells);
}

}  // namespace

BENCHMARK(BM_CoverParallel)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverSerial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoverReference)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Geometric)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundsAudit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
