#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "latcomp/completion.hpp"
#include "latcomp/generators.hpp"
#include "latcomp/rank_conditions.hpp"
#include "latcomp/removability.hpp"

namespace {

using namespace latcomp;

std::vector<double> low_rank(int m, int n, int r, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> u(static_cast<std::size_t>(m * r)), v(static_cast<std::size_t>(n * r));
  for (auto& x : u) x = g(rng);
  for (auto& x : v) x = g(rng);
  std::vector<double> a(static_cast<std::size_t>(m * n), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < r; ++k) a[static_cast<std::size_t>(i * n + j)] += u[static_cast<std::size_t>(i * r + k)] * v[static_cast<std::size_t>(j * r + k)];
  return a;
}

// Square staircase with `cells` equal steps; side grows with the argument.
CircuitInstance staircase(int cells) {
  const int side = 3 * cells + 1;
  return gen_staircase_cycle(side, side, std::vector<StepCell>(static_cast<std::size_t>(cells), StepCell{4, 4}));
}

void BM_RemovabilityAnalysis(benchmark::State& state) {
  const auto inst = staircase(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(removability_analysis(inst.circuit, inst.mask));
  state.counters["points"] = static_cast<double>(inst.mask.size());
}
BENCHMARK(BM_RemovabilityAnalysis)->RangeMultiplier(2)->Range(2, 32);

void BM_CompleteRank2(benchmark::State& state) {
  const auto inst = staircase(static_cast<int>(state.range(0)));
  const int side = inst.mask.rows();
  const auto rep = removability_analysis(inst.circuit, inst.mask);
  std::mt19937_64 rng(1);
  const PartialMatrix pm(inst.mask, 2, low_rank(side, side, 2, rng));
  for (auto _ : state) benchmark::DoNotOptimize(complete_rank2(pm, rep, inst.circuit));
  state.counters["entries"] = static_cast<double>(side * side);
}
BENCHMARK(BM_CompleteRank2)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMicrosecond);

void BM_CompleteRank2Exact(benchmark::State& state) {
  const auto inst = gen_boundary_cycle(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const int side = inst.mask.rows();
  const auto rep = removability_analysis(inst.circuit, inst.mask);
  std::mt19937_64 rng(2);
  const PartialMatrix pm(inst.mask, 2, low_rank(side, side, 2, rng));
  for (auto _ : state) benchmark::DoNotOptimize(complete_rank2(pm, rep, inst.circuit, Arithmetic::exact));
}
BENCHMARK(BM_CompleteRank2Exact)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_VerifyCGraph(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto fam = gen_nested_staircase_family(side, side, 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(verify_c_graph(fam.mask, 3, fam.walks, fam.auxiliary));
}
BENCHMARK(BM_VerifyCGraph)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_CompleteRankR(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  const auto fam = gen_nested_staircase_family(side, side, r);
  const auto rep = verify_c_graph(fam.mask, r, fam.walks, fam.auxiliary);
  std::mt19937_64 rng(3);
  const PartialMatrix pm(fam.mask, r, low_rank(side, side, r, rng));
  for (auto _ : state) benchmark::DoNotOptimize(complete_rank_r(pm, rep));
}
BENCHMARK(BM_CompleteRankR)->Args({20, 3})->Args({40, 3})->Args({40, 4})->Unit(benchmark::kMicrosecond);

void BM_Greedy(benchmark::State& state) {
  const auto inst = staircase(static_cast<int>(state.range(0)));
  const int side = inst.mask.rows();
  std::mt19937_64 rng(4);
  const PartialMatrix pm(inst.mask, 2, low_rank(side, side, 2, rng));
  for (auto _ : state) benchmark::DoNotOptimize(propagate_greedy(pm, 2));
}
BENCHMARK(BM_Greedy)->Arg(3)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
