#include <benchmark/benchmark.h>

#include <random>

#include "tropweil/linalg.hpp"
#include "tropweil/obstruction.hpp"
#include "tropweil/reducer.hpp"
#include "tropweil/sampling.hpp"

using namespace tropweil;

static IntMatrix random_matrix(std::size_t m, std::size_t n, long bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set(i, j, dist(rng));
  return a;
}

static void BM_Smith(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  IntMatrix a = random_matrix(n, n, 20, 1);
  for (auto _ : state) benchmark::DoNotOptimize(snf(a));
}
BENCHMARK(BM_Smith)->Arg(4)->Arg(8)->Arg(16)->Arg(24);

static void BM_Hermite(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  IntMatrix a = random_matrix(n, n + 4, 20, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hnf(a));
}
BENCHMARK(BM_Hermite)->Arg(8)->Arg(16)->Arg(32);

static void BM_SparseReducer(benchmark::State& state) {
  auto rows = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> col(0, 2 * static_cast<std::uint32_t>(rows) - 1);
  std::uniform_int_distribution<long> val(-3, 3);
  std::vector<SparseRow> input;
  for (std::size_t i = 0; i < rows; ++i) {
    std::map<std::uint32_t, Int> r;
    for (int k = 0; k < 5; ++k) r[col(rng)] = val(rng);
    SparseRow row;
    for (auto& [c, v] : r)
      if (v != 0) row.push_back({c, v});
    input.push_back(row);
  }
  for (auto _ : state) {
    SparseReducer red(2 * rows, 0);
    for (const auto& r : input) red.add_row(r);
    red.reduce();
    benchmark::DoNotOptimize(red.rank());
  }
}
BENCHMARK(BM_SparseReducer)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

static void BM_AssembleSystem(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(assemble_system(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_AssembleSystem)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SolverConstruction(benchmark::State& state) {
  auto sys = assemble_system(1);
  for (auto _ : state) {
    ObstructionSolver solver(sys);
    benchmark::DoNotOptimize(solver.obstruction_dimension());
  }
}
BENCHMARK(BM_SolverConstruction)->Unit(benchmark::kMillisecond)->Iterations(3);

static void BM_ChainAlpha(benchmark::State& state) {
  Sampler rng(4);
  Chain c;
  c.d = 1;
  for (int i = 0; i < state.range(0); ++i) c.cells.push_back(rng.cell());
  Torus torus(1);
  for (auto _ : state) benchmark::DoNotOptimize(alpha_chain(torus, c));
}
BENCHMARK(BM_ChainAlpha)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
