// Serial reference vs OpenMP trigonometric-sum kernels on d = 1..3 lattices.

#include <benchmark/benchmark.h>

#include <random>

#include "kgms/kernels.hpp"

namespace {

using kgms::kernels::cplx;
using kgms::kernels::PhaseTable;

struct Case {
  PhaseTable table;
  std::vector<cplx> modes, grid;
};

Case make_case(int dim, int n, int n_max) {
  Case c{PhaseTable(dim, n, n_max), {}, {}};
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  c.modes.resize(c.table.num_modes());
  c.grid.resize(c.table.num_points());
  for (auto& v : c.modes) v = {g(rng), g(rng)};
  for (auto& v : c.grid) v = {g(rng), g(rng)};
  return c;
}

// args: dim, points per axis, n_max
void BM_SynthesizeSerial(benchmark::State& st) {
  Case c = make_case(st.range(0), st.range(1), st.range(2));
  for (auto _ : st) {
    kgms::kernels::synthesize_serial(c.table, c.modes, c.grid);
    benchmark::DoNotOptimize(c.grid.data());
  }
}

void BM_SynthesizeOmp(benchmark::State& st) {
  Case c = make_case(st.range(0), st.range(1), st.range(2));
  for (auto _ : st) {
    kgms::kernels::synthesize_omp(c.table, c.modes, c.grid);
    benchmark::DoNotOptimize(c.grid.data());
  }
}

void BM_AnalyzeSerial(benchmark::State& st) {
  Case c = make_case(st.range(0), st.range(1), st.range(2));
  for (auto _ : st) {
    kgms::kernels::analyze_serial(c.table, c.grid, c.modes);
    benchmark::DoNotOptimize(c.modes.data());
  }
}

void BM_AnalyzeOmp(benchmark::State& st) {
  Case c = make_case(st.range(0), st.range(1), st.range(2));
  for (auto _ : st) {
    kgms::kernels::analyze_omp(c.table, c.grid, c.modes);
    benchmark::DoNotOptimize(c.modes.data());
  }
}

void sizes(benchmark::internal::Benchmark* b) {
  b->Args({1, 32, 7})->Args({1, 256, 63})->Args({2, 32, 7})->Args({3, 16, 3});
}

}  // namespace

BENCHMARK(BM_SynthesizeSerial)->Apply(sizes);
BENCHMARK(BM_SynthesizeOmp)->Apply(sizes);
BENCHMARK(BM_AnalyzeSerial)->Apply(sizes);
BENCHMARK(BM_AnalyzeOmp)->Apply(sizes);

BENCHMARK_MAIN();
