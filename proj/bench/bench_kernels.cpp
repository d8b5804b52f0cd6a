// Serial reference kernels against their OpenMP versions.
//
//   ./bench_kernels --benchmark_filter=Skron
//   OMP_NUM_THREADS=4 ./bench_kernels

#include "gbis/kernels.hpp"
#include "gbis/sdp_model.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

gbis::Matrix random_spd(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  gbis::Matrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = nd(rng);
  return a * a.transpose() / n + gbis::Matrix::Identity(n, n);
}

// A matrix with a realistic mix of violated triangles: the interior point
// of the New relaxation plus noise.
gbis::Matrix noisy_x(int n, unsigned seed) {
  const gbis::BisectionInstance inst(gbis::Graph(n, {{0, 1, 1.0}}), n / 2 + 1, n - n / 2 - 1);
  gbis::Matrix x = gbis::strictly_feasible_point(inst);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) x(i, j) = x(j, i) = x(i, j) + u(rng);
  return x;
}

template <void (*Kernel)(const gbis::Matrix&, gbis::Matrix&)>
void BM_Skron(benchmark::State& state) {
  const gbis::Matrix p = random_spd(static_cast<int>(state.range(0)), 7);
  gbis::Matrix out;
  for (auto _ : state) {
    Kernel(p, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

template <std::vector<gbis::kernels::TriangleViolation> (*Kernel)(const gbis::Matrix&, double)>
void BM_TriangleScan(benchmark::State& state) {
  const gbis::Matrix x = noisy_x(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    auto v = Kernel(x, 1e-6);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_Skron<gbis::kernels::serial::skron>)->Name("Skron/serial")->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_Skron<gbis::kernels::omp::skron>)->Name("Skron/omp")->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_TriangleScan<gbis::kernels::serial::triangle_scan>)
    ->Name("TriangleScan/serial")
    ->RangeMultiplier(2)
    ->Range(16, 256);
BENCHMARK(BM_TriangleScan<gbis::kernels::omp::triangle_scan>)
    ->Name("TriangleScan/omp")
    ->RangeMultiplier(2)
    ->Range(16, 256);

BENCHMARK_MAIN();
