// Microbenchmarks for the hot paths: W1 solvers, whole-graph curvature, and
// framelet construction/application. Graph sizes stay desk-scale; the point
// is relative cost (exact vs sinkhorn, exact vs chebyshev, serial vs
// parallel), not records.

#include <benchmark/benchmark.h>

#include "curvlet/curvlet.hpp"

using namespace curvlet;

namespace {

Graph bench_graph(int n) {
  Graph g = make_erdos_renyi(n, 0.3, 42);
  std::uint64_t seed = 43;
  while (!g.is_connected()) g = make_erdos_renyi(n, 0.3, seed++);
  return g;
}

// Random measure pair with the given support size over a random metric-free
// cost matrix; deterministic per size.
struct MeasurePair {
  ProbabilityMeasure mu, nu;
  Eigen::MatrixXd cost;
};

MeasurePair measure_pair(int size) {
  Rng rng(static_cast<std::uint64_t>(size));
  MeasurePair p;
  double sa = 0.0, sb = 0.0;
  std::vector<double> a(size), b(size);
  for (double& m : a) sa += (m = 0.05 + rng.next_double());
  for (double& m : b) sb += (m = 0.05 + rng.next_double());
  for (int i = 0; i < size; ++i) {
    p.mu.support.emplace_back(i, a[i] / sa);
    p.nu.support.emplace_back(i, b[i] / sb);
  }
  p.cost.resize(size, size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) p.cost(r, c) = rng.next_uniform(0.0, 3.0);
  return p;
}

void bm_w1_exact(benchmark::State& state) {
  const MeasurePair p = measure_pair(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(wasserstein1_exact(p.mu, p.nu, p.cost).cost);
}
BENCHMARK(bm_w1_exact)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bm_w1_sinkhorn(benchmark::State& state) {
  const MeasurePair p = measure_pair(static_cast<int>(state.range(0)));
  SinkhornParams params;
  params.reg = 0.05;  // keep iteration counts moderate across sizes
  for (auto _ : state)
    benchmark::DoNotOptimize(wasserstein1_sinkhorn(p.mu, p.nu, p.cost, params).cost);
}
BENCHMARK(bm_w1_sinkhorn)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bm_all_curvatures_serial(benchmark::State& state) {
  const Graph g = bench_graph(static_cast<int>(state.range(0)));
  CurvatureConfig cfg;
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(all_curvatures(g, cfg).kappa);
  state.counters["edges"] = static_cast<double>(g.edge_count());
}
BENCHMARK(bm_all_curvatures_serial)->Arg(16)->Arg(32)->Arg(64);

void bm_all_curvatures_parallel(benchmark::State& state) {
  const Graph g = bench_graph(static_cast<int>(state.range(0)));
  CurvatureConfig cfg;  // workers resolved from CURVLET_WORKERS / hardware
  for (auto _ : state) benchmark::DoNotOptimize(all_curvatures(g, cfg).kappa);
  state.counters["edges"] = static_cast<double>(g.edge_count());
}
BENCHMARK(bm_all_curvatures_parallel)->Arg(16)->Arg(32)->Arg(64);

void bm_framelet_build_exact(benchmark::State& state) {
  const Eigen::MatrixXd lap =
      bench_graph(static_cast<int>(state.range(0))).normalized_laplacian();
  for (auto _ : state) {
    const SpectralDecomposition decomp = eigendecompose(lap);
    benchmark::DoNotOptimize(
        FrameletSystem::build_exact(decomp, haar_filter_bank(), 2).band_count());
  }
}
BENCHMARK(bm_framelet_build_exact)->Arg(32)->Arg(64)->Arg(128);

void bm_framelet_build_chebyshev(benchmark::State& state) {
  const Eigen::MatrixXd lap =
      bench_graph(static_cast<int>(state.range(0))).normalized_laplacian();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        FrameletSystem::build_chebyshev(lap, haar_filter_bank(), 2, 20).band_count());
}
BENCHMARK(bm_framelet_build_chebyshev)->Arg(32)->Arg(64)->Arg(128);

void bm_spectral_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpectralDecomposition decomp = eigendecompose(bench_graph(n).normalized_laplacian());
  const FrameletSystem system = FrameletSystem::build_exact(decomp, haar_filter_bank(), 1);
  PropagationConfig cfg;
  cfg.band_gains = uniform_gains(system, 2.0);
  const Eigen::MatrixXd h = generic_initial_features(decomp, 4, 7);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_step(system, cfg, h).sum());
}
BENCHMARK(bm_spectral_step)->Arg(32)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
