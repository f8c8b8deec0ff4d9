// Timing harness for the parallel kernels: k-NN graph construction and the
// campaign trial loop, serial vs OpenMP.  Not a correctness test — the test
// suite asserts byte-identical output for both paths; this target reports
// wall-clock times so regressions in either path are visible.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "swarmsim/graph.hpp"
#include "swarmsim/harness.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int main(int argc, char** argv) {
  const int repeats = std::max(1, argc > 1 ? std::atoi(argv[1]) : 3);
  const int threads = omp_get_max_threads();
  std::printf("threads available: %d\n\n", threads);

  std::printf("k-NN graph construction (k = 6, best of %d):\n", repeats);
  std::printf("%8s %12s %12s %9s\n", "n", "serial [s]", "parallel [s]", "speedup");
  for (std::size_t n : {500u, 1000u, 2000u, 4000u}) {
    const swarmsim::PointSet points = swarmsim::generate_points(n, 42);
    double serial = 1e100, parallel = 1e100;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = Clock::now();
      volatile std::size_t sink = swarmsim::build_knn_graph(points, 6, false).n;
      (void)sink;
      serial = std::min(serial, seconds_since(t0));
      t0 = Clock::now();
      sink = swarmsim::build_knn_graph(points, 6, true).n;
      parallel = std::min(parallel, seconds_since(t0));
    }
    std::printf("%8zu %12.4f %12.4f %8.2fx\n", n, serial, parallel, serial / parallel);
  }

  std::printf("\ncampaign trial loop (n = 400, k = 5, 24 trials, best of %d):\n", repeats);
  swarmsim::CampaignConfig config;
  config.n_grid = {400};
  config.k_grid = {5};
  config.p_grid = {0.9};
  config.beta_grid = {0.5};
  config.trials = 24;
  config.master_seed = 7;

  double serial = 1e100, parallel = 1e100;
  for (int r = 0; r < repeats; ++r) {
    setenv("SWARM_SIM_THREADS", "1", 1);
    auto t0 = Clock::now();
    volatile std::size_t sink = swarmsim::run_campaign(config).size();
    (void)sink;
    serial = std::min(serial, seconds_since(t0));
    unsetenv("SWARM_SIM_THREADS");
    t0 = Clock::now();
    sink = swarmsim::run_campaign(config).size();
    parallel = std::min(parallel, seconds_since(t0));
  }
  std::printf("%8s %12.4f %12.4f %8.2fx\n", "", serial, parallel, serial / parallel);
  return 0;
}
