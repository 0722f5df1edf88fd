// Compares the OpenMP kernels against the plain serial reference folds on
// the hot reductions: eigenvalue power sums, charpoly log-products, resolvent
// sums and Monte Carlo replica sets.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tspectra/reduce.hpp"
#include "tspectra/sis.hpp"
#include "tspectra/spectral.hpp"
#include "tspectra/topology.hpp"
#include "tspectra/walks.hpp"

using namespace tspectra;

namespace {

double time_ms(const std::function<void()>& body, int reps = 5) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    best = std::min(best, elapsed);
  }
  return best;
}

volatile double sink;  // keeps the optimizer from deleting benchmark bodies

void report(const char* name, std::int64_t n, double serial_ms, double parallel_ms) {
  std::printf("%-28s n=%-9lld serial %9.3f ms   omp %9.3f ms   speedup %.2fx\n", name,
              static_cast<long long>(n), serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());

  {
    const TorusSpec spec{2, 400};  // 160000 eigenvalues
    const std::vector<double> eigs = torus_mode_eigenvalues(spec);
    const auto n = static_cast<std::int64_t>(eigs.size());
    const int length = 12;
    auto term = [&](std::int64_t k) { return std::pow(eigs[static_cast<std::size_t>(k)], length); };
    const double serial = time_ms([&] { sink = serial_sum(n, term); });
    const double parallel = time_ms([&] { sink = blocked_sum(n, term); });
    report("walk power sum", n, serial, parallel);
  }

  {
    const TorusSpec spec{2, 1000};  // 1e6 factors
    const std::vector<double> eigs = torus_mode_eigenvalues(spec);
    const auto n = static_cast<std::int64_t>(eigs.size());
    const double x = 4.25;
    auto log_factor = [&](std::int64_t k) {
      return std::log(std::abs(x - eigs[static_cast<std::size_t>(k)]));
    };
    const double serial = time_ms([&] { sink = serial_sum(n, log_factor); });
    const double parallel = time_ms([&] { sink = blocked_sum(n, log_factor); });
    report("charpoly log product", n, serial, parallel);
  }

  {
    const TorusSpec spec{2, 1000};
    const std::vector<double> eigs = torus_mode_eigenvalues(spec);
    const auto n = static_cast<std::int64_t>(eigs.size());
    const double x = 4.5;
    auto term = [&](std::int64_t k) { return 1.0 / (x - eigs[static_cast<std::size_t>(k)]); };
    const double serial = time_ms([&] { sink = serial_sum(n, term); });
    const double parallel = time_ms([&] { sink = blocked_sum(n, term); });
    report("resolvent diagonal", n, serial, parallel);
  }

  {
    const Graph g = build_torus({2, 30});
    const SisParams params{0.1, 0.2, 200, 20};
    const int replicas = 20;
    const int max_threads = omp_get_max_threads();
    auto run = [&] { sink = run_experiment(g, params, SisMode::MonteCarlo, replicas, 7).back().infected_mean; };
    omp_set_num_threads(1);
    const double serial = time_ms(run, 3);
    omp_set_num_threads(max_threads);
    const double parallel = time_ms(run, 3);
    report("SIS Monte Carlo replicas", replicas, serial, parallel);
  }

  {
    const Graph g = build_torus({2, 60});  // 3600 nodes
    const SisParams params{0.15, 0.3, 1, 1};
    std::vector<double> p(static_cast<std::size_t>(g.node_count()));
    Rng rng(1);
    for (double& v : p) v = rng.uniform01();
    const int max_threads = omp_get_max_threads();
    auto run = [&] { sink = meanfield_step(g, p, params)[0]; };
    omp_set_num_threads(1);
    const double serial = time_ms(run, 20);
    omp_set_num_threads(max_threads);
    const double parallel = time_ms(run, 20);
    report("mean-field step", g.node_count(), serial, parallel);
  }

  return 0;
}
