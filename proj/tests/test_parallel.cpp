#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <vector>

#include "tspectra/reduce.hpp"
#include "tspectra/sis.hpp"
#include "tspectra/spectral.hpp"
#include "tspectra/topology.hpp"
#include "tspectra/walks.hpp"

using namespace tspectra;

namespace {

template <class F>
auto with_threads(int threads, F&& f) {
  const int before = omp_get_max_threads();
  omp_set_num_threads(threads);
  auto result = f();
  omp_set_num_threads(before);
  return result;
}

}  // namespace

TEST_CASE("blocked sum tracks the serial reference") {
  const std::int64_t n = 100000;
  auto f = [](std::int64_t k) { return std::sin(0.001 * static_cast<double>(k)); };
  const double serial = serial_sum(n, f);
  const double blocked = blocked_sum(n, f);
  CHECK(std::abs(serial - blocked) <= 1e-10 * std::abs(serial));
}

TEST_CASE("blocked reduction is bitwise thread-count invariant") {
  const std::int64_t n = 50000;  // spans several blocks
  auto f = [](std::int64_t k) { return 1.0 / (1.0 + static_cast<double>(k) * 0.37); };
  const double one = with_threads(1, [&] { return blocked_sum(n, f); });
  const double two = with_threads(2, [&] { return blocked_sum(n, f); });
  const double four = with_threads(4, [&] { return blocked_sum(n, f); });
  CHECK(one == two);
  CHECK(one == four);
}

TEST_CASE("charpoly product is bitwise thread-count invariant") {
  const TorusSpec spec{2, 100};  // 10000 factors, multiple blocks
  for (double x : {4.25, 5.5, -1.3}) {
    const PolyEval one = with_threads(1, [&] { return charpoly_eval_torus(spec, x); });
    const PolyEval two = with_threads(2, [&] { return charpoly_eval_torus(spec, x); });
    CHECK(one.sign == two.sign);
    CHECK(one.log_magnitude == two.log_magnitude);
  }
}

TEST_CASE("walk power sums are bitwise thread-count invariant") {
  const TorusSpec spec{2, 80};  // 6400 eigenvalues
  const BigInt one = with_threads(1, [&] { return torus_closed_walks(spec, 8).count; });
  const BigInt two = with_threads(2, [&] { return torus_closed_walks(spec, 8).count; });
  CHECK(one == two);

  const double r1 = with_threads(1, [&] { return torus_resolvent_diagonal(spec, 4.7); });
  const double r2 = with_threads(2, [&] { return torus_resolvent_diagonal(spec, 4.7); });
  CHECK(r1 == r2);
}

TEST_CASE("mean-field step is bitwise thread-count invariant") {
  const Graph g = build_torus({2, 9});
  const SisParams params{0.15, 0.35, 1, 1};
  std::vector<double> p(static_cast<std::size_t>(g.node_count()));
  Rng rng(3);
  for (double& v : p) v = rng.uniform01();
  const auto one = with_threads(1, [&] { return meanfield_step(g, p, params); });
  const auto two = with_threads(2, [&] { return meanfield_step(g, p, params); });
  CHECK(one == two);
}

TEST_CASE("monte carlo replica set is bitwise thread-count invariant") {
  const Graph g = build_torus({2, 6});
  const SisParams params{0.2, 0.3, 40, 4};
  const auto one = with_threads(1, [&] { return run_experiment(g, params, SisMode::MonteCarlo, 6, 2024); });
  const auto two = with_threads(2, [&] { return run_experiment(g, params, SisMode::MonteCarlo, 6, 2024); });
  REQUIRE(one.size() == two.size());
  for (std::size_t t = 0; t < one.size(); ++t) {
    CHECK(one[t].infected_mean == two[t].infected_mean);
    CHECK(one[t].infected_std == two[t].infected_std);
  }
}
