#include "tspectra/sis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tspectra/spectral.hpp"

namespace tspectra {

void validate_sis_params(const SisParams& params, NodeId node_count) {
  if (!(params.beta >= 0.0 && params.beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  if (!(params.delta >= 0.0 && params.delta <= 1.0)) throw DomainError("delta must lie in [0, 1]");
  if (params.horizon < 0) throw DomainError("horizon must be nonnegative");
  if (const auto* count = std::get_if<int>(&params.seeds)) {
    if (*count < 0 || *count > node_count) throw DomainError("seed count out of range");
  } else {
    for (NodeId u : std::get<std::vector<NodeId>>(params.seeds)) {
      if (u < 0 || u >= node_count) throw DomainError("seed node out of range");
    }
  }
}

std::vector<NodeId> choose_seed_nodes(const SisParams& params, NodeId node_count,
                                      std::uint64_t rng_seed) {
  validate_sis_params(params, node_count);
  if (const auto* explicit_nodes = std::get_if<std::vector<NodeId>>(&params.seeds)) {
    std::vector<NodeId> nodes = *explicit_nodes;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
  }
  const int count = std::get<int>(params.seeds);
  std::uint64_t hash_state = rng_seed;
  Rng rng(splitmix64(hash_state));
  std::vector<NodeId> pool(static_cast<std::size_t>(node_count));
  std::iota(pool.begin(), pool.end(), NodeId{0});
  for (int k = 0; k < count; ++k) {
    const auto pick = static_cast<std::size_t>(k) +
                      static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(node_count - k)));
    std::swap(pool[static_cast<std::size_t>(k)], pool[pick]);
  }
  pool.resize(static_cast<std::size_t>(count));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<double> meanfield_step(const Graph& g, const std::vector<double>& p,
                                   const SisParams& params) {
  const NodeId n = g.node_count();
  if (static_cast<NodeId>(p.size()) != n) throw DomainError("probability vector size mismatch");
  std::vector<double> next(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (NodeId i = 0; i < n; ++i) {
    double no_infection = 1.0;
    for (NodeId j : g.neighbors(i)) no_infection *= 1.0 - params.beta * p[static_cast<std::size_t>(j)];
    const double pi = p[static_cast<std::size_t>(i)];
    const double value = 1.0 - (1.0 - pi + params.delta * pi) * no_infection;
    next[static_cast<std::size_t>(i)] = std::clamp(value, 0.0, 1.0);
  }
  return next;
}

std::vector<std::uint8_t> montecarlo_step(const Graph& g, const std::vector<std::uint8_t>& state,
                                          const SisParams& params, Rng& rng) {
  const NodeId n = g.node_count();
  if (static_cast<NodeId>(state.size()) != n) throw DomainError("state vector size mismatch");
  std::vector<std::uint8_t> next(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) {
    bool exposed = false;
    for (NodeId j : g.neighbors(i)) {
      if (state[static_cast<std::size_t>(j)] && rng.bernoulli(params.beta)) {
        exposed = true;
        break;  // remaining attempts cannot change this node's fate
      }
    }
    bool infected = exposed;
    if (state[static_cast<std::size_t>(i)] && !rng.bernoulli(params.delta)) infected = true;
    next[static_cast<std::size_t>(i)] = infected ? 1 : 0;
  }
  return next;
}

ThresholdVerdict jacobian_spectral_test(const Graph& g, const SisParams& params) {
  validate_sis_params(params, g.node_count());
  ThresholdVerdict verdict;
  verdict.rho = spectral_radius_power(g);
  verdict.jacobian_top = 1.0 - params.delta + params.beta * verdict.rho;
  if (params.beta == 0.0) {
    verdict.ratio = std::numeric_limits<double>::infinity();
    verdict.stable = true;
    return verdict;
  }
  verdict.ratio = params.delta / params.beta;
  verdict.stable = verdict.rho < verdict.ratio;
  return verdict;
}

std::vector<TrajectoryRow> run_experiment(const Graph& g, const SisParams& params, SisMode mode,
                                          int replicas, std::uint64_t rng_seed) {
  validate_sis_params(params, g.node_count());
  const std::vector<NodeId> seeds = choose_seed_nodes(params, g.node_count(), rng_seed);
  const int steps = params.horizon;
  std::vector<TrajectoryRow> rows(static_cast<std::size_t>(steps) + 1);

  if (mode == SisMode::MeanField) {
    std::vector<double> p(static_cast<std::size_t>(g.node_count()), 0.0);
    for (NodeId u : seeds) p[static_cast<std::size_t>(u)] = 1.0;
    for (int t = 0; t <= steps; ++t) {
      rows[static_cast<std::size_t>(t)] = {t, std::accumulate(p.begin(), p.end(), 0.0), 0.0};
      if (t < steps) p = meanfield_step(g, p, params);
    }
    return rows;
  }

  if (replicas < 1) throw DomainError("Monte Carlo needs at least one replica");
  std::vector<std::uint8_t> initial(static_cast<std::size_t>(g.node_count()), 0);
  for (NodeId u : seeds) initial[static_cast<std::size_t>(u)] = 1;
  std::vector<std::vector<int>> counts(static_cast<std::size_t>(replicas));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < replicas; ++r) {
    Rng rng(rng_seed + static_cast<std::uint64_t>(r));
    std::vector<std::uint8_t> state = initial;
    auto& track = counts[static_cast<std::size_t>(r)];
    track.resize(static_cast<std::size_t>(steps) + 1);
    for (int t = 0; t <= steps; ++t) {
      track[static_cast<std::size_t>(t)] =
          static_cast<int>(std::count(state.begin(), state.end(), std::uint8_t{1}));
      if (t < steps) state = montecarlo_step(g, state, params, rng);
    }
  }
  for (int t = 0; t <= steps; ++t) {
    double mean = 0.0;
    for (int r = 0; r < replicas; ++r) mean += counts[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)];
    mean /= replicas;
    double variance = 0.0;
    for (int r = 0; r < replicas; ++r) {
      const double d = counts[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)] - mean;
      variance += d * d;
    }
    const double stddev = replicas > 1 ? std::sqrt(variance / (replicas - 1)) : 0.0;
    rows[static_cast<std::size_t>(t)] = {t, mean, stddev};
  }
  return rows;
}

}  // namespace tspectra
