#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "tspectra/rng.hpp"
#include "tspectra/topology.hpp"

namespace tspectra {

/// Infection parameters: per-slot transmission probability beta across each
/// edge from an infected node, per-slot recovery probability delta.
struct SisParams {
  double beta = 0.1;
  double delta = 0.2;
  int horizon = 100;
  std::variant<int, std::vector<NodeId>> seeds{1};  // count drawn at random, or explicit nodes
};

void validate_sis_params(const SisParams& params, NodeId node_count);

/// Resolves the seed specification to a sorted node list. A seed count is
/// drawn uniformly without replacement from a stream derived by hashing
/// rng_seed (so it cannot collide with the per-replica streams seed + r).
std::vector<NodeId> choose_seed_nodes(const SisParams& params, NodeId node_count,
                                      std::uint64_t rng_seed);

/// One synchronous mean-field update:
/// p'_i = 1 - (1 - p_i + delta * p_i) * prod_{j ~ i} (1 - beta * p_j).
std::vector<double> meanfield_step(const Graph& g, const std::vector<double>& p,
                                   const SisParams& params);

/// One synchronous Monte Carlo slot. Every infected neighbor attempts
/// infection independently with probability beta; an infected node ends the
/// slot susceptible only when it recovers (probability delta) and receives
/// no successful attempt, so recovery and reinfection can happen in the same
/// slot.
std::vector<std::uint8_t> montecarlo_step(const Graph& g, const std::vector<std::uint8_t>& state,
                                          const SisParams& params, Rng& rng);

struct ThresholdVerdict {
  double rho;
  double ratio;         // delta / beta; +inf when beta == 0
  bool stable;          // rho < ratio strictly
  double jacobian_top;  // 1 - delta + beta * rho; stable iff < 1
};

/// Stability of the disease-free equilibrium from the linearization
/// J = (1 - delta) I + beta A.
ThresholdVerdict jacobian_spectral_test(const Graph& g, const SisParams& params);

enum class SisMode { MeanField, MonteCarlo };

struct TrajectoryRow {
  int t;
  double infected_mean;  // mean-field: sum of probabilities; MC: replica mean
  double infected_std;   // sample std over replicas; 0 for mean-field
};

inline constexpr std::uint64_t kDefaultRngSeed = 123456789;

/// Runs the recursion (mean-field) or `replicas` independent simulations
/// (Monte Carlo, replica r on stream rng_seed + r) and reports the infected
/// count per time step, t = 0 .. horizon.
std::vector<TrajectoryRow> run_experiment(const Graph& g, const SisParams& params, SisMode mode,
                                          int replicas, std::uint64_t rng_seed);

}  // namespace tspectra
