#pragma once

#include <span>
#include <string>
#include <vector>

#include "tspectra/spectral.hpp"
#include "tspectra/topology.hpp"

namespace tspectra {

/// What gets removed from a torus: one node, a small node set, or one edge.
struct Removal {
  enum class Kind { Node, NodeSet, Edge };

  Kind kind = Kind::Node;
  std::vector<NodeId> nodes;

  static Removal node(NodeId i);
  static Removal node_set(std::vector<NodeId> s);
  static Removal edge(NodeId i, NodeId j);

  std::string describe() const;
};

/// Characteristic-polynomial evaluator for a torus with a removal applied,
/// computed through the intact torus' closed-form spectrum and resolvent
/// rather than the deleted graph itself. Construction caches the eigenvalue
/// table and the basis rows of the removed nodes; each evaluation is O(n).
class AlmostTorus {
 public:
  AlmostTorus(const TorusSpec& spec, Removal removal);

  /// Characteristic polynomial of the deleted graph at x. x must stay 1e-9
  /// away from the intact torus' eigenvalues (resolvent poles).
  PolyEval charpoly_at(double x) const;

  /// Largest root of charpoly_at, i.e. the spectral radius of the deleted
  /// graph: bracketed by a downward scan from 2*dim and refined by bisection.
  /// All removals handled here leave the largest root strictly above the
  /// torus' second eigenvalue (the average degree already exceeds it), so the
  /// scan stops there and reports a bracketing failure if no sign change
  /// appeared.
  double largest_root(double tol = 1e-10) const;

  /// Resolvent entry (xI - A)^{-1} between removal nodes, indexed by their
  /// positions in removal().nodes.
  double resolvent_between(int a, int b, double x) const;

  const TorusSpec& spec() const { return spec_; }
  const Removal& removal() const { return removal_; }

 private:
  double resolvent_pair(int a, int b, double x) const;  // indexes into removal nodes
  void check_off_spectrum(double x) const;

  TorusSpec spec_;
  Removal removal_;
  std::vector<double> eigenvalues_;             // canonical mode order
  std::vector<std::vector<double>> pair_weights_;  // packed upper triangle over removal nodes
  double second_eigenvalue_ = 0.0;              // largest eigenvalue below 2*dim
};

PolyEval charpoly_minus_node(const TorusSpec& spec, NodeId i, double x);
PolyEval charpoly_minus_set(const TorusSpec& spec, std::span<const NodeId> s, double x);

/// Two-node removal through the walk-generating-function identity
/// phi(G\i) phi(G\j) / phi(G) - phi(G) * R_ij^2. Algebraically identical to
/// charpoly_minus_set on the pair; kept as an independent route.
PolyEval charpoly_minus_two(const TorusSpec& spec, NodeId i, NodeId j, double x);

/// Edge removal: phi(G\e) = phi(G) - phi(G\ij) + 2 sqrt(phi(G\i) phi(G\j)
/// - phi(G) phi(G\ij)), for x above the torus spectral radius where the
/// radicand equals (phi * R_ij)^2 >= 0 and the positive branch applies.
PolyEval charpoly_minus_edge(const TorusSpec& spec, NodeId i, NodeId j, double x);

struct DeletionResult {
  std::string target;
  double spectral_radius;   // analytic root
  double oracle_radius;     // NaN when the dense-oracle size guard is exceeded
  double discrepancy;       // |spectral_radius - oracle_radius|, NaN without oracle
};

DeletionResult spectral_radius_after_deletion(const TorusSpec& spec, const Removal& removal,
                                              double tol = 1e-10);

}  // namespace tspectra
