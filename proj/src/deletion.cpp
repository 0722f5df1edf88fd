#include "tspectra/deletion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tspectra/reduce.hpp"

namespace tspectra {

namespace {

constexpr double kPoleGuard = 1e-9;
constexpr double kScanStep = 0.05;
constexpr double kRootOffset = 1e-9;  // first scan point below 2*dim

double small_determinant(std::vector<double> m, int s) {
  double det = 1.0;
  for (int k = 0; k < s; ++k) {
    int pivot = k;
    for (int r = k + 1; r < s; ++r) {
      if (std::abs(m[static_cast<std::size_t>(r * s + k)]) > std::abs(m[static_cast<std::size_t>(pivot * s + k)])) pivot = r;
    }
    const double head = m[static_cast<std::size_t>(pivot * s + k)];
    if (std::abs(head) <= 1e-280) return 0.0;
    if (pivot != k) {
      for (int c = 0; c < s; ++c) std::swap(m[static_cast<std::size_t>(k * s + c)], m[static_cast<std::size_t>(pivot * s + c)]);
      det = -det;
    }
    det *= head;
    for (int r = k + 1; r < s; ++r) {
      const double factor = m[static_cast<std::size_t>(r * s + k)] / head;
      for (int c = k; c < s; ++c) m[static_cast<std::size_t>(r * s + c)] -= factor * m[static_cast<std::size_t>(k * s + c)];
    }
  }
  return det;
}

}  // namespace

Removal Removal::node(NodeId i) { return {Kind::Node, {i}}; }

Removal Removal::node_set(std::vector<NodeId> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return {Kind::NodeSet, std::move(s)};
}

Removal Removal::edge(NodeId i, NodeId j) { return {Kind::Edge, {i, j}}; }

std::string Removal::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Node:
      out << "node:" << nodes[0];
      break;
    case Kind::NodeSet:
      out << "nodes:";
      for (std::size_t k = 0; k < nodes.size(); ++k) out << (k ? "+" : "") << nodes[k];
      break;
    case Kind::Edge:
      out << "edge:" << nodes[0] << "-" << nodes[1];
      break;
  }
  return out.str();
}

AlmostTorus::AlmostTorus(const TorusSpec& spec, Removal removal)
    : spec_(spec), removal_(std::move(removal)) {
  validate_torus_spec(spec_);
  const NodeId n = spec_.node_count();
  if (removal_.nodes.empty()) throw DomainError("removal must name at least one node");
  for (NodeId u : removal_.nodes) {
    if (u < 0 || u >= n) throw DomainError("removal node out of range");
  }
  switch (removal_.kind) {
    case Removal::Kind::Node:
      break;
    case Removal::Kind::NodeSet:
      if (removal_.nodes.size() > 8) {
        throw DomainError("node-set removal supports at most 8 nodes; use the dense oracle");
      }
      if (static_cast<NodeId>(removal_.nodes.size()) >= n) {
        throw DomainError("removal would empty the graph");
      }
      break;
    case Removal::Kind::Edge:
      if (removal_.nodes.size() != 2 || !torus_adjacent(spec_, removal_.nodes[0], removal_.nodes[1])) {
        throw DomainError("edge removal: nodes are not torus-adjacent");
      }
      break;
  }

  eigenvalues_ = torus_mode_eigenvalues(spec_);
  const double top = 2.0 * spec_.dim;
  second_eigenvalue_ = -top;
  for (double v : eigenvalues_) {
    if (v < top - 1e-7) second_eigenvalue_ = std::max(second_eigenvalue_, v);
  }

  const int s = static_cast<int>(removal_.nodes.size());
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(s));
  for (int a = 0; a < s; ++a) rows[static_cast<std::size_t>(a)] = torus_basis_row(spec_, removal_.nodes[static_cast<std::size_t>(a)]);
  pair_weights_.resize(static_cast<std::size_t>(s * (s + 1) / 2));
  for (int a = 0, slot = 0; a < s; ++a) {
    for (int b = a; b < s; ++b, ++slot) {
      auto& w = pair_weights_[static_cast<std::size_t>(slot)];
      w.resize(eigenvalues_.size());
      for (std::size_t c = 0; c < eigenvalues_.size(); ++c) {
        w[c] = rows[static_cast<std::size_t>(a)][c] * rows[static_cast<std::size_t>(b)][c];
      }
    }
  }
}

void AlmostTorus::check_off_spectrum(double x) const {
  double dist = std::numeric_limits<double>::infinity();
  for (double lambda : eigenvalues_) dist = std::min(dist, std::abs(x - lambda));
  if (dist < kPoleGuard) throw DomainError("evaluation point within 1e-9 of a torus eigenvalue");
}

double AlmostTorus::resolvent_between(int a, int b, double x) const {
  const int s = static_cast<int>(removal_.nodes.size());
  if (a < 0 || a >= s || b < 0 || b >= s) throw DomainError("removal node index out of range");
  check_off_spectrum(x);
  return resolvent_pair(a, b, x);
}

double AlmostTorus::resolvent_pair(int a, int b, double x) const {
  if (a > b) std::swap(a, b);
  const int s = static_cast<int>(removal_.nodes.size());
  const int slot = a * s - a * (a - 1) / 2 + (b - a);
  const auto& w = pair_weights_[static_cast<std::size_t>(slot)];
  return blocked_sum(static_cast<std::int64_t>(w.size()), [&](std::int64_t c) {
    return w[static_cast<std::size_t>(c)] / (x - eigenvalues_[static_cast<std::size_t>(c)]);
  });
}

PolyEval AlmostTorus::charpoly_at(double x) const {
  check_off_spectrum(x);
  const PolyEval phi = charpoly_eval_torus(spec_, x);
  const int s = static_cast<int>(removal_.nodes.size());
  switch (removal_.kind) {
    case Removal::Kind::Node:
      return PolyEval::from_value(resolvent_pair(0, 0, x)) * phi;
    case Removal::Kind::NodeSet: {
      std::vector<double> sub(static_cast<std::size_t>(s * s));
      for (int a = 0; a < s; ++a) {
        for (int b = a; b < s; ++b) {
          const double entry = resolvent_pair(a, b, x);
          sub[static_cast<std::size_t>(a * s + b)] = entry;
          sub[static_cast<std::size_t>(b * s + a)] = entry;
        }
      }
      return PolyEval::from_value(small_determinant(std::move(sub), s)) * phi;
    }
    case Removal::Kind::Edge: {
      // Rank-two update of the resolvent: phi(G\e) = phi * ((1+R_ij)^2 - R_ii R_jj),
      // the branch-free form of the square-root identity, valid on either
      // side of the spectral radius.
      const double rii = resolvent_pair(0, 0, x);
      const double rjj = resolvent_pair(1, 1, x);
      const double rij = resolvent_pair(0, 1, x);
      return PolyEval::from_value((1.0 + rij) * (1.0 + rij) - rii * rjj) * phi;
    }
  }
  throw DomainError("unreachable removal kind");
}

double AlmostTorus::largest_root(double tol) const {
  const double top = 2.0 * spec_.dim;
  const double floor = second_eigenvalue_ + kPoleGuard;
  double hi = top - kRootOffset;
  // Shrink the scan step when the second eigenvalue crowds 2*dim (large len),
  // so the scan cannot jump below it and bracket a lower root.
  const double step = std::min(kScanStep, (top - second_eigenvalue_) / 8.0);

  const int hi_sign = charpoly_at(hi).sign;
  if (hi_sign == 0) return hi;
  if (hi_sign < 0) {
    // The polynomial is positive above all roots; a negative start means the
    // largest root sits inside the pole guard band below 2*dim.
    throw DomainError("bracketing failure: largest root too close to 2*dim");
  }

  double lo = hi;
  int lo_sign = hi_sign;
  while (true) {
    const double next = lo - step;
    if (next <= floor) {
      std::ostringstream msg;
      msg << "bracketing failure: no sign change in [" << floor << ", " << hi << "]";
      throw DomainError(msg.str());
    }
    const int sign = charpoly_at(next).sign;
    if (sign == 0) return next;
    if (sign != lo_sign) {
      lo = next;
      lo_sign = sign;
      break;
    }
    lo = next;
  }

  double hi_bound = lo + step;
  double lo_bound = lo;
  while (hi_bound - lo_bound > tol) {
    const double mid = 0.5 * (lo_bound + hi_bound);
    const int sign = charpoly_at(mid).sign;
    if (sign == 0) return mid;
    if (sign == lo_sign) {
      lo_bound = mid;
    } else {
      hi_bound = mid;
    }
  }
  return 0.5 * (lo_bound + hi_bound);
}

PolyEval charpoly_minus_node(const TorusSpec& spec, NodeId i, double x) {
  return AlmostTorus(spec, Removal::node(i)).charpoly_at(x);
}

PolyEval charpoly_minus_set(const TorusSpec& spec, std::span<const NodeId> s, double x) {
  return AlmostTorus(spec, Removal::node_set({s.begin(), s.end()})).charpoly_at(x);
}

PolyEval charpoly_minus_two(const TorusSpec& spec, NodeId i, NodeId j, double x) {
  if (i == j) throw DomainError("two-node removal needs distinct nodes");
  const AlmostTorus pair(spec, Removal::node_set({i, j}));
  const PolyEval phi = charpoly_eval_torus(spec, x);
  const PolyEval phi_i = PolyEval::from_value(pair.resolvent_between(0, 0, x)) * phi;
  const PolyEval phi_j = PolyEval::from_value(pair.resolvent_between(1, 1, x)) * phi;
  const PolyEval r_ij = PolyEval::from_value(pair.resolvent_between(0, 1, x));
  return phi_i * phi_j / phi - phi * r_ij * r_ij;
}

PolyEval charpoly_minus_edge(const TorusSpec& spec, NodeId i, NodeId j, double x) {
  const AlmostTorus evaluator(spec, Removal::edge(i, j));
  if (x <= 2.0 * spec.dim) {
    throw DomainError("edge-removal formula needs x above the torus spectral radius");
  }
  const PolyEval phi = charpoly_eval_torus(spec, x);
  const double rii = evaluator.resolvent_between(0, 0, x);
  const double rjj = evaluator.resolvent_between(1, 1, x);
  const double rij = evaluator.resolvent_between(0, 1, x);
  const PolyEval phi_i = PolyEval::from_value(rii) * phi;
  const PolyEval phi_j = PolyEval::from_value(rjj) * phi;
  const PolyEval phi_ij = PolyEval::from_value(rii * rjj - rij * rij) * phi;

  const PolyEval product_nodes = phi_i * phi_j;
  const PolyEval product_pair = phi * phi_ij;
  PolyEval radicand = product_nodes - product_pair;
  if (radicand.sign < 0) {
    const double scale = std::max(product_nodes.log_magnitude, product_pair.log_magnitude);
    if (std::exp(radicand.log_magnitude - scale) > 1e-9) {
      throw DomainError("negative radicand: edge-removal formula evaluated outside its region");
    }
    radicand = PolyEval::zero();
  }
  return phi - phi_ij + sqrt(radicand) * PolyEval::from_value(2.0);
}

DeletionResult spectral_radius_after_deletion(const TorusSpec& spec, const Removal& removal,
                                              double tol) {
  AlmostTorus evaluator(spec, removal);
  DeletionResult result;
  result.target = removal.describe();
  result.spectral_radius = evaluator.largest_root(tol);
  result.oracle_radius = std::numeric_limits<double>::quiet_NaN();
  result.discrepancy = std::numeric_limits<double>::quiet_NaN();
  if (spec.node_count() <= kDenseOracleMaxNodes) {
    const Graph torus = build_torus(spec);
    Graph deleted;
    if (removal.kind == Removal::Kind::Edge) {
      deleted = delete_edge(torus, removal.nodes[0], removal.nodes[1]);
    } else {
      deleted = delete_nodes(torus, removal.nodes).graph;
    }
    if (deleted.node_count() == 0) throw DomainError("removal emptied the graph");
    result.oracle_radius = dense_spectrum(deleted).values.front();
    result.discrepancy = std::abs(result.spectral_radius - result.oracle_radius);
  }
  return result;
}

}  // namespace tspectra
