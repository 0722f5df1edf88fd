#include "tspectra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "tspectra/reduce.hpp"
#include "tspectra/rng.hpp"

namespace tspectra {

namespace {

constexpr double kExactZeroTol = 1e-12;

std::vector<double> ring_mode_eigenvalues(int len) {
  std::vector<double> eigs(static_cast<std::size_t>(len));
  eigs[0] = 2.0;  // all-ones mode
  const int pair_top = (len % 2 == 0) ? len / 2 - 1 : (len - 1) / 2;
  for (int k = 1; k <= pair_top; ++k) {
    const double lambda = 2.0 * std::cos(2.0 * std::numbers::pi * k / len);
    eigs[static_cast<std::size_t>(2 * k - 1)] = lambda;
    eigs[static_cast<std::size_t>(2 * k)] = lambda;
  }
  if (len % 2 == 0) eigs[static_cast<std::size_t>(len - 1)] = -2.0;  // alternating mode
  return eigs;
}

}  // namespace

PolyEval PolyEval::from_value(double v) {
  if (v == 0.0) return zero();
  return {v > 0.0 ? 1 : -1, std::log(std::abs(v))};
}

double PolyEval::value() const {
  if (sign == 0) return 0.0;
  return static_cast<double>(sign) * std::exp(log_magnitude);
}

PolyEval operator*(PolyEval a, PolyEval b) {
  if (a.sign == 0 || b.sign == 0) return PolyEval::zero();
  return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
}

PolyEval operator/(PolyEval a, PolyEval b) {
  if (b.sign == 0) throw DomainError("PolyEval division by zero");
  if (a.sign == 0) return PolyEval::zero();
  return {a.sign * b.sign, a.log_magnitude - b.log_magnitude};
}

PolyEval operator+(PolyEval a, PolyEval b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const double hi = std::max(a.log_magnitude, b.log_magnitude);
  const double r = a.sign * std::exp(a.log_magnitude - hi) + b.sign * std::exp(b.log_magnitude - hi);
  if (r == 0.0) return PolyEval::zero();
  return {r > 0.0 ? 1 : -1, hi + std::log(std::abs(r))};
}

PolyEval operator-(PolyEval a, PolyEval b) {
  b.sign = -b.sign;
  return a + b;
}

PolyEval sqrt(PolyEval a) {
  if (a.sign == 0) return PolyEval::zero();
  if (a.sign < 0) throw DomainError("PolyEval sqrt of a negative value");
  return {1, a.log_magnitude / 2.0};
}

double Spectrum::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

std::vector<std::pair<double, int>> Spectrum::clustered(double tol) const {
  std::vector<std::pair<double, int>> groups;
  for (double v : values) {
    if (!groups.empty() && std::abs(groups.back().first - v) <= tol) {
      ++groups.back().second;
    } else {
      groups.emplace_back(v, 1);
    }
  }
  return groups;
}

RingBasis ring_basis(int len) {
  if (len < 3) throw DomainError("ring basis needs len >= 3");
  RingBasis basis;
  basis.eigenvalues = ring_mode_eigenvalues(len);
  basis.vectors.resize(len, len);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(len));
  const double pair_scale = std::sqrt(2.0 / static_cast<double>(len));
  for (int u = 0; u < len; ++u) basis.vectors(u, 0) = inv_sqrt_n;
  const int pair_top = (len % 2 == 0) ? len / 2 - 1 : (len - 1) / 2;
  for (int k = 1; k <= pair_top; ++k) {
    for (int u = 0; u < len; ++u) {
      const double angle = 2.0 * std::numbers::pi * k * u / len;
      basis.vectors(u, 2 * k - 1) = pair_scale * std::cos(angle);
      basis.vectors(u, 2 * k) = pair_scale * std::sin(angle);
    }
  }
  if (len % 2 == 0) {
    for (int u = 0; u < len; ++u) {
      basis.vectors(u, len - 1) = (u % 2 == 0) ? inv_sqrt_n : -inv_sqrt_n;
    }
  }
  return basis;
}

std::vector<double> torus_mode_eigenvalues(const TorusSpec& spec) {
  validate_torus_spec(spec);
  const NodeId n = spec.node_count();
  if (n > (NodeId{1} << 24)) throw DomainError("torus too large to enumerate eigenvalues");
  const std::vector<double> ring = ring_mode_eigenvalues(spec.len);
  std::vector<double> eigs(static_cast<std::size_t>(n));
  std::vector<int> digits(static_cast<std::size_t>(spec.dim), 0);
  for (NodeId t = 0; t < n; ++t) {
    double lambda = 0.0;
    for (int a = 0; a < spec.dim; ++a) lambda += ring[static_cast<std::size_t>(digits[static_cast<std::size_t>(a)])];
    eigs[static_cast<std::size_t>(t)] = lambda;
    for (int a = 0; a < spec.dim; ++a) {
      if (++digits[static_cast<std::size_t>(a)] < spec.len) break;
      digits[static_cast<std::size_t>(a)] = 0;
    }
  }
  return eigs;
}

std::vector<double> torus_basis_row(const TorusSpec& spec, NodeId u) {
  validate_torus_spec(spec);
  const NodeId n = spec.node_count();
  const NodeCoord coord = coord_of(spec, u);
  const RingBasis ring = ring_basis(spec.len);
  // Per-axis slice of the ring basis at this node's coordinate.
  std::vector<std::vector<double>> slice(static_cast<std::size_t>(spec.dim));
  for (int a = 0; a < spec.dim; ++a) {
    auto& s = slice[static_cast<std::size_t>(a)];
    s.resize(static_cast<std::size_t>(spec.len));
    for (int c = 0; c < spec.len; ++c) s[static_cast<std::size_t>(c)] = ring.vectors(coord.coords[static_cast<std::size_t>(a)], c);
  }
  std::vector<double> row(static_cast<std::size_t>(n));
  std::vector<int> digits(static_cast<std::size_t>(spec.dim), 0);
  for (NodeId t = 0; t < n; ++t) {
    double prod = 1.0;
    for (int a = 0; a < spec.dim; ++a) prod *= slice[static_cast<std::size_t>(a)][static_cast<std::size_t>(digits[static_cast<std::size_t>(a)])];
    row[static_cast<std::size_t>(t)] = prod;
    for (int a = 0; a < spec.dim; ++a) {
      if (++digits[static_cast<std::size_t>(a)] < spec.len) break;
      digits[static_cast<std::size_t>(a)] = 0;
    }
  }
  return row;
}

Spectrum torus_eigenvalues(const TorusSpec& spec) {
  Spectrum s;
  s.values = torus_mode_eigenvalues(spec);
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

Spectrum torus_eigenbasis(const TorusSpec& spec) {
  const NodeId n = spec.node_count();
  if (n > 4096) throw DomainError("torus eigenbasis guard exceeded (n > 4096)");
  const std::vector<double> eigs = torus_mode_eigenvalues(spec);
  Eigen::MatrixXd modes(n, n);
  for (NodeId u = 0; u < n; ++u) {
    const std::vector<double> row = torus_basis_row(spec, u);
    for (NodeId t = 0; t < n; ++t) modes(u, t) = row[static_cast<std::size_t>(t)];
  }
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return eigs[static_cast<std::size_t>(a)] > eigs[static_cast<std::size_t>(b)];
  });
  Spectrum s;
  s.values.resize(static_cast<std::size_t>(n));
  s.basis.resize(n, n);
  for (NodeId c = 0; c < n; ++c) {
    s.values[static_cast<std::size_t>(c)] = eigs[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])];
    s.basis.col(c) = modes.col(order[static_cast<std::size_t>(c)]);
  }
  return s;
}

Spectrum dense_spectrum(const Graph& g, bool with_basis) {
  const NodeId n = g.node_count();
  if (n == 0) throw DomainError("dense spectrum of an empty graph");
  if (n > kDenseOracleMaxNodes) throw DomainError("dense oracle size guard exceeded");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : g.neighbors(i)) a(i, j) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      a, with_basis ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DomainError("dense eigensolver failed");
  Spectrum s;
  s.values.resize(static_cast<std::size_t>(n));
  for (NodeId c = 0; c < n; ++c) s.values[static_cast<std::size_t>(c)] = solver.eigenvalues()(n - 1 - c);
  if (with_basis) {
    s.basis.resize(n, n);
    for (NodeId c = 0; c < n; ++c) s.basis.col(c) = solver.eigenvectors().col(n - 1 - c);
  }
  return s;
}

double spectral_radius_power(const Graph& g, double tol, int max_iter) {
  const NodeId n = g.node_count();
  if (n == 0) throw DomainError("spectral radius of an empty graph");
  if (g.edge_count() == 0) return 0.0;
  // Shift by the max degree: the spectrum of A + cI is nonnegative, so the
  // bipartite +-rho pair cannot trap the iteration, and rho = lambda_max(A).
  const double shift = static_cast<double>(g.max_degree());

  Eigen::VectorXd v(n);
  std::uint64_t state = kPowerIterationSeed;
  for (NodeId i = 0; i < n; ++i) {
    v(i) = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;
  }
  v.normalize();

  Eigen::VectorXd w(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (NodeId i = 0; i < n; ++i) {
      double acc = shift * v(i);
      for (NodeId j : g.neighbors(i)) acc += v(j);
      w(i) = acc;
    }
    const double rayleigh = v.dot(w);
    const double residual = (w - rayleigh * v).norm();
    if (residual <= tol) return rayleigh - shift;
    const double norm = w.norm();
    if (norm == 0.0) throw DomainError("power iteration collapsed to the zero vector");
    v = w / norm;
  }
  throw DomainError("power iteration did not converge within max_iter");
}

DegreeBounds degree_bounds(const Graph& g) {
  if (g.node_count() == 0) throw DomainError("degree bounds of an empty graph");
  const double max_deg = static_cast<double>(g.max_degree());
  return {std::max(g.average_degree(), std::sqrt(max_deg)), max_deg};
}

PolyEval charpoly_eval_torus(const TorusSpec& spec, double x) {
  validate_torus_spec(spec);
  const NodeId n = spec.node_count();
  const std::vector<double> ring = ring_mode_eigenvalues(spec.len);
  const int dim = spec.dim;
  const int len = spec.len;

  struct Accum {
    double log_abs = 0.0;
    std::int64_t negatives = 0;
    bool zero = false;
  };
  const Accum total = blocked_reduce(
      n, Accum{},
      [&](NodeId t) {
        double lambda = 0.0;
        for (int a = 0; a < dim; ++a) {
          lambda += ring[static_cast<std::size_t>(t % len)];
          t /= len;
        }
        const double factor = x - lambda;
        Accum leaf;
        if (std::abs(factor) <= kExactZeroTol) {
          leaf.zero = true;
        } else {
          leaf.log_abs = std::log(std::abs(factor));
          leaf.negatives = factor < 0.0 ? 1 : 0;
        }
        return leaf;
      },
      [](Accum a, Accum b) {
        return Accum{a.log_abs + b.log_abs, a.negatives + b.negatives, a.zero || b.zero};
      });
  if (total.zero) return PolyEval::zero();
  return {total.negatives % 2 == 0 ? 1 : -1, total.log_abs};
}

Spectrum laplacian_spectrum(const TorusSpec& spec) {
  Spectrum s;
  s.values = torus_mode_eigenvalues(spec);
  const double degree = 2.0 * spec.dim;
  for (double& v : s.values) v = degree - v;
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

}  // namespace tspectra
