#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "tspectra/topology.hpp"

namespace tspectra {

/// Sign and natural-log magnitude of a real number. Products with thousands
/// of factors (characteristic polynomials of m^d nodes) stay representable.
struct PolyEval {
  int sign = 0;
  double log_magnitude = -std::numeric_limits<double>::infinity();

  static PolyEval zero() { return {}; }
  static PolyEval from_value(double v);

  /// sign * exp(log_magnitude); overflows to +/-inf for large magnitudes.
  double value() const;
  bool is_zero() const { return sign == 0; }
};

PolyEval operator*(PolyEval a, PolyEval b);
PolyEval operator/(PolyEval a, PolyEval b);
PolyEval operator+(PolyEval a, PolyEval b);
PolyEval operator-(PolyEval a, PolyEval b);
PolyEval sqrt(PolyEval a);

/// Eigenvalues sorted descending, one entry per instance. `basis`, when
/// built, holds an orthonormal eigenvector in column c for values[c].
struct Spectrum {
  std::vector<double> values;
  Eigen::MatrixXd basis;

  bool has_basis() const { return basis.size() > 0; }
  double sum() const;

  /// (value, multiplicity) pairs after clustering within `tol`. Cosine sums
  /// of distinct index tuples can collide exactly, so multiplicities are
  /// only meaningful after clustering.
  std::vector<std::pair<double, int>> clustered(double tol = 1e-7) const;
};

/// Orthonormal eigenbasis of the len-cycle: column k of `vectors` has
/// adjacency eigenvalue `eigenvalues[k]`. Column 0 is the normalized all-ones
/// vector; the remaining columns are the sin/cos pairs (the degenerate sin
/// columns at k = 0 and, for even len, k = len/2 are dropped).
struct RingBasis {
  Eigen::MatrixXd vectors;
  std::vector<double> eigenvalues;
};

RingBasis ring_basis(int len);

/// Torus eigenvalues in canonical mode order: index t decomposes base-len
/// into per-axis ring modes, and the eigenvalue is the sum of the per-axis
/// ring eigenvalues. Aligned with torus_basis_row.
std::vector<double> torus_mode_eigenvalues(const TorusSpec& spec);

/// Row u of the Kronecker-product eigenbasis, in canonical mode order.
/// O(n) memory; the full basis is never materialized.
std::vector<double> torus_basis_row(const TorusSpec& spec, NodeId u);

/// All m^d closed-form eigenvalues, sorted descending. Largest is 2*dim.
Spectrum torus_eigenvalues(const TorusSpec& spec);

/// Closed-form eigenvalues plus the orthonormal Kronecker eigenbasis.
Spectrum torus_eigenbasis(const TorusSpec& spec);

/// Dense symmetric eigensolve of the adjacency matrix (oracle path).
Spectrum dense_spectrum(const Graph& g, bool with_basis = false);

inline constexpr std::int64_t kDenseOracleMaxNodes = 4000;

/// Fixed seed for the power-iteration start vector; recorded here so runs
/// are reproducible.
inline constexpr std::uint64_t kPowerIterationSeed = 0x243F6A8885A308D3ULL;

/// Largest-magnitude adjacency eigenvalue. Iterates on A + max_deg*I so the
/// bipartite +-rho pair cannot stall the iteration; converges when the
/// residual ||Av - lambda*v|| drops below tol.
double spectral_radius_power(const Graph& g, double tol = 1e-10, int max_iter = 200000);

struct DegreeBounds {
  double lower;
  double upper;
};

/// max(average degree, sqrt(max degree)) <= rho(A) <= max degree.
DegreeBounds degree_bounds(const Graph& g);

/// Characteristic polynomial of the torus at x, as the product of
/// (x - eigenvalue) over all m^d closed-form eigenvalues. Returns sign 0 when
/// x falls within 1e-12 of an eigenvalue.
PolyEval charpoly_eval_torus(const TorusSpec& spec, double x);

/// Laplacian eigenvalues 2*dim - (adjacency eigenvalues), sorted descending;
/// the last entry is 0 for a connected torus.
Spectrum laplacian_spectrum(const TorusSpec& spec);

}  // namespace tspectra
