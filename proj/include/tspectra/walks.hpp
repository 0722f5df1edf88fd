#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

#include "tspectra/spectral.hpp"
#include "tspectra/topology.hpp"

namespace tspectra {

/// Walk counts are exact integers that grow like (2*dim)^length, past 64 bits
/// around length 31 for dim 2.
using BigInt = boost::multiprecision::cpp_int;

struct WalkCount {
  int length = 0;
  BigInt count;
  bool parity_mismatch = false;  // lattice point-to-point queries only
};

/// Closed walks of a given length from any fixed torus node, via the
/// eigenvalue power sum (1/n) * sum(lambda^length). Node-independent by
/// vertex transitivity. Raises when the floating sum can no longer round to
/// an exact integer (count >= 2^53 or residual above 1e-6); switch to
/// count_walks_exact past that point.
WalkCount torus_closed_walks(const TorusSpec& spec, int length);

/// Walks of a given length between two torus nodes, summed over the
/// orthonormal eigenbasis. Same rounding guard as torus_closed_walks.
WalkCount torus_walks_between(const TorusSpec& spec, NodeId i, NodeId j, int length);

/// Exact oracle: propagates a big-int walk vector `length` times. Works on
/// any graph, any length.
BigInt count_walks_exact(const Graph& g, NodeId from, NodeId to, int length);

/// Exact binomial coefficient.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Closed walks of length 2*half_length on the two-dimensional integer
/// lattice: central binomial squared.
WalkCount lattice_closed_walks(int half_length);

/// Walks of `length` steps on the two-dimensional lattice from the origin to
/// (a, b). Counts are symmetric in sign, so |a| and |b| are used. When
/// length + a + b is odd no walk exists; the result is 0 with
/// parity_mismatch set (callers tabulate over mixed parities).
WalkCount lattice_walks_to(int a, int b, int length);

struct ResolventEntry {
  NodeId i;
  NodeId j;
  double x;
  double value;
};

/// Entry (i, j) of the resolvent (xI - A)^{-1} from an eigenbasis-bearing
/// Spectrum. Symmetric in (i, j); rejects x within 1e-9 of an eigenvalue.
ResolventEntry resolvent_entry(const Spectrum& eigenbasis, NodeId i, NodeId j, double x);

/// Diagonal resolvent entry of a torus, reduced by vertex transitivity to
/// (1/n) * sum(1 / (x - lambda)).
double torus_resolvent_diagonal(const TorusSpec& spec, double x);

struct SeriesSum {
  double value;
  double tail_bound;  // +inf when |x| >= 1/(2*dim): series diverges
};

/// Truncated walk generating function sum_{l <= terms} x^l (A^l)_{ij} for the
/// torus, with the geometric tail bound (2*dim*|x|)^{terms+1}/(1-2*dim*|x|).
SeriesSum wgf_series(const TorusSpec& spec, NodeId i, NodeId j, double x, int terms);

}  // namespace tspectra
