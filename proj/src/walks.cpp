#include "tspectra/walks.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "tspectra/reduce.hpp"

namespace tspectra {

namespace {

constexpr double kRoundResidualGuard = 1e-6;
constexpr double kExactDoubleRange = 9007199254740992.0;  // 2^53

BigInt round_to_count(double raw, int length) {
  if (!(std::abs(raw) < kExactDoubleRange)) {
    throw DomainError("walk count at length " + std::to_string(length) +
                      " exceeds the exact double range; use count_walks_exact");
  }
  const double rounded = std::nearbyint(raw);
  if (std::abs(raw - rounded) > kRoundResidualGuard) {
    throw DomainError("walk count rounding residual above guard at length " +
                      std::to_string(length) + "; use count_walks_exact");
  }
  return BigInt(static_cast<std::int64_t>(rounded));
}

void check_off_spectrum(const std::vector<double>& eigs, double x) {
  double dist = std::numeric_limits<double>::infinity();
  for (double lambda : eigs) dist = std::min(dist, std::abs(x - lambda));
  if (dist < 1e-9) throw DomainError("evaluation point within 1e-9 of an eigenvalue");
}

double geometric_partial(double q, int terms) {
  // sum_{l=0..terms} q^l
  if (std::abs(q - 1.0) < 1e-15) return static_cast<double>(terms) + 1.0;
  return (1.0 - std::pow(q, terms + 1)) / (1.0 - q);
}

}  // namespace

WalkCount torus_closed_walks(const TorusSpec& spec, int length) {
  if (length < 0) throw DomainError("walk length must be nonnegative");
  const std::vector<double> eigs = torus_mode_eigenvalues(spec);
  const double n = static_cast<double>(spec.node_count());
  const double power_sum = blocked_sum(static_cast<std::int64_t>(eigs.size()), [&](std::int64_t k) {
    return std::pow(eigs[static_cast<std::size_t>(k)], length);
  });
  return {length, round_to_count(power_sum / n, length), false};
}

WalkCount torus_walks_between(const TorusSpec& spec, NodeId i, NodeId j, int length) {
  if (length < 0) throw DomainError("walk length must be nonnegative");
  const std::vector<double> eigs = torus_mode_eigenvalues(spec);
  const std::vector<double> row_i = torus_basis_row(spec, i);
  const std::vector<double> row_j = torus_basis_row(spec, j);
  const double sum = blocked_sum(static_cast<std::int64_t>(eigs.size()), [&](std::int64_t k) {
    const auto idx = static_cast<std::size_t>(k);
    return row_i[idx] * row_j[idx] * std::pow(eigs[idx], length);
  });
  return {length, round_to_count(sum, length), false};
}

BigInt count_walks_exact(const Graph& g, NodeId from, NodeId to, int length) {
  if (length < 0) throw DomainError("walk length must be nonnegative");
  const NodeId n = g.node_count();
  if (from < 0 || from >= n || to < 0 || to >= n) throw DomainError("node index out of range");
  std::vector<BigInt> current(static_cast<std::size_t>(n));
  std::vector<BigInt> next(static_cast<std::size_t>(n));
  current[static_cast<std::size_t>(from)] = 1;
  for (int step = 0; step < length; ++step) {
    for (NodeId u = 0; u < n; ++u) {
      BigInt acc = 0;
      for (NodeId v : g.neighbors(u)) acc += current[static_cast<std::size_t>(v)];
      next[static_cast<std::size_t>(u)] = std::move(acc);
    }
    current.swap(next);
  }
  return current[static_cast<std::size_t>(to)];
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

WalkCount lattice_closed_walks(int half_length) {
  if (half_length < 0) throw DomainError("walk length must be nonnegative");
  const BigInt central = binomial(2 * half_length, half_length);
  return {2 * half_length, central * central, false};
}

WalkCount lattice_walks_to(int a, int b, int length) {
  if (length < 0) throw DomainError("walk length must be nonnegative");
  a = std::abs(a);
  b = std::abs(b);
  if ((length + a + b) % 2 != 0) return {length, 0, true};

  std::vector<BigInt> factorial(static_cast<std::size_t>(length) + 1);
  factorial[0] = 1;
  for (int i = 1; i <= length; ++i) factorial[static_cast<std::size_t>(i)] = factorial[static_cast<std::size_t>(i - 1)] * i;

  // i runs over the up-step count; terms with any negative step count vanish.
  const int right_plus_left = (length + a + b) / 2;   // up-count + right-count reference
  const int left_reference = (length + b - a) / 2;
  BigInt total = 0;
  for (int i = std::max(0, b); i <= std::min(right_plus_left, left_reference); ++i) {
    const int down = i - b;
    const int right = right_plus_left - i;
    const int left = left_reference - i;
    if (down < 0 || right < 0 || left < 0) continue;
    total += factorial[static_cast<std::size_t>(length)] /
             (factorial[static_cast<std::size_t>(i)] * factorial[static_cast<std::size_t>(down)] *
              factorial[static_cast<std::size_t>(right)] * factorial[static_cast<std::size_t>(left)]);
  }
  return {length, total, false};
}

ResolventEntry resolvent_entry(const Spectrum& eigenbasis, NodeId i, NodeId j, double x) {
  if (!eigenbasis.has_basis()) throw DomainError("resolvent_entry needs a spectrum with a basis");
  check_off_spectrum(eigenbasis.values, x);
  const auto n = static_cast<std::int64_t>(eigenbasis.values.size());
  if (i < 0 || i >= n || j < 0 || j >= n) throw DomainError("node index out of range");
  const double value = blocked_sum(n, [&](std::int64_t c) {
    return eigenbasis.basis(i, c) * eigenbasis.basis(j, c) / (x - eigenbasis.values[static_cast<std::size_t>(c)]);
  });
  return {i, j, x, value};
}

double torus_resolvent_diagonal(const TorusSpec& spec, double x) {
  const std::vector<double> eigs = torus_mode_eigenvalues(spec);
  check_off_spectrum(eigs, x);
  const double sum = blocked_sum(static_cast<std::int64_t>(eigs.size()), [&](std::int64_t k) {
    return 1.0 / (x - eigs[static_cast<std::size_t>(k)]);
  });
  return sum / static_cast<double>(spec.node_count());
}

SeriesSum wgf_series(const TorusSpec& spec, NodeId i, NodeId j, double x, int terms) {
  if (terms < 0) throw DomainError("series truncation must be nonnegative");
  const std::vector<double> eigs = torus_mode_eigenvalues(spec);
  const std::vector<double> row_i = torus_basis_row(spec, i);
  const std::vector<double> row_j = torus_basis_row(spec, j);
  // sum_{l<=L} x^l (A^l)_{ij} = sum_c w_c * sum_{l<=L} (x*lambda_c)^l
  const double value = blocked_sum(static_cast<std::int64_t>(eigs.size()), [&](std::int64_t c) {
    const auto idx = static_cast<std::size_t>(c);
    return row_i[idx] * row_j[idx] * geometric_partial(x * eigs[idx], terms);
  });
  const double ratio = 2.0 * spec.dim * std::abs(x);
  const double tail = ratio < 1.0 ? std::pow(ratio, terms + 1) / (1.0 - ratio)
                                  : std::numeric_limits<double>::infinity();
  return {value, tail};
}

}  // namespace tspectra
