#include "tspectra/bounds.hpp"

#include <cmath>
#include <numbers>

#include "tspectra/topology.hpp"

namespace tspectra {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

BigInt torus_closed_count(const TorusSpec& spec, int length) {
  try {
    return torus_closed_walks(spec, length).count;
  } catch (const DomainError&) {
    // Trace formula ran out of double precision; the exact propagation is
    // mandatory past that point.
    return count_walks_exact(build_torus(spec), 0, 0, length);
  }
}

double percent_difference(const BigInt& torus, const BigInt& lattice) {
  if (torus == 0) return 0.0;
  return 100.0 * static_cast<double>(BigInt(torus - lattice)) / static_cast<double>(torus);
}

}  // namespace

double stirling_binomial_lower(int ell) {
  if (ell < 1) throw DomainError("stirling bound needs ell >= 1 (exact value at 0 is 1)");
  return std::sqrt(kFourPi) / (std::numbers::e * std::numbers::e) *
         std::pow(4.0, ell) / std::sqrt(static_cast<double>(ell));
}

WgfLowerBound lattice_wgf_lower(double x, int terms) {
  if (!(x > 4.0)) throw DomainError("lattice bound diverges for x <= 4");
  if (terms < 1) throw DomainError("need at least one term");
  const double q = 16.0 / (x * x);
  const double scale = kFourPi / std::exp(4.0) / x;
  double series = 0.0;
  double power = 1.0;
  for (int l = 1; l <= terms; ++l) {
    power *= q;
    series += power / l;
  }
  WgfLowerBound bound;
  bound.truncated = scale * series;
  bound.closed_form = scale * (-std::log1p(-q));
  bound.difference = bound.closed_form - bound.truncated;
  return bound;
}

LatticeWgf lattice_wgf_truncated(double x, int terms) {
  if (!(x > 4.0)) throw DomainError("lattice series diverges for x <= 4");
  // term_l = x^{-2l-1} binom(2l,l)^2; term ratio (2(2l+1)/(l+1))^2 / x^2.
  double term = 1.0 / x;
  double total = term;
  for (int l = 0; l < terms; ++l) {
    const double ratio = 2.0 * (2 * l + 1) / (l + 1.0);
    term *= ratio * ratio / (x * x);
    total += term;
  }
  const double q = 16.0 / (x * x);
  return {total, term * q / (1.0 - q)};
}

BoundReport bound_chain(const TorusSpec& spec, double x, int terms) {
  BoundReport report;
  report.x = x;
  report.stirling_value = lattice_wgf_lower(x, terms).truncated;
  const LatticeWgf lattice = lattice_wgf_truncated(x, terms);
  report.lattice_value = lattice.truncated;
  report.lattice_tail = lattice.tail_bound;
  report.torus_value = torus_resolvent_diagonal(spec, x);
  report.gap_stirling = report.lattice_value - report.stirling_value;
  report.gap_lattice = report.torus_value - report.lattice_value;
  return report;
}

std::vector<LengthComparisonRow> compare_walks(int len, int max_length) {
  const TorusSpec spec{2, len};
  validate_torus_spec(spec);
  std::vector<LengthComparisonRow> rows(static_cast<std::size_t>(max_length / 2) + 1);
#pragma omp parallel for schedule(dynamic)
  for (int half = 0; half <= max_length / 2; ++half) {
    const int length = 2 * half;
    const BigInt torus = torus_closed_count(spec, length);
    const BigInt lattice = lattice_closed_walks(half).count;
    rows[static_cast<std::size_t>(half)] = {length, torus, lattice, percent_difference(torus, lattice)};
  }
  return rows;
}

std::vector<SideComparisonRow> compare_walks_vs_len(int length, std::span<const int> lens) {
  if (length % 2 != 0 || length < 0) throw DomainError("comparison needs an even walk length");
  const BigInt lattice = lattice_closed_walks(length / 2).count;
  std::vector<SideComparisonRow> rows(lens.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(lens.size()); ++k) {
    const TorusSpec spec{2, lens[static_cast<std::size_t>(k)]};
    const BigInt torus = torus_closed_count(spec, length);
    rows[static_cast<std::size_t>(k)] = {spec.len, torus, lattice, percent_difference(torus, lattice)};
  }
  return rows;
}

}  // namespace tspectra
