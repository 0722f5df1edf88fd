#pragma once

#include <span>
#include <vector>

#include "tspectra/walks.hpp"

namespace tspectra {

/// Stirling lower bound sqrt(4*pi)/e^2 * 4^l / sqrt(l) for the central
/// binomial binom(2l, l). Undefined at l = 0 (the exact value there is 1).
double stirling_binomial_lower(int ell);

struct WgfLowerBound {
  double truncated;    // series cut at `terms`
  double closed_form;  // (1/x)(4*pi/e^4) * (-log(1 - 16/x^2))
  double difference;   // closed_form - truncated (the dropped tail)
};

/// Lower bound on the lattice walk generating function diagonal,
/// (1/x)(4*pi/e^4) * sum_{l>=1} (1/l) (4/x)^{2l}. Needs x > 4. The series
/// starts at l = 1; the exact series' l = 0 term (1/x) is accounted for
/// separately in chain comparisons.
WgfLowerBound lattice_wgf_lower(double x, int terms = 200);

/// Exact lattice series sum_{l=0..terms} x^{-2l-1} binom(2l,l)^2 and its
/// geometric tail allowance (ratio 16/x^2).
struct LatticeWgf {
  double truncated;
  double tail_bound;
};
LatticeWgf lattice_wgf_truncated(double x, int terms = 200);

/// One evaluation of the chain stirling <= lattice <= torus resolvent
/// diagonal at x, with the gaps between neighbors.
struct BoundReport {
  double x;
  double stirling_value;
  double lattice_value;
  double torus_value;
  double gap_stirling;  // lattice_value - stirling_value
  double gap_lattice;   // torus_value - lattice_value
  double lattice_tail;  // truncation allowance of lattice_value
};

BoundReport bound_chain(const TorusSpec& spec, double x, int terms = 200);

struct LengthComparisonRow {
  int length;
  BigInt torus_count;
  BigInt lattice_count;
  double percent_diff;  // 100 * (torus - lattice) / torus
};

/// Torus vs lattice closed-walk counts for even lengths up to max_length.
std::vector<LengthComparisonRow> compare_walks(int len, int max_length);

struct SideComparisonRow {
  int len;
  BigInt torus_count;
  BigInt lattice_count;
  double percent_diff;
};

/// Same comparison at a fixed even walk length, sweeping the torus side.
std::vector<SideComparisonRow> compare_walks_vs_len(int length, std::span<const int> lens);

}  // namespace tspectra
