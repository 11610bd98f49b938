#pragma once

#include "sqm/interval_set.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace sqm {

struct QuadratureSpec {
  double abs_tol = 1e-6;
  int order = 8;  // Gauss–Legendre points per panel: 8, 16 or 20
  int min_depth = 0;
  int max_depth = 12;
  /// Upper bound on nodes per integration variable.
  std::size_t node_budget = 4096;
};

struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

/// Gauss–Legendre rule on [-1, 1].
NodeSet gauss_legendre(int order);

/// Composite rule over every interval of s with panel width at most 2^-depth.
NodeSet composite_nodes(const IntervalSet& s, int depth, int order);

/// Integral of exp(i c x) over s, exact.
std::complex<double> exp_integral(double c, const IntervalSet& s);

}  // namespace sqm
