#pragma once

#include "sqm/interval_set.hpp"
#include "sqm/kappa.hpp"
#include "sqm/quadrature.hpp"

#include <span>
#include <vector>

namespace sqm {

enum class TraceMode {
  /// Direct product of the 2n-2 propagator factors, contracted as matrices.
  Propagator,
  /// Four-point / two-point reduction contracted along bond variables.
  Reduced,
};

/// Tr E_{t1}(X1) ... E_{tn}(Xn) E_{t_{n-1}}(X_{n-1}) ... E_{t2}(X2) at one
/// quadrature depth. Needs n >= 2.
cplx folded_trace_at_depth(const std::vector<IntervalSet>& regions, std::span<const double> times,
                           const Propagator& k, int depth, int order, TraceMode mode = TraceMode::Propagator,
                           bool conjugate = false);

struct TraceResult {
  cplx value;
  int depth = 0;
  std::size_t max_nodes = 0;
  double change = 0.0;
};

/// Refines the depth until the value changes by at most abs_tol.
TraceResult folded_trace(const std::vector<IntervalSet>& regions, std::span<const double> times,
                         const Propagator& k, const QuadratureSpec& q, TraceMode mode = TraceMode::Propagator);

struct ProbResult {
  double probability = 0.0;
  double raw = 0.0;  // before clamping to [0, 1]
  cplx numerator;
  cplx denominator;
  int depth = 0;
  std::size_t max_nodes = 0;
  double change = 0.0;
  bool clamped = false;
};

/// Prior conditional probability of X_{k+1}..X_n given X_1..X_k for sharp
/// position projections. k = 1 is rejected: a single position projection is
/// not trace class.
ProbResult prior_prob_pvm(const std::vector<IntervalSet>& regions, std::span<const double> times, std::size_t k,
                          const Propagator& kernel, const QuadratureSpec& q = {},
                          TraceMode mode = TraceMode::Propagator, bool conjugate = false);

/// P(X3 | X1, X2) for a free particle from the closed-form two- and
/// four-point functions. The x1 and x3 integrals are done exactly because the
/// four-point phase is linear in both; the remaining difference x2 - x2' uses composite
/// Gauss–Legendre (up to 64x the per-variable node budget).
ProbResult doubleslit_prob(const IntervalSet& x1, const IntervalSet& x2, const IntervalSet& x3, double t1, double t2,
                           double t3, double mass = 1.0, double hbar = 1.0, const QuadratureSpec& q = {},
                           bool conjugate = false);

/// Galilei boost x -> x + v t applied to each region at its time.
std::vector<IntervalSet> galilei_boost(const std::vector<IntervalSet>& regions, std::span<const double> times,
                                       double v);

}  // namespace sqm
