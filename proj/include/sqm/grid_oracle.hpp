#pragma once

#include "sqm/interval_set.hpp"
#include "sqm/linalg.hpp"
#include "sqm/propagator.hpp"

#include <span>
#include <vector>

namespace sqm {

enum class Weighting {
  /// Cell i carries the fraction of [x_i - dx/2, x_i + dx/2) inside the region.
  CellOverlap,
  /// 0/1 indicator at the cell centre; the region operators are projections.
  Sharp,
};

struct GridSpec {
  double L = 40.0;        // box half-width
  std::size_t G = 2048;   // cells, power of two
  Weighting weighting = Weighting::CellOverlap;
};

/// Half-width at which the grid momentum cutoff equals the position cutoff
/// in oscillator units, L = sqrt(pi hbar G / (2 m omega)). Smaller boxes leave
/// most grid momenta outside the classical region and the dynamics is wrong.
double balanced_oscillator_half_width(std::size_t G, double mass, double omega, double hbar);

/// Position-projection traces on a lattice, independent of the propagator
/// formulas. Free motion is evolved exactly in Fourier space on a zero-padded
/// lattice, so nothing leaving the box wraps back in. The oscillator is
/// diagonalised densely on the box.
class GridOracle {
 public:
  GridOracle(const GridSpec& spec, const Propagator& kind);

  const GridSpec& spec() const { return spec_; }
  double dx() const { return dx_; }
  const std::vector<double>& positions() const { return x_; }

  std::vector<double> region_weights(const IntervalSet& s) const;

  /// Matrix elements <x_r| exp(-i H tau / hbar) |x_c>.
  Matrix evolution_block(double tau, std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  /// Padding factor used for free evolution over |tau|.
  std::size_t padding(double tau) const;

  /// Tr E_{t1}(X1) ... E_{tn}(Xn) with E_t(X) = U(-t) chi_X U(t).
  cplx trace(const std::vector<IntervalSet>& regions, std::span<const double> times) const;
  /// Trace of the folded word X1..Xn X_{n-1}..X2.
  cplx folded_trace(const std::vector<IntervalSet>& regions, std::span<const double> times) const;
  /// Ratio of folded traces; k = n gives 1.
  double prob(const std::vector<IntervalSet>& regions, std::span<const double> times, std::size_t k) const;

 private:
  GridSpec spec_;
  Propagator kind_;
  double dx_ = 0.0;
  std::vector<double> x_;
  Spectrum osc_;
};

}  // namespace sqm
