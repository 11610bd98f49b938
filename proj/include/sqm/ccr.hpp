#pragma once

#include "sqm/interval_set.hpp"
#include "sqm/linalg.hpp"

#include <map>
#include <span>
#include <vector>

namespace sqm {

/// Real vector space with an antisymmetric form sigma.
class SymplecticSpace {
 public:
  explicit SymplecticSpace(Eigen::MatrixXd sigma);
  /// sigma((q_i, p_i), (q_j, p_j)) = q_i p_j - p_i q_j on each mode, coordinates (q1, p1, q2, p2, ...).
  static SymplecticSpace standard(std::size_t modes);

  std::size_t dim() const { return static_cast<std::size_t>(sigma_.rows()); }
  const Eigen::MatrixXd& sigma() const { return sigma_; }
  double operator()(const RealVector& a, const RealVector& b) const { return a.dot(sigma_ * b); }

  /// |det| of sigma restricted to the span of basis (columns orthonormalized first).
  double restricted_det(const Eigen::MatrixXd& basis) const;
  bool is_symplectic(const Eigen::MatrixXd& basis) const { return restricted_det(basis) > 1e-10; }
  /// sigma(a, b) = 0 for all a in span(A), b in span(B).
  bool orthogonal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-10) const;

 private:
  Eigen::MatrixXd sigma_;
};

/// span(A) inside span(B).
bool subspace_contains(const Eigen::MatrixXd& b, const Eigen::MatrixXd& a, double tol = 1e-10);

struct Window {
  double lo;
  double hi;
  double spec_lo;
  double spec_hi;
};

/// One-mode Schrödinger representation on the cell-centred grid x_i = -L + (i + 1/2) dx.
class WeylGridRep {
 public:
  WeylGridRep(double half_width, std::size_t points, double hbar = 1.0);

  double half_width() const { return l_; }
  std::size_t points() const { return g_; }
  double hbar() const { return hbar_; }
  const Operator& q() const { return q_; }
  const Operator& p() const { return p_; }
  /// a Q + b P.
  Operator field(const RealVector& v) const;
  /// exp(i (a Q + b P)).
  Operator weyl(const RealVector& v) const;
  /// chi_S(a Q + b P).
  Operator field_pvm(const RealVector& v, const IntervalSet& s) const;
  /// Middle 60% of the field spectrum.
  Window window(const RealVector& v) const;
  /// sigma(v, u) = hbar (v_1 u_2 - v_2 u_1).
  double sigma(const RealVector& v, const RealVector& u) const;

  /// Normalised Hermite functions h_0..h_{n-1} sampled on the grid, as columns.
  Matrix hermite_modes(std::size_t n) const;

 private:
  struct Direction {
    RealVector unit;
    Spectrum spec;
  };
  const Direction& direction(const RealVector& v, double& scale) const;
  void check_v(const RealVector& v) const;

  double l_;
  std::size_t g_;
  double hbar_;
  double dx_;
  Operator q_;
  Operator p_;
  Matrix fourier_;  // columns are momentum eigenvectors, ascending momentum
  RealVector k_;
  mutable std::vector<Direction> cache_;
};

/// max over the first n Hermite modes of |(W(v) W(u) - e^{-i sigma(v,u)/2} W(v+u)) h|.
double weyl_relation_residual(const WeylGridRep& rep, const RealVector& v, const RealVector& u,
                              std::size_t modes = 20);
/// max over the first n Hermite modes of |([Q, P] - i hbar) h|.
double ccr_residual(const WeylGridRep& rep, std::size_t modes = 20);

struct FieldFactor {
  RealVector v;
  IntervalSet s;
};

struct ZProb {
  double probability;
  double numerator;
  double denominator;
};

/// Tr((AB)*(AB)) / Tr(A*A) for products of field projections.
ZProb prob_z(const WeylGridRep& rep, std::span<const FieldFactor> a, std::span<const FieldFactor> b);
double trace_aa(const WeylGridRep& rep, std::span<const FieldFactor> a);

/// Slope of log Tr A*A against log G at fixed half-width; 0 for trace-class limits, 1 for a
/// trace that grows with the grid.
struct GrowthReport {
  std::vector<std::size_t> points;
  std::vector<double> traces;
  double exponent;
};
GrowthReport trace_growth(double half_width, std::span<const std::size_t> points, std::span<const FieldFactor> a,
                          double hbar = 1.0);

/// Tensor product of one-mode grids; coordinates (q1, p1, q2, p2, ...).
class MultiModeRep {
 public:
  MultiModeRep(std::size_t modes, double half_width, std::size_t points, double hbar = 1.0);
  std::size_t modes() const { return modes_; }
  std::size_t dim() const { return dim_; }
  const WeylGridRep& mode() const { return mode_; }
  /// W(v) = W_1(v_1) (x) ... (x) W_n(v_n).
  Operator weyl(const RealVector& v) const;
  /// chi_S of the summed field, from the joint spectrum of the one-mode fields.
  Operator field_pvm(const RealVector& v, const IntervalSet& s) const;

 private:
  std::size_t modes_;
  std::size_t dim_;
  WeylGridRep mode_;
};

}  // namespace sqm
