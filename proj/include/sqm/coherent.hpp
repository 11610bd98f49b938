#pragma once

#include "sqm/linalg.hpp"

#include <functional>
#include <vector>

namespace sqm {

using Vec3 = Eigen::Vector3d;

/// Point of the Bloch sphere together with its gauge-fixed section vector.
struct ParamPoint {
  Vec3 n;
  Vector v;
};

/// Spin-j coherent state for the direction n, components m = j, j-1, ..., -j.
/// d = 2j + 1. The first nonvanishing component is real positive.
Vector spin_coherent(std::size_t dim, const Vec3& n);
ParamPoint make_point(std::size_t dim, const Vec3& n);
Vec3 direction(double theta, double phi);

/// Quadrature of the coherent-state resolution of identity,
/// M(S) = sum_{x in S} w_x |v_x><v_x|.
class CoherentFamily {
 public:
  CoherentFamily(std::size_t dim, std::vector<ParamPoint> nodes, std::vector<double> weights);

  /// Equal weights d/N on a Fibonacci lattice.
  static CoherentFamily fibonacci(std::size_t dim, std::size_t n);
  /// Gauss–Legendre in cos(theta) times a uniform phi grid. The resolution of
  /// identity is exact when n_theta >= (dim+1)/2 and n_phi >= dim.
  static CoherentFamily gauss_product(std::size_t dim, std::size_t n_theta, std::size_t n_phi,
                                      double phi_offset = 0.0);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return nodes_.size(); }
  const ParamPoint& node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return w_[i]; }
  const std::vector<ParamPoint>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return w_; }

  Operator element(const std::vector<std::size_t>& idx) const;
  /// Operator norm of sum_x w_x P_x - I.
  double completeness_residual() const;

 private:
  std::size_t dim_;
  std::vector<ParamPoint> nodes_;
  std::vector<double> w_;
};

/// Subset of the sphere given by a membership predicate.
class Region {
 public:
  using Pred = std::function<bool(const Vec3&)>;

  explicit Region(Pred p) : pred_(std::move(p)) {}
  static Region all();
  /// Closed cap of angular radius alpha around axis.
  static Region cap(const Vec3& axis, double alpha);
  /// Band alpha_lo < angle(axis, n) <= alpha_hi.
  static Region band(const Vec3& axis, double alpha_lo, double alpha_hi);

  Region operator|(const Region& o) const;
  Region operator&(const Region& o) const;
  Region operator-(const Region& o) const;

  bool contains(const Vec3& n) const { return pred_(n); }
  std::vector<std::size_t> resolve(const CoherentFamily& f) const;

 private:
  Pred pred_;
};

/// mu(cap) = d (1 - cos alpha) / 2.
double cap_measure(std::size_t dim, double alpha);

}  // namespace sqm
