#pragma once

#include "sqm/coherent.hpp"
#include "sqm/povm.hpp"

#include <span>
#include <vector>

namespace sqm {

/// Discretized curve through ray space. Closed curves end on the ray they start on.
struct Curve {
  std::vector<Vector> samples;
  bool closed = false;

  /// Validates unit samples, nonvanishing consecutive overlaps and closure.
  static Curve from_vectors(std::vector<Vector> samples, bool closed);
  /// Spherical slerp through the given Bloch directions, n steps per edge.
  static Curve sphere_polygon(std::size_t dim, std::span<const Vec3> vertices, std::size_t n, bool closed);
  Curve reversed() const;
};

/// prod_{i} <v_i|v_{i+1}> along the sample list.
cplx bargmann_product(std::span<const Vector> samples);
/// A(C, n) = P_{a_0} ... P_{a_n}, evaluated as B |a_0><a_n|.
Operator path_operator(std::span<const Vector> samples);
/// conj(B / |B|) for the loop closed back onto the first sample.
cplx holonomy(const Curve& c);

/// c(t) = v cos(eps t) + u sin(eps t) with <v|c(1)> = cos eps > 0.
struct GreatCircle {
  Vector v;
  Vector u;
  double eps = 0.0;

  static GreatCircle between(const Vector& from, const Vector& to);
  Vector at(double t) const;
  std::vector<Vector> samples(std::size_t n) const;  // n + 1 points
  /// |c(0)><c(1)|, the n -> infinity limit of A(C, n).
  Operator limit_operator() const;
  /// cos(eps/n)^n |c(0)><c(1)|.
  Operator discrete_operator(std::size_t n) const;
};

struct GeodesicTriangle {
  Curve loop;
  cplx expected;  // cos eps_3 / <v_3|v_1>
};

/// Three great-circle arcs v_1 -> v_2 -> v_3 -> v_1 with n steps each.
GeodesicTriangle geodesic_triangle(const Vector& w1, const Vector& w2, const Vector& w3, std::size_t n);

/// Signed solid angle of the geodesic triangle n_1, n_2, n_3.
double solid_angle(const Vec3& n1, const Vec3& n2, const Vec3& n3);

struct RegionInterference {
  double probability;  // (1/4) C_1^{-1} Tr (A X + A Y)* (A X + A Y)
  double p_s;
  double p_t;
  double cross;  // C_1^{-1} Re Tr (A X)* (A Y)
};

/// Interference of the chains S_2..S_n and T_2..T_n after the common S_1 = T_1,
/// with S_n = T_n. Endpoint regions must resolve to the same nodes.
RegionInterference path_interference(const CoherentFamily& f, std::span<const Region> s_path,
                                     std::span<const Region> t_path);

struct CurveInterference {
  double probability;  // rho2 / 4
  double rho2;         // 2 + 2 Re hol(C_1 . C_2^{-1})
  cplx hol;
  double direct;       // (1/4) Tr (A_1 + A_2)* (A_1 + A_2) at the sampled resolution
};

CurveInterference curve_interference(const Curve& c1, const Curve& c2);

}  // namespace sqm
