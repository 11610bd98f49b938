#pragma once

#include "sqm/linalg.hpp"

#include <functional>

namespace sqm {

enum class PropagatorKind { Free, Oscillator, Custom };

/// Kernel K(x,t;x',t') of a particle on a line. Free and oscillator kinds use
/// the principal square-root branch; their excluded time sets are t = t' and
/// omega (t'-t) in pi Z.
class Propagator {
 public:
  using Fn = std::function<cplx(double x, double t, double xp, double tp)>;
  using SingularFn = std::function<bool(double t, double tp)>;

  static Propagator free(double mass = 1.0, double hbar = 1.0);
  static Propagator oscillator(double mass = 1.0, double omega = 1.0, double hbar = 1.0);
  static Propagator custom(Fn fn, SingularFn singular = {});

  PropagatorKind kind() const { return kind_; }
  double mass() const { return m_; }
  double hbar() const { return hbar_; }
  double omega() const { return omega_; }

  bool is_singular(double t, double tp) const;
  /// Throws SingularTimeError on an excluded pair.
  void check_times(double t, double tp) const;

  cplx operator()(double x, double t, double xp, double tp) const;
  /// Analytic continuation in the positions (free and oscillator kinds only).
  cplx continued(cplx x, double t, cplx xp, double tp) const;

 private:
  PropagatorKind kind_ = PropagatorKind::Free;
  double m_ = 1.0, hbar_ = 1.0, omega_ = 0.0;
  Fn fn_;
  SingularFn singular_;
};

cplx propagator_free(double x, double t, double xp, double tp, double mass = 1.0, double hbar = 1.0);
cplx propagator_oscillator(double x, double t, double xp, double tp, double mass = 1.0, double omega = 1.0,
                           double hbar = 1.0);

struct CompositionCheck {
  cplx integral;
  cplx direct;
  double residual;
};

/// Integrates K(x,t;y,tm) K(y,tm;x2,t2) over y and compares with K(x,t;x2,t2).
/// The y contour is rotated through the stationary point so the chirp becomes
/// a Gaussian and a truncated Gauss–Legendre rule converges.
CompositionCheck composition_check(const Propagator& k, double x, double t, double tm, double x2, double t2,
                                   int panels = 64);

}  // namespace sqm
