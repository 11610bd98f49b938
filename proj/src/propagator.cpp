#include "sqm/propagator.hpp"

#include "sqm/errors.hpp"
#include "sqm/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace sqm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

bool free_singular(double t, double tp) { return std::abs(tp - t) <= 1e-12 * std::max(1.0, std::abs(t)); }

bool caustic(double omega, double t, double tp) {
  const double phase = omega * (tp - t);
  return std::abs(phase - kPi * std::round(phase / kPi)) <= 1e-9;
}

template <class X>
cplx free_kernel(X x, double t, X xp, double tp, double m, double hbar) {
  const double big_t = tp - t;
  const cplx pref = std::sqrt(cplx(m, 0.0) / (2.0 * kPi * kI * hbar * big_t));
  const cplx d = cplx(xp) - cplx(x);
  return pref * std::exp(kI * m * d * d / (2.0 * hbar * big_t));
}

template <class X>
cplx osc_kernel(X x, double t, X xp, double tp, double m, double omega, double hbar) {
  const double wt = omega * (tp - t);
  const double s = std::sin(wt);
  const double cot = std::cos(wt) / s;
  const cplx pref = std::sqrt(cplx(m * omega, 0.0) / (2.0 * kPi * kI * hbar * s));
  const cplx a = cplx(x), b = cplx(xp);
  return pref * std::exp(kI * m * omega / (2.0 * hbar) * ((a * a + b * b) * cot - 2.0 * a * b / s));
}

}  // namespace

cplx propagator_free(double x, double t, double xp, double tp, double mass, double hbar) {
  if (free_singular(t, tp)) throw SingularTimeError("propagator_free: t = t'");
  return free_kernel(x, t, xp, tp, mass, hbar);
}

cplx propagator_oscillator(double x, double t, double xp, double tp, double mass, double omega, double hbar) {
  if (caustic(omega, t, tp)) throw SingularTimeError("propagator_oscillator: omega (t'-t) lies in pi Z");
  return osc_kernel(x, t, xp, tp, mass, omega, hbar);
}

Propagator Propagator::free(double mass, double hbar) {
  if (!(mass > 0) || !(hbar > 0)) throw ValidationError("Propagator: mass and hbar must be positive");
  Propagator p;
  p.kind_ = PropagatorKind::Free;
  p.m_ = mass;
  p.hbar_ = hbar;
  return p;
}

Propagator Propagator::oscillator(double mass, double omega, double hbar) {
  if (!(mass > 0) || !(hbar > 0) || !(omega > 0))
    throw ValidationError("Propagator: mass, omega and hbar must be positive");
  Propagator p;
  p.kind_ = PropagatorKind::Oscillator;
  p.m_ = mass;
  p.hbar_ = hbar;
  p.omega_ = omega;
  return p;
}

Propagator Propagator::custom(Fn fn, SingularFn singular) {
  if (!fn) throw ValidationError("Propagator: custom kernel is empty");
  Propagator p;
  p.kind_ = PropagatorKind::Custom;
  p.fn_ = std::move(fn);
  p.singular_ = std::move(singular);
  return p;
}

bool Propagator::is_singular(double t, double tp) const {
  switch (kind_) {
    case PropagatorKind::Free: return free_singular(t, tp);
    case PropagatorKind::Oscillator: return caustic(omega_, t, tp);
    case PropagatorKind::Custom: return singular_ ? singular_(t, tp) : false;
  }
  return false;
}

void Propagator::check_times(double t, double tp) const {
  if (is_singular(t, tp)) throw SingularTimeError("propagator evaluated at an excluded time pair");
}

cplx Propagator::operator()(double x, double t, double xp, double tp) const {
  check_times(t, tp);
  switch (kind_) {
    case PropagatorKind::Free: return free_kernel(x, t, xp, tp, m_, hbar_);
    case PropagatorKind::Oscillator: return osc_kernel(x, t, xp, tp, m_, omega_, hbar_);
    case PropagatorKind::Custom: return fn_(x, t, xp, tp);
  }
  return 0.0;
}

cplx Propagator::continued(cplx x, double t, cplx xp, double tp) const {
  check_times(t, tp);
  switch (kind_) {
    case PropagatorKind::Free: return free_kernel(x, t, xp, tp, m_, hbar_);
    case PropagatorKind::Oscillator: return osc_kernel(x, t, xp, tp, m_, omega_, hbar_);
    case PropagatorKind::Custom: break;
  }
  throw ValidationError("Propagator::continued: not available for custom kernels");
}

CompositionCheck composition_check(const Propagator& k, double x, double t, double tm, double x2, double t2,
                                   int panels) {
  if (k.kind() == PropagatorKind::Custom) throw ValidationError("composition_check: needs a closed-form kernel");
  // Exponent in y is i a y^2 - 2 i a c y + const; rotate y = c + e^{+-i pi/4} u.
  double a = 0.0, c = 0.0;
  const double m = k.mass(), hb = k.hbar();
  if (k.kind() == PropagatorKind::Free) {
    const double i1 = 1.0 / (tm - t), i2 = 1.0 / (t2 - tm);
    a = m / (2.0 * hb) * (i1 + i2);
    c = (x * i1 + x2 * i2) / (i1 + i2);
  } else {
    const double w = k.omega();
    const double s1 = std::sin(w * (tm - t)), s2 = std::sin(w * (t2 - tm));
    const double cot_sum = std::cos(w * (tm - t)) / s1 + std::cos(w * (t2 - tm)) / s2;
    a = m * w / (2.0 * hb) * cot_sum;
    c = (x / s1 + x2 / s2) / cot_sum;
  }
  if (std::abs(a) < 1e-300) throw DegenerateConfigurationError("composition_check: flat exponent");
  const cplx dir = std::polar(1.0, a > 0 ? kPi / 4 : -kPi / 4);
  const double span = 12.0 / std::sqrt(std::abs(a));
  const NodeSet nodes = composite_nodes(IntervalSet::single(-span, span),
                                        std::max(0, static_cast<int>(std::ceil(std::log2(panels / (2.0 * span))))), 16);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const cplx y = c + dir * nodes.x[i];
    acc += nodes.w[i] * dir * k.continued(cplx(x), t, y, tm) * k.continued(y, tm, cplx(x2), t2);
  }
  const cplx direct = k(x, t, x2, t2);
  return {acc, direct, std::abs(acc - direct)};
}

}  // namespace sqm
