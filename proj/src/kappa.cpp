#include "sqm/kappa.hpp"

#include "sqm/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace sqm {

cplx kappa_n(std::span<const double> x, std::span<const double> t, const Propagator& k) {
  if (x.size() != t.size() || x.empty()) throw ValidationError("kappa_n: points and times must match and be non-empty");
  const std::size_t n = x.size();
  cplx acc = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    acc *= k(x[i], t[i], x[j], t[j]);
  }
  return acc;
}

KappaEval kappa_from_propagator(const Propagator& k) {
  return [k](std::span<const double> x, std::span<const double> t) { return kappa_n(x, t, k); };
}

double kappa2_free(double t1, double t2, double mass, double hbar) {
  const double dt = t2 - t1;
  if (std::abs(dt) <= 1e-12 * std::max(1.0, std::abs(t1))) throw SingularTimeError("kappa2_free: t1 = t2");
  return mass / (2.0 * std::numbers::pi * hbar * std::abs(dt));
}

double triangle_area(double x1, double t1, double x2, double t2, double x3, double t3) {
  return 0.5 * std::abs((x2 - x1) * (t3 - t1) - (x3 - x1) * (t2 - t1));
}

cplx kappa4_free(double x1, double x2, double x3, double x2p, double t1, double t2, double t3, double mass,
                 double hbar) {
  const double t21 = t2 - t1, t32 = t3 - t2, t31 = t3 - t1;
  const double eps = 1e-12 * std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
  if (std::abs(t21) <= eps || std::abs(t32) <= eps || std::abs(t31) <= eps)
    throw SingularTimeError("kappa4_free: coincident times");
  const double pref = mass * mass / (4.0 * std::numbers::pi * std::numbers::pi * hbar * hbar * std::abs(t21 * t32));
  return std::polar(pref, kappa4_free_phase(x1, x2, x3, x2p, t1, t2, t3, mass, hbar));
}

double kappa4_free_phase(double x1, double x2, double x3, double x2p, double t1, double t2, double t3, double mass,
                         double hbar) {
  const double s = triangle_area(x1, t1, x2, t2, x3, t3);
  const double sp = triangle_area(x1, t1, x2p, t2, x3, t3);
  return 2.0 * mass / (hbar * (t2 - t1) * (t3 - t2) * (t3 - t1)) * (s * s - sp * sp);
}

KappaEval kappa2_free_eval(double mass, double hbar) {
  return [mass, hbar](std::span<const double> x, std::span<const double> t) -> cplx {
    if (x.size() != 2 || t.size() != 2) throw ValidationError("kappa2: needs two points");
    return kappa2_free(t[0], t[1], mass, hbar);
  };
}

KappaEval kappa4_free_eval(double mass, double hbar) {
  return [mass, hbar](std::span<const double> x, std::span<const double> t) -> cplx {
    if (x.size() != 4 || t.size() != 4) throw ValidationError("kappa4: needs four points");
    if (t[3] != t[1]) throw ValidationError("kappa4_free: times must be (t1, t2, t3, t2)");
    return kappa4_free(x[0], x[1], x[2], x[3], t[0], t[1], t[2], mass, hbar);
  };
}

std::size_t check_folded_times(std::span<const double> t) {
  if (t.size() < 2 || t.size() % 2 != 0) throw ValidationError("folded times: length must be even and >= 2");
  const std::size_t k = t.size() / 2 + 1;
  for (std::size_t i = 2; i < k; ++i) {
    // 1-based: t_{2k-i} = t_i
    if (t[2 * k - i - 1] != t[i - 1])
      throw ValidationError("folded times: expected pattern (t1..tk, t_{k-1}..t2), mismatch at " + std::to_string(i));
  }
  return k;
}

cplx kappa_reduce(const KappaEval& k2, const KappaEval& k4, std::span<const double> x, std::span<const double> t) {
  if (x.size() != t.size()) throw ValidationError("kappa_reduce: points and times must match");
  const std::size_t k = check_folded_times(t);
  // 1-based accessors into the folded word.
  auto X = [&](std::size_t i) { return x[i - 1]; };
  auto Xp = [&](std::size_t i) { return (i == 1 || i == k) ? x[i - 1] : x[2 * k - i - 1]; };
  auto T = [&](std::size_t i) { return t[i - 1]; };
  if (k == 2) {
    const std::array<double, 2> p{X(1), X(2)}, s{T(1), T(2)};
    return k2(p, s);
  }
  cplx num = 1.0;
  for (std::size_t i = 1; i + 2 <= k; ++i) {
    const std::array<double, 4> p{X(i), X(i + 1), Xp(i + 2), Xp(i + 1)};
    const std::array<double, 4> s{T(i), T(i + 1), T(i + 2), T(i + 1)};
    num *= k4(p, s);
  }
  cplx den = 1.0;
  for (std::size_t j = 2; j + 2 <= k; ++j) {
    const std::array<double, 2> p{X(j), Xp(j + 1)};
    const std::array<double, 2> s{T(j), T(j + 1)};
    const cplx v = k2(p, s);
    if (std::abs(v) <= 1e-300) throw DegenerateConfigurationError("kappa_reduce: vanishing two-point denominator");
    den *= v;
  }
  return num / den;
}

}  // namespace sqm
