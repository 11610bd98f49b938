#include "sqm/timed.hpp"

#include "sqm/errors.hpp"

#include <cmath>

namespace sqm {

UnitaryGroup::UnitaryGroup(const Operator& h) : spec_(hermitian_spectrum(h, 1e-10)) {}

Operator UnitaryGroup::at(double t) const {
  if (!std::isfinite(t)) throw ValidationError("UnitaryGroup: time must be finite");
  return unitary_evolution(spec_, t);
}

Operator UnitaryGroup::evolve(const Operator& m, double t) const {
  const Matrix ut = at(t).matrix();
  return Operator(ut * m.matrix() * ut.adjoint());
}

PovmProb timed_prior_prob(const CoherentFamily& f, std::span<const Region> regions, std::span<const double> times,
                          const UnitaryGroup& u, std::size_t k) {
  if (regions.size() != times.size()) throw ValidationError("timed_prior_prob: one time per region");
  std::vector<Operator> ops;
  ops.reserve(regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i) ops.push_back(u.evolve(f.element(regions[i].resolve(f)), times[i]));
  return prior_prob(ops, k);
}

cplx propagator_povm(const Vector& x, double t, const Vector& xp, double tp, const UnitaryGroup& u) {
  return x.dot(u.at(tp - t).matrix() * xp);
}

cplx kappa_povm(std::span<const Vector> pts, std::span<const double> times, const UnitaryGroup& u) {
  if (pts.empty() || pts.size() != times.size()) throw ValidationError("kappa_povm: one time per point");
  cplx z = 1.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) z *= propagator_povm(pts[i], times[i], pts[(i + 1) % n], times[(i + 1) % n], u);
  return z;
}

}  // namespace sqm
