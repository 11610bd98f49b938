#pragma once

#include "sqm/coherent.hpp"
#include "sqm/povm.hpp"

#include <span>

namespace sqm {

/// U(t) = exp(-i t H) for a Hermitian generator H.
class UnitaryGroup {
 public:
  explicit UnitaryGroup(const Operator& h);
  Operator at(double t) const;
  /// U(t) M U(-t).
  Operator evolve(const Operator& m, double t) const;
  std::size_t dim() const { return static_cast<std::size_t>(spec_.eigenvalues.size()); }

 private:
  Spectrum spec_;
};

/// Prior probability for time-evolved elements M_{t_i}(S_i).
PovmProb timed_prior_prob(const CoherentFamily& f, std::span<const Region> regions, std::span<const double> times,
                          const UnitaryGroup& u, std::size_t k);

/// K(x, t; x', t') = <v_x| U(t' - t) v_x'>.
cplx propagator_povm(const Vector& x, double t, const Vector& xp, double tp, const UnitaryGroup& u);

/// kappa_n = Tr P_{x_1,t_1} ... P_{x_n,t_n}, as the cyclic product of propagators.
cplx kappa_povm(std::span<const Vector> pts, std::span<const double> times, const UnitaryGroup& u);

}  // namespace sqm
