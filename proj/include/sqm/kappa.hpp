#pragma once

#include "sqm/propagator.hpp"

#include <functional>
#include <span>

namespace sqm {

/// Cyclic product K(x1,t1;x2,t2) K(x2,t2;x3,t3) ... K(xn,tn;x1,t1).
cplx kappa_n(std::span<const double> x, std::span<const double> t, const Propagator& k);

/// Evaluator for a fixed-length kappa function: (points, times) -> value.
using KappaEval = std::function<cplx(std::span<const double> x, std::span<const double> t)>;

KappaEval kappa_from_propagator(const Propagator& k);

/// Free-particle two-point function m / (2 pi hbar |t2 - t1|).
double kappa2_free(double t1, double t2, double mass = 1.0, double hbar = 1.0);

/// Area of the triangle with vertices (x_i, t_i).
double triangle_area(double x1, double t1, double x2, double t2, double x3, double t3);

/// Free-particle four-point function at points (x1, x2, x3, x2') and times
/// (t1, t2, t3, t2), written through triangle areas.
cplx kappa4_free(double x1, double x2, double x3, double x2p, double t1, double t2, double t3, double mass = 1.0,
                 double hbar = 1.0);

/// Phase of kappa4_free: 2m (S^2 - S'^2) / (hbar t21 t32 t31).
double kappa4_free_phase(double x1, double x2, double x3, double x2p, double t1, double t2, double t3,
                         double mass = 1.0, double hbar = 1.0);

KappaEval kappa2_free_eval(double mass = 1.0, double hbar = 1.0);
KappaEval kappa4_free_eval(double mass = 1.0, double hbar = 1.0);

/// Throws unless t = (t1..tk, t_{k-1}..t2) with k >= 2. Returns k.
std::size_t check_folded_times(std::span<const double> t);

/// kappa_{2k-2} from four-point and two-point data. Points follow the folded
/// word: (x1..xk, x'_{k-1}..x'_2).
cplx kappa_reduce(const KappaEval& k2, const KappaEval& k4, std::span<const double> x, std::span<const double> t);

}  // namespace sqm
