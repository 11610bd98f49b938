#pragma once

#include "sqm/coherent.hpp"

#include <functional>
#include <span>

namespace sqm {

/// zeta_n = Tr P_1 ... P_n = prod <v_i|v_{i+1}> (cyclic).
cplx zeta_n(std::span<const Vector> pts);
/// Same value from the product of projection matrices.
cplx zeta_n_trace(std::span<const Vector> pts);

using Zeta2Eval = std::function<double(const Vector&, const Vector&)>;
using Zeta3Eval = std::function<cplx(const Vector&, const Vector&, const Vector&)>;

Zeta2Eval zeta2_direct();
Zeta3Eval zeta3_direct();
/// Complex conjugate of zeta3_direct: the mirror theory with identical probabilities.
Zeta3Eval zeta3_conjugated();

/// zeta_n = prod_{i=2}^{n-1} zeta3(x_1, x_i, x_{i+1}) / prod_{i=3}^{n-1} zeta2(x_1, x_i).
cplx zeta_reduce(const Zeta2Eval& z2, const Zeta3Eval& z3, std::span<const Vector> pts);

/// P(S_2..S_N | S_1) as C_1^{-1} sum zeta_{2N}(x_1..x_N, x'_N..x'_1) over nodes,
/// with every zeta_{2N} assembled by zeta_reduce.
double zeta_prob(const CoherentFamily& f, std::span<const Region> regions, const Zeta2Eval& z2,
                 const Zeta3Eval& z3);

}  // namespace sqm
