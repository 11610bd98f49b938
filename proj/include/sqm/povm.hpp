#pragma once

#include "sqm/coherent.hpp"

#include <span>
#include <vector>

namespace sqm {

/// M(S) for the nodes of F inside S. Throws ValidationError when nothing resolves.
Operator povm_element(const CoherentFamily& f, const Region& s);

struct PovmProb {
  double probability;
  double numerator;
  double denominator;
};

/// Tr((AB)*(AB)) / Tr(A*A) with A = ops[0..k), B = ops[k..n).
PovmProb prior_prob(std::span<const Operator> ops, std::size_t k);
PovmProb prior_prob_povm(const CoherentFamily& f, std::span<const Region> regions, std::size_t k);

struct NaimarkDilation {
  Matrix isometry;                    // V : C^d -> C^d (x) C^r
  std::vector<Operator> projections;  // I_d (x) |e_i><e_i|, or M_i itself for PVM input
  double compression_residual;        // max_i |V* E_i V - M_i|
};

/// Block-isometry dilation V phi = sum_i sqrt(M_i) phi (x) e_i.
NaimarkDilation naimark_dilation(std::span<const Operator> elements);

/// |P(sum A) - sum_{i<j} P(A_i + A_j) + (K - 2) sum P(A_i)| with P(A) = Tr A rho A*.
double sorkin_residual(std::span<const Operator> a, const Operator& rho);

/// Sorkin residual for P_0(X) = P(X | S_0) over node-disjoint regions, each P_0 from prior_prob_povm.
double sorkin_povm_residual(const CoherentFamily& f, const Region& s0, std::span<const Region> parts);

/// P_{x_0} ... P_{x_{j+1}}.
Operator path_product(std::span<const Vector> pts);
/// F = prod <v_i|v_{i+1}> along the open chain.
cplx overlap_chain(std::span<const Vector> pts);
/// Tr A(x) A(x)*.
double sorkin_rho1(std::span<const Vector> x);
/// Tr (A(x) + A(y)) (A(x) + A(y))*. Endpoints must agree.
double sorkin_rho2(std::span<const Vector> x, std::span<const Vector> y);

/// P(S_2 .. S_j | S_1) assembled from node-level densities
/// (1/2)(rho2 - rho1 - rho1) summed over free endpoints and paired interior chains.
double sorkin_reconstruct(const CoherentFamily& f, std::span<const Region> regions);

}  // namespace sqm
