#pragma once

#include "sqm/car.hpp"
#include "sqm/causal_net.hpp"
#include "sqm/ccr.hpp"

#include <vector>

namespace sqm {

/// Even-subalgebra handles phi(w_a) phi(w_b), a < b, for odd-dimensional subspaces of R^k
/// (columns of each basis span W). Uses the faithful representation of R^k.
std::vector<LocalAlgebraHandle> car_net_instance(const CliffordRep& rep, const std::vector<Eigen::MatrixXd>& subspaces);
/// Inclusion and Euclidean orthogonality of the subspaces.
ScopeSample car_scope_sample(const std::vector<Eigen::MatrixXd>& subspaces);

/// Weyl generators W(z) for the basis columns z of symplectic subspaces.
std::vector<LocalAlgebraHandle> ccr_net_instance(const SymplecticSpace& v, const MultiModeRep& rep,
                                                 const std::vector<Eigen::MatrixXd>& subspaces);
/// Inclusion and sigma-orthogonality of the subspaces.
ScopeSample ccr_scope_sample(const SymplecticSpace& v, const std::vector<Eigen::MatrixXd>& subspaces);

/// Random subspace of R^n spanned by dim Gaussian vectors.
Eigen::MatrixXd random_subspace(std::size_t n, std::size_t dim, std::mt19937_64& rng);
/// Span of the coordinate vectors e_i, i in idx (0-based).
Eigen::MatrixXd coordinate_subspace(std::size_t n, const std::vector<std::size_t>& idx);

}  // namespace sqm
