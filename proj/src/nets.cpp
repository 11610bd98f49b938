#include "sqm/nets.hpp"

#include "sqm/errors.hpp"

#include <string>

namespace sqm {

namespace {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& b) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
  return qr.householderQ() * Eigen::MatrixXd::Identity(b.rows(), b.cols());
}

std::string scope_name(const char* prefix, std::size_t i, const Eigen::MatrixXd& b) {
  return std::string(prefix) + std::to_string(i) + "[dim " + std::to_string(b.cols()) + "]";
}

}  // namespace

std::vector<LocalAlgebraHandle> car_net_instance(const CliffordRep& rep, const std::vector<Eigen::MatrixXd>& subspaces) {
  std::vector<LocalAlgebraHandle> out;
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    const auto& b = subspaces[i];
    if (static_cast<std::size_t>(b.rows()) != rep.k()) throw ValidationError("car_net_instance: basis rows must equal k");
    if (b.cols() % 2 == 0) throw ValidationError("car_net_instance: subspaces must be odd-dimensional");
    const Eigen::MatrixXd gram = b.transpose() * b;
    if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().minCoeff() <= 1e-10)
      throw ValidationError("car_net_instance: inner product degenerate on the subspace");
    const Eigen::MatrixXd q = orthonormalize(b);
    LocalAlgebraHandle h{scope_name("W", i, b), {}};
    for (Eigen::Index a = 0; a < q.cols(); ++a)
      for (Eigen::Index c = a + 1; c < q.cols(); ++c)
        h.generators.emplace_back(rep.phi(q.col(a)).matrix() * rep.phi(q.col(c)).matrix());
    if (h.generators.empty()) h.generators.push_back(Operator::identity(rep.dim()));
    out.push_back(std::move(h));
  }
  return out;
}

ScopeSample car_scope_sample(const std::vector<Eigen::MatrixXd>& subspaces) {
  ScopeSample s;
  std::vector<Eigen::MatrixXd> q;
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    s.names.push_back(scope_name("W", i, subspaces[i]));
    q.push_back(orthonormalize(subspaces[i]));
  }
  s.leq = [subspaces](std::size_t a, std::size_t b) { return subspace_contains(subspaces[b], subspaces[a]); };
  s.perp = [q](std::size_t a, std::size_t b) { return (q[a].transpose() * q[b]).cwiseAbs().maxCoeff() <= 1e-12; };
  return s;
}

std::vector<LocalAlgebraHandle> ccr_net_instance(const SymplecticSpace& v, const MultiModeRep& rep,
                                                 const std::vector<Eigen::MatrixXd>& subspaces) {
  if (v.dim() != 2 * rep.modes()) throw ValidationError("ccr_net_instance: representation does not match dim V");
  std::vector<LocalAlgebraHandle> out;
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    const auto& b = subspaces[i];
    if (!v.is_symplectic(b)) throw ValidationError("ccr_net_instance: subspace is not symplectic");
    LocalAlgebraHandle h{scope_name("Z", i, b), {}};
    for (Eigen::Index c = 0; c < b.cols(); ++c) h.generators.push_back(rep.weyl(b.col(c)));
    out.push_back(std::move(h));
  }
  return out;
}

ScopeSample ccr_scope_sample(const SymplecticSpace& v, const std::vector<Eigen::MatrixXd>& subspaces) {
  ScopeSample s;
  for (std::size_t i = 0; i < subspaces.size(); ++i) s.names.push_back(scope_name("Z", i, subspaces[i]));
  s.leq = [subspaces](std::size_t a, std::size_t b) { return subspace_contains(subspaces[b], subspaces[a]); };
  s.perp = [v, subspaces](std::size_t a, std::size_t b) { return v.orthogonal(subspaces[a], subspaces[b]); };
  return s;
}

Eigen::MatrixXd random_subspace(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0 || dim > n) throw ValidationError("random_subspace: need 1 <= dim <= n");
  std::normal_distribution<double> g;
  Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (Eigen::Index c = 0; c < b.cols(); ++c)
    for (Eigen::Index r = 0; r < b.rows(); ++r) b(r, c) = g(rng);
  return b;
}

Eigen::MatrixXd coordinate_subspace(std::size_t n, const std::vector<std::size_t>& idx) {
  if (idx.empty()) throw ValidationError("coordinate_subspace: empty index list");
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) {
    if (idx[c] >= n) throw ValidationError("coordinate_subspace: index out of range");
    b(static_cast<Eigen::Index>(idx[c]), static_cast<Eigen::Index>(c)) = 1.0;
  }
  return b;
}

}  // namespace sqm
