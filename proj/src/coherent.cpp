#include "sqm/coherent.hpp"

#include "sqm/errors.hpp"
#include "sqm/quadrature.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <cmath>
#include <numbers>

namespace sqm {

Vec3 direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vector spin_coherent(std::size_t dim, const Vec3& n) {
  if (dim == 0) throw ValidationError("spin_coherent: dim must be positive");
  const double r = n.norm();
  if (std::abs(r - 1.0) > 1e-10) throw ValidationError("spin_coherent: direction must be a unit vector");
  const double theta = std::acos(std::clamp(n.z() / r, -1.0, 1.0));
  const double phi = std::atan2(n.y(), n.x());
  const auto twoj = static_cast<unsigned>(dim - 1);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Vector v(static_cast<Eigen::Index>(dim));
  for (unsigned a = 0; a <= twoj; ++a) {
    const double amp = std::sqrt(boost::math::binomial_coefficient<double>(twoj, a)) *
                       std::pow(c, static_cast<double>(twoj - a)) * std::pow(s, static_cast<double>(a));
    v(a) = std::polar(amp, static_cast<double>(a) * phi);
  }
  v /= v.norm();
  return gauge_fix(v);
}

ParamPoint make_point(std::size_t dim, const Vec3& n) { return {n.normalized(), spin_coherent(dim, n.normalized())}; }

CoherentFamily::CoherentFamily(std::size_t dim, std::vector<ParamPoint> nodes, std::vector<double> weights)
    : dim_(dim), nodes_(std::move(nodes)), w_(std::move(weights)) {
  if (dim_ == 0) throw ValidationError("CoherentFamily: dim must be positive");
  if (nodes_.size() != w_.size() || nodes_.empty()) throw ValidationError("CoherentFamily: nodes and weights mismatch");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(w_[i] > 0)) throw ValidationError("CoherentFamily: weights must be positive");
    if (static_cast<std::size_t>(nodes_[i].v.size()) != dim_ || std::abs(nodes_[i].v.norm() - 1.0) > 1e-12)
      throw ValidationError("CoherentFamily: section vectors must be unit vectors of length dim");
  }
}

CoherentFamily CoherentFamily::fibonacci(std::size_t dim, std::size_t n) {
  if (n == 0) throw ValidationError("fibonacci: need at least one node");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<ParamPoint> nodes;
  std::vector<double> w;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    nodes.push_back(make_point(dim, Vec3(rho * std::cos(phi), rho * std::sin(phi), z)));
    w.push_back(static_cast<double>(dim) / static_cast<double>(n));
  }
  return CoherentFamily(dim, std::move(nodes), std::move(w));
}

CoherentFamily CoherentFamily::gauss_product(std::size_t dim, std::size_t n_theta, std::size_t n_phi,
                                             double phi_offset) {
  if (n_theta == 0 || n_phi == 0) throw ValidationError("gauss_product: grid sizes must be positive");
  // Gauss–Legendre nodes of arbitrary order from the boost rules is awkward;
  // solve the Golub–Welsch eigenproblem instead.
  const auto nt = static_cast<Eigen::Index>(n_theta);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nt, nt);
  for (Eigen::Index k = 1; k < nt; ++k) {
    const double kk = static_cast<double>(k);
    jac(k, k - 1) = jac(k - 1, k) = kk / std::sqrt(4.0 * kk * kk - 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  std::vector<ParamPoint> nodes;
  std::vector<double> w;
  for (Eigen::Index a = 0; a < nt; ++a) {
    const double z = es.eigenvalues()(a);
    const double wz = 2.0 * es.eigenvectors()(0, a) * es.eigenvectors()(0, a);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (std::size_t b = 0; b < n_phi; ++b) {
      const double phi = phi_offset + 2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(n_phi);
      nodes.push_back(make_point(dim, Vec3(rho * std::cos(phi), rho * std::sin(phi), z)));
      w.push_back(static_cast<double>(dim) * wz / (2.0 * static_cast<double>(n_phi)));
    }
  }
  return CoherentFamily(dim, std::move(nodes), std::move(w));
}

Operator CoherentFamily::element(const std::vector<std::size_t>& idx) const {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t i : idx) {
    if (i >= nodes_.size()) throw ValidationError("CoherentFamily::element: node index out of range");
    m.noalias() += w_[i] * nodes_[i].v * nodes_[i].v.adjoint();
  }
  return Operator(std::move(m));
}

double CoherentFamily::completeness_residual() const {
  std::vector<std::size_t> all(nodes_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const Operator d = element(all) - Operator::identity(dim_);
  const Spectrum s = hermitian_spectrum(d);
  return std::max(std::abs(s.eigenvalues.minCoeff()), std::abs(s.eigenvalues.maxCoeff()));
}

Region Region::all() {
  return Region([](const Vec3&) { return true; });
}

Region Region::cap(const Vec3& axis, double alpha) {
  const Vec3 a = axis.normalized();
  const double c = std::cos(alpha);
  return Region([a, c](const Vec3& n) { return a.dot(n) >= c - 1e-14; });
}

Region Region::band(const Vec3& axis, double alpha_lo, double alpha_hi) {
  const Vec3 a = axis.normalized();
  const double clo = std::cos(alpha_lo), chi = std::cos(alpha_hi);
  return Region([a, clo, chi](const Vec3& n) {
    const double d = a.dot(n);
    return d < clo && d >= chi;
  });
}

Region Region::operator|(const Region& o) const {
  return Region([p = pred_, q = o.pred_](const Vec3& n) { return p(n) || q(n); });
}

Region Region::operator&(const Region& o) const {
  return Region([p = pred_, q = o.pred_](const Vec3& n) { return p(n) && q(n); });
}

Region Region::operator-(const Region& o) const {
  return Region([p = pred_, q = o.pred_](const Vec3& n) { return p(n) && !q(n); });
}

std::vector<std::size_t> Region::resolve(const CoherentFamily& f) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (pred_(f.node(i).n)) idx.push_back(i);
  return idx;
}

double cap_measure(std::size_t dim, double alpha) { return static_cast<double>(dim) * (1.0 - std::cos(alpha)) / 2.0; }

}  // namespace sqm
