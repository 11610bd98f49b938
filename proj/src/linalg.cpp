#include "sqm/linalg.hpp"

#include "sqm/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace sqm {

namespace {

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim())
    throw ValidationError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()) + ")");
}

}  // namespace

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw ValidationError("Operator: matrix is not square");
  if (m_.rows() == 0) throw ValidationError("Operator: dimension must be positive");
}

Operator Operator::identity(std::size_t dim) {
  return Operator(Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

Operator Operator::zero(std::size_t dim) {
  return Operator(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

bool Operator::is_hermitian(double tol) const { return max_abs_diff(m_, m_.adjoint()) <= tol; }

bool Operator::is_projection(double tol) const {
  return is_hermitian(tol) && max_abs_diff(m_ * m_, m_) <= tol;
}

bool Operator::is_unitary(double tol) const {
  return max_abs_diff(m_.adjoint() * m_, Matrix::Identity(m_.rows(), m_.cols())) <= tol;
}

double Operator::op_norm() const {
  Eigen::JacobiSVD<Matrix> svd(m_);
  return svd.singularValues()(0);
}

Operator& Operator::operator+=(const Operator& o) {
  require_same_dim(*this, o, "operator+");
  m_ += o.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  require_same_dim(*this, o, "operator-");
  m_ -= o.m_;
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator*");
  return Operator(a.m_ * b.m_);
}

RankOneProjection::RankOneProjection(Vector v) : v_(std::move(v)) {
  if (v_.size() == 0) throw ValidationError("RankOneProjection: empty vector");
  if (std::abs(v_.norm() - 1.0) > 1e-12) throw ValidationError("RankOneProjection: vector is not unit");
}

Operator RankOneProjection::to_operator() const { return Operator(v_ * v_.adjoint()); }

cplx trace_product(std::span<const Operator> factors) {
  if (factors.empty()) throw ValidationError("trace_product: empty factor list");
  const std::size_t d = factors.front().dim();
  for (const auto& f : factors)
    if (f.dim() != d) throw ValidationError("trace_product: dimension mismatch");
  if (factors.size() == 1) return factors.front().trace();
  // Tr(M F_n) needs only the diagonal of the product.
  Matrix acc = factors[0].matrix();
  for (std::size_t i = 1; i + 1 < factors.size(); ++i) acc = acc * factors[i].matrix();
  const Matrix& last = factors.back().matrix();
  return (acc.transpose().cwiseProduct(last)).sum();
}

cplx trace_product(std::initializer_list<Operator> factors) {
  return trace_product(std::span<const Operator>(factors.begin(), factors.size()));
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }
Operator anticommutator(const Operator& a, const Operator& b) { return a * b + b * a; }

Operator kron(const Operator& a, const Operator& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return Operator(std::move(out));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Vector gauge_fix(Vector v, double zero_tol) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double r = std::abs(v(i));
    if (r > zero_tol) {
      v *= std::conj(v(i)) / r;
      v(i) = cplx(r, 0.0);
      break;
    }
  }
  return v;
}

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ar = a(i).real(), br = b(i).real();
    if (std::abs(ar - br) > 1e-12) return ar < br;
    const double ai = a(i).imag(), bi = b(i).imag();
    if (std::abs(ai - bi) > 1e-12) return ai < bi;
  }
  return false;
}

}  // namespace

Spectrum hermitian_spectrum(const Operator& a, double herm_tol, double tie_tol) {
  if (!a.is_hermitian(herm_tol)) throw ValidationError("hermitian_spectrum: operator is not Hermitian");
  const Matrix h = 0.5 * (a.matrix() + a.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_spectrum: eigensolver failed");
  RealVector lam = es.eigenvalues();
  Matrix vec = es.eigenvectors();
  const Eigen::Index n = lam.size();
  // Inside clusters of equal eigenvalues the basis is arbitrary; fix phase and order.
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && lam(end) - lam(end - 1) <= tie_tol) ++end;
    if (end - start > 1) {
      std::vector<Vector> cols;
      for (Eigen::Index c = start; c < end; ++c) cols.push_back(gauge_fix(vec.col(c)));
      std::sort(cols.begin(), cols.end(), lex_less);
      for (Eigen::Index c = start; c < end; ++c) vec.col(c) = cols[static_cast<std::size_t>(c - start)];
    } else {
      vec.col(start) = gauge_fix(vec.col(start));
    }
    start = end;
  }
  return Spectrum{std::move(lam), Operator(std::move(vec))};
}

Operator unitary_evolution(const Spectrum& h, double t) {
  return spectral_apply(h, [t](double l) { return std::exp(cplx(0.0, -t * l)); });
}

namespace {

Matrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = n01(rng);
      const double im = n01(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

}  // namespace

Vector random_unit_vector(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw ValidationError("random_unit_vector: dim must be positive");
  std::mt19937_64 rng(seed);
  Vector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

RankOneProjection random_rank_one(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw ValidationError("random_rank_one: dim must be positive");
  Vector v = random_unit_vector(dim, seed);
  if (dim == 1) v(0) = 1.0;
  return RankOneProjection(std::move(v));
}

Operator random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw ValidationError("random_unitary: dim must be positive");
  std::mt19937_64 rng(seed);
  Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const cplx d = r(i, i);
    const double ad = std::abs(d);
    if (ad > 0) q.col(i) *= d / ad;
  }
  return Operator(std::move(q));
}

Operator random_hermitian(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw ValidationError("random_hermitian: dim must be positive");
  std::mt19937_64 rng(seed);
  Matrix g = ginibre(dim, dim, rng);
  return Operator(0.5 * (g + g.adjoint()));
}

}  // namespace sqm
