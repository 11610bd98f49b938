#include "sqm/ccr.hpp"

#include "sqm/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace sqm {

SymplecticSpace::SymplecticSpace(Eigen::MatrixXd sigma) : sigma_(std::move(sigma)) {
  if (sigma_.rows() != sigma_.cols() || sigma_.rows() == 0)
    throw ValidationError("SymplecticSpace: sigma must be a non-empty square matrix");
  if (!(sigma_ + sigma_.transpose()).isZero(0.0)) throw ValidationError("SymplecticSpace: sigma must be antisymmetric");
}

SymplecticSpace SymplecticSpace::standard(std::size_t modes) {
  if (modes == 0) throw ValidationError("SymplecticSpace::standard: need at least one mode");
  const auto n = static_cast<Eigen::Index>(2 * modes);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index m = 0; m < n; m += 2) {
    s(m, m + 1) = 1.0;
    s(m + 1, m) = -1.0;
  }
  return SymplecticSpace(std::move(s));
}

namespace {

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& a) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), a.cols());
}

void check_basis(const Eigen::MatrixXd& a, Eigen::Index n) {
  if (a.rows() != n || a.cols() == 0) throw ValidationError("subspace basis must have dim(V) rows and >= 1 column");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  if (lu.rank() != a.cols()) throw ValidationError("subspace basis is linearly dependent");
}

}  // namespace

double SymplecticSpace::restricted_det(const Eigen::MatrixXd& basis) const {
  check_basis(basis, sigma_.rows());
  const Eigen::MatrixXd q = orthonormal_columns(basis);
  return std::abs((q.transpose() * sigma_ * q).determinant());
}

bool SymplecticSpace::orthogonal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) const {
  check_basis(a, sigma_.rows());
  check_basis(b, sigma_.rows());
  return (orthonormal_columns(a).transpose() * sigma_ * orthonormal_columns(b)).cwiseAbs().maxCoeff() <= tol;
}

bool subspace_contains(const Eigen::MatrixXd& b, const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != b.rows()) throw ValidationError("subspace_contains: ambient dimensions differ");
  const Eigen::MatrixXd q = orthonormal_columns(b);
  const Eigen::MatrixXd qa = orthonormal_columns(a);
  return (qa - q * (q.transpose() * qa)).cwiseAbs().maxCoeff() <= tol;
}

WeylGridRep::WeylGridRep(double half_width, std::size_t points, double hbar)
    : l_(half_width), g_(points), hbar_(hbar) {
  if (!(half_width > 0) || points < 2 || points % 2 != 0 || !(hbar > 0))
    throw ValidationError("WeylGridRep: need L > 0, even G >= 2, hbar > 0");
  const auto g = static_cast<Eigen::Index>(points);
  dx_ = 2.0 * l_ / static_cast<double>(points);
  RealVector x(g);
  for (Eigen::Index i = 0; i < g; ++i) x(i) = -l_ + (static_cast<double>(i) + 0.5) * dx_;
  k_.resize(g);
  for (Eigen::Index j = 0; j < g; ++j)
    k_(j) = 2.0 * std::numbers::pi * static_cast<double>(j - g / 2) / (static_cast<double>(g) * dx_);
  fourier_.resize(g, g);
  const double norm = 1.0 / std::sqrt(static_cast<double>(g));
  for (Eigen::Index j = 0; j < g; ++j)
    for (Eigen::Index i = 0; i < g; ++i) fourier_(i, j) = std::polar(norm, k_(j) * x(i));
  q_ = Operator(Matrix(x.cast<cplx>().asDiagonal()));
  p_ = Operator(fourier_ * (hbar_ * k_).cast<cplx>().asDiagonal() * fourier_.adjoint());
  p_ = Operator(0.5 * (p_.matrix() + p_.matrix().adjoint()));
  cache_.push_back({RealVector::Unit(2, 0), Spectrum{x, Operator::identity(points)}});
  cache_.push_back({RealVector::Unit(2, 1), Spectrum{hbar_ * k_, Operator(fourier_)}});
}

void WeylGridRep::check_v(const RealVector& v) const {
  if (v.size() != 2 || !v.allFinite()) throw ValidationError("WeylGridRep: field vectors are finite (a, b) pairs");
}

Operator WeylGridRep::field(const RealVector& v) const {
  check_v(v);
  return Operator(v(0) * q_.matrix() + v(1) * p_.matrix());
}

const WeylGridRep::Direction& WeylGridRep::direction(const RealVector& v, double& scale) const {
  RealVector u = v / v.norm();
  scale = v.norm();
  if (u(0) < 0 || (u(0) == 0 && u(1) < 0)) {
    u = -u;
    scale = -scale;
  }
  for (const auto& d : cache_)
    if ((d.unit - u).norm() <= 1e-13) return d;
  const Operator f(u(0) * q_.matrix() + u(1) * p_.matrix());
  cache_.push_back({u, hermitian_spectrum(f, 1e-10)});
  return cache_.back();
}

Operator WeylGridRep::weyl(const RealVector& v) const {
  check_v(v);
  if (v.isZero(0.0)) return Operator::identity(g_);
  double scale = 0.0;
  const auto& d = direction(v, scale);
  return spectral_apply(d.spec, [scale](double l) { return std::exp(cplx(0.0, scale * l)); });
}

Window WeylGridRep::window(const RealVector& v) const {
  check_v(v);
  if (v.isZero(0.0)) return {0.0, 0.0, 0.0, 0.0};
  double scale = 0.0;
  const auto& d = direction(v, scale);
  double a = scale * d.spec.eigenvalues.minCoeff(), b = scale * d.spec.eigenvalues.maxCoeff();
  if (a > b) std::swap(a, b);
  const double c = 0.5 * (a + b), h = 0.3 * (b - a);
  return {c - h, c + h, a, b};
}

namespace {

// An endpoint may sit inside the reliable window or beyond the whole spectrum.
void check_window(const Window& w, const IntervalSet& s) {
  auto ok = [&w](double e) { return (e >= w.lo && e <= w.hi) || e < w.spec_lo || e > w.spec_hi; };
  for (const auto& iv : s.intervals())
    if (!ok(iv.lo) || !ok(iv.hi)) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "field_pvm: endpoint outside the reliable spectral window [" << w.lo << ", " << w.hi
          << "] (spectrum [" << w.spec_lo << ", " << w.spec_hi << "])";
      throw ValidationError(msg.str());
    }
}

}  // namespace

Operator WeylGridRep::field_pvm(const RealVector& v, const IntervalSet& s) const {
  check_v(v);
  if (v.isZero(0.0)) return s.contains(0.0) ? Operator::identity(g_) : Operator::zero(g_);
  check_window(window(v), s);
  double scale = 0.0;
  const auto& d = direction(v, scale);
  return spectral_apply(d.spec, [&s, scale](double l) { return cplx(s.contains(scale * l) ? 1.0 : 0.0, 0.0); });
}

double WeylGridRep::sigma(const RealVector& v, const RealVector& u) const {
  check_v(v);
  check_v(u);
  return hbar_ * (v(0) * u(1) - v(1) * u(0));
}

Matrix WeylGridRep::hermite_modes(std::size_t n) const {
  const auto g = static_cast<Eigen::Index>(g_);
  const auto nn = static_cast<Eigen::Index>(n);
  Matrix h = Matrix::Zero(g, nn);
  for (Eigen::Index i = 0; i < g; ++i) {
    const double xi = q_.matrix()(i, i).real() / std::sqrt(hbar_);
    double prev = 0.0, cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
    for (Eigen::Index m = 0; m < nn; ++m) {
      h(i, m) = cur;
      const double next = std::sqrt(2.0 / static_cast<double>(m + 1)) * xi * cur -
                          std::sqrt(static_cast<double>(m) / static_cast<double>(m + 1)) * prev;
      prev = cur;
      cur = next;
    }
  }
  for (Eigen::Index m = 0; m < nn; ++m) h.col(m).normalize();
  return h;
}

double weyl_relation_residual(const WeylGridRep& rep, const RealVector& v, const RealVector& u, std::size_t modes) {
  const Matrix h = rep.hermite_modes(modes);
  const Matrix lhs = rep.weyl(v).matrix() * (rep.weyl(u).matrix() * h);
  const Matrix rhs = std::exp(cplx(0.0, -0.5 * rep.sigma(v, u))) * (rep.weyl(v + u).matrix() * h);
  return (lhs - rhs).colwise().norm().maxCoeff();
}

double ccr_residual(const WeylGridRep& rep, std::size_t modes) {
  const Matrix h = rep.hermite_modes(modes);
  const Matrix& q = rep.q().matrix();
  const Matrix& p = rep.p().matrix();
  const Matrix r = q * (p * h) - p * (q * h) - cplx(0.0, rep.hbar()) * h;
  return r.colwise().norm().maxCoeff();
}

namespace {

Matrix product(const WeylGridRep& rep, std::span<const FieldFactor> f) {
  Matrix m = Matrix::Identity(static_cast<Eigen::Index>(rep.points()), static_cast<Eigen::Index>(rep.points()));
  for (const auto& x : f) m = m * rep.field_pvm(x.v, x.s).matrix();
  return m;
}

}  // namespace

double trace_aa(const WeylGridRep& rep, std::span<const FieldFactor> a) { return product(rep, a).squaredNorm(); }

ZProb prob_z(const WeylGridRep& rep, std::span<const FieldFactor> a, std::span<const FieldFactor> b) {
  const Matrix ma = product(rep, a);
  const double den = ma.squaredNorm();
  if (!(den > 1e-12)) throw ConditioningOnNullError("prob_z: Tr A*A vanishes");
  if (b.empty()) return {1.0, den, den};
  const double num = (ma * product(rep, b)).squaredNorm();
  return {num / den, num, den};
}

GrowthReport trace_growth(double half_width, std::span<const std::size_t> points, std::span<const FieldFactor> a,
                          double hbar) {
  if (points.size() < 2) throw ValidationError("trace_growth: need at least two grid sizes");
  GrowthReport r;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t g : points) {
    const WeylGridRep rep(half_width, g, hbar);
    const double t = trace_aa(rep, a);
    if (!(t > 0)) throw ConditioningOnNullError("trace_growth: vanishing trace");
    r.points.push_back(g);
    r.traces.push_back(t);
    const double lx = std::log(static_cast<double>(g)), ly = std::log(t);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(points.size());
  r.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return r;
}

MultiModeRep::MultiModeRep(std::size_t modes, double half_width, std::size_t points, double hbar)
    : modes_(modes), dim_(1), mode_(half_width, points, hbar) {
  if (modes == 0) throw ValidationError("MultiModeRep: need at least one mode");
  if (points > 128) throw ValidationError("MultiModeRep: at most 128 points per mode");
  for (std::size_t m = 0; m < modes; ++m) dim_ *= points;
  if (dim_ > 4096) throw ValidationError("MultiModeRep: tensor dimension exceeds the dense budget of 4096");
}

namespace {

RealVector mode_slice(const RealVector& v, std::size_t m) { return v.segment(static_cast<Eigen::Index>(2 * m), 2); }

}  // namespace

Operator MultiModeRep::weyl(const RealVector& v) const {
  if (static_cast<std::size_t>(v.size()) != 2 * modes_) throw ValidationError("MultiModeRep: vector length must be 2 x modes");
  Operator w = Operator::identity(1);
  for (std::size_t m = 0; m < modes_; ++m) w = kron(w, mode_.weyl(mode_slice(v, m)));
  return w;
}

Operator MultiModeRep::field_pvm(const RealVector& v, const IntervalSet& s) const {
  if (static_cast<std::size_t>(v.size()) != 2 * modes_) throw ValidationError("MultiModeRep: vector length must be 2 x modes");
  const auto g = static_cast<Eigen::Index>(mode_.points());
  Matrix basis = Matrix::Identity(1, 1);
  RealVector lam = RealVector::Zero(1);
  Window total{0, 0, 0, 0};
  for (std::size_t m = 0; m < modes_; ++m) {
    const RealVector vm = mode_slice(v, m);
    Spectrum sm{RealVector::Zero(g), Operator::identity(mode_.points())};
    if (!vm.isZero(0.0)) {
      sm = hermitian_spectrum(mode_.field(vm), 1e-10);
      const Window w = mode_.window(vm);
      total.spec_lo += w.spec_lo;
      total.spec_hi += w.spec_hi;
    }
    Matrix nb(basis.rows() * g, basis.cols() * g);
    nb = kron(Operator(basis), sm.eigenvectors).matrix();
    RealVector nl(lam.size() * g);
    for (Eigen::Index a = 0; a < lam.size(); ++a)
      for (Eigen::Index b = 0; b < g; ++b) nl(a * g + b) = lam(a) + sm.eigenvalues(b);
    basis = std::move(nb);
    lam = std::move(nl);
  }
  const double c = 0.5 * (total.spec_lo + total.spec_hi), h = 0.3 * (total.spec_hi - total.spec_lo);
  total.lo = c - h;
  total.hi = c + h;
  if (!v.isZero(0.0)) check_window(total, s);
  RealVector chi(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) chi(i) = s.contains(lam(i)) ? 1.0 : 0.0;
  return Operator(basis * chi.cast<cplx>().asDiagonal() * basis.adjoint());
}

}  // namespace sqm
