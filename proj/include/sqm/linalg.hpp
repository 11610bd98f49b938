#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sqm {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kAlgebraicTol = 1e-12;

/// Dense operator on C^dim. Every projection, POVM element and unitary in
/// the library is carried by this type.
class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix entries);

  static Operator identity(std::size_t dim);
  static Operator zero(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }

  Operator adjoint() const { return Operator(m_.adjoint()); }
  cplx trace() const { return m_.trace(); }

  bool is_hermitian(double tol = kStructuralTol) const;
  bool is_projection(double tol = kStructuralTol) const;
  bool is_unitary(double tol = kStructuralTol) const;

  /// Hilbert–Schmidt (Frobenius) norm.
  double hs_norm() const { return m_.norm(); }
  /// Largest singular value.
  double op_norm() const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cplx s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }

 private:
  Matrix m_;
};

/// |v><v| for a unit vector v.
class RankOneProjection {
 public:
  /// Normalises nothing: throws unless |v| = 1 within 1e-12.
  explicit RankOneProjection(Vector v);

  const Vector& vector() const { return v_; }
  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  Operator to_operator() const;

 private:
  Vector v_;
};

/// Tr(F1 F2 ... Fn), multiplied left to right.
cplx trace_product(std::span<const Operator> factors);
cplx trace_product(std::initializer_list<Operator> factors);

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);
Operator kron(const Operator& a, const Operator& b);
double max_abs_diff(const Matrix& a, const Matrix& b);

struct Spectrum {
  RealVector eigenvalues;  // ascending
  Operator eigenvectors;   // columns, unitary
};

/// Eigendecomposition of a Hermitian operator. Within a cluster of equal
/// eigenvalues (|dl| <= tie_tol) the eigenvectors are phase-fixed and sorted
/// lexicographically, so the result does not depend on solver internals.
Spectrum hermitian_spectrum(const Operator& a, double herm_tol = kStructuralTol,
                            double tie_tol = 1e-9);

/// f(A) for Hermitian A through its spectrum.
template <class F>
Operator spectral_apply(const Spectrum& s, F&& f) {
  const Matrix& v = s.eigenvectors.matrix();
  Vector d(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(s.eigenvalues(i));
  return Operator(v * d.asDiagonal() * v.adjoint());
}

/// exp(-i t H) for Hermitian H.
Operator unitary_evolution(const Spectrum& h, double t);

/// First nonvanishing component made real positive.
Vector gauge_fix(Vector v, double zero_tol = 1e-14);

/// Normalised complex Gaussian vector (unitarily invariant distribution).
Vector random_unit_vector(std::size_t dim, std::uint64_t seed);
RankOneProjection random_rank_one(std::size_t dim, std::uint64_t seed);
/// Haar-distributed unitary by QR of a Ginibre matrix with phase correction.
Operator random_unitary(std::size_t dim, std::uint64_t seed);
/// GUE-like Hermitian (A + A*)/2 with Gaussian entries.
Operator random_hermitian(std::size_t dim, std::uint64_t seed);

}  // namespace sqm
