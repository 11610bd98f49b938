#pragma once

#include "sqm/linalg.hpp"

#include <random>
#include <vector>

namespace sqm {

/// Matrix with exactly one nonzero entry per row: row r holds val[r] at column col[r].
struct MonomialMatrix {
  std::vector<int> col;
  std::vector<cplx> val;

  static MonomialMatrix identity(std::size_t d);
  /// Throws NumericalError unless every row has exactly one nonzero entry.
  static MonomialMatrix from_dense(const Matrix& m, double tol = 1e-14);
  std::size_t dim() const { return col.size(); }
  MonomialMatrix operator*(const MonomialMatrix& o) const;
  MonomialMatrix adjoint() const;
  Matrix dense() const;
};

/// Hermitian generators phi_1..phi_k with {phi_i, phi_j} = 2 delta_ij.
class CliffordRep {
 public:
  /// Jordan–Wigner on ceil(k/2) qubits; faithful for every k.
  static CliffordRep faithful(std::size_t k);
  /// Jordan–Wigner on floor(k/2) qubits; for odd k the last generator is the chirality element.
  static CliffordRep irreducible(std::size_t k);

  std::size_t k() const { return phi_.size(); }
  std::size_t dim() const { return dim_; }
  const Operator& generator(std::size_t i) const { return phi_.at(i); }
  const MonomialMatrix& monomial(std::size_t i) const { return mono_.at(i); }
  /// phi(v) = sum v_i phi_i.
  Operator phi(const RealVector& v) const;
  /// max_{i,j} |{phi_i, phi_j} - 2 delta_ij I|.
  double anticommutation_residual() const;
  /// The Z2-gauge image phi -> -phi.
  CliffordRep flipped() const;

 private:
  CliffordRep(std::size_t dim, std::vector<MonomialMatrix> mono);
  std::size_t dim_;
  std::vector<MonomialMatrix> mono_;
  std::vector<Operator> phi_;
};

CliffordRep clifford_rep(std::size_t k);

struct OrthoPair {
  RealVector u;
  RealVector v;

  OrthoPair(RealVector u, RealVector v);
  std::size_t k() const { return static_cast<std::size_t>(u.size()); }
  OrthoPair swapped() const { return OrthoPair(v, u); }
  /// Zero-padded copy in R^k.
  OrthoPair embedded(std::size_t k) const;
};

/// Gaussian sampling followed by Gram–Schmidt.
OrthoPair random_ortho_pair(std::size_t k, std::mt19937_64& rng);

/// X = i phi(u) phi(v).
Operator x_uv(const CliffordRep& rep, const OrthoPair& p);
/// (I + sign X) / 2.
Operator p_uv(const CliffordRep& rep, const OrthoPair& p, int sign);

struct LawCheck {
  double trace_value;
  double closed_form;
  double residual;
};

/// Tr(P+ P'+) / Tr(P+) against (1 + (u|u')(v|v') - (u|v')(v|u')) / 2.
LawCheck car_prob(const CliffordRep& rep, const OrthoPair& p, const OrthoPair& q);
/// Tr X X' against dim * ((u|u')(v|v') - (u|v')(v|u')).
LawCheck trace_xx(const CliffordRep& rep, const OrthoPair& p, const OrthoPair& q);

struct BlockInfo {
  std::size_t size;          // n with block Mat(n)
  std::size_t multiplicity;  // copies inside the representation
  std::size_t rank;          // rank of the central idempotent
  std::size_t center_dim;    // 1 for a simple block
};

struct StructureReport {
  std::size_t k;
  bool even_part;
  std::size_t rep_dim;
  std::size_t algebra_dim;
  std::size_t center_dim;
  std::vector<BlockInfo> blocks;
  std::size_t expected_dim;
  std::vector<std::size_t> expected_blocks;
  bool matches;
};

/// Dimension, center and simple blocks of the algebra generated by phi_1..phi_k
/// (or its even part) in the faithful representation.
StructureReport structure_check(std::size_t k, bool even_part);
/// Block sizes predicted by the classification of Clifford algebras.
std::vector<std::size_t> expected_blocks(std::size_t k, bool even_part);

}  // namespace sqm
