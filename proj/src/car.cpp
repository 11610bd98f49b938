#include "sqm/car.hpp"

#include "sqm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <map>

namespace sqm {

MonomialMatrix MonomialMatrix::identity(std::size_t d) {
  MonomialMatrix m;
  m.col.resize(d);
  m.val.assign(d, cplx(1.0, 0.0));
  for (std::size_t r = 0; r < d; ++r) m.col[r] = static_cast<int>(r);
  return m;
}

MonomialMatrix MonomialMatrix::from_dense(const Matrix& a, double tol) {
  MonomialMatrix m;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    int c = -1;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(a(r, j)) > tol) {
        if (c >= 0) throw NumericalError("MonomialMatrix: row with several nonzero entries");
        c = static_cast<int>(j);
      }
    }
    if (c < 0) throw NumericalError("MonomialMatrix: zero row");
    m.col.push_back(c);
    m.val.push_back(a(r, c));
  }
  return m;
}

MonomialMatrix MonomialMatrix::operator*(const MonomialMatrix& o) const {
  MonomialMatrix m;
  m.col.resize(col.size());
  m.val.resize(col.size());
  for (std::size_t r = 0; r < col.size(); ++r) {
    const auto c = static_cast<std::size_t>(col[r]);
    m.col[r] = o.col[c];
    m.val[r] = val[r] * o.val[c];
  }
  return m;
}

MonomialMatrix MonomialMatrix::adjoint() const {
  MonomialMatrix m;
  m.col.assign(col.size(), -1);
  m.val.resize(col.size());
  for (std::size_t r = 0; r < col.size(); ++r) {
    const auto c = static_cast<std::size_t>(col[r]);
    if (m.col[c] >= 0) throw NumericalError("MonomialMatrix::adjoint: not invertible");
    m.col[c] = static_cast<int>(r);
    m.val[c] = std::conj(val[r]);
  }
  return m;
}

Matrix MonomialMatrix::dense() const {
  const auto d = static_cast<Eigen::Index>(col.size());
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r) m(r, col[static_cast<std::size_t>(r)]) = val[static_cast<std::size_t>(r)];
  return m;
}

namespace {

constexpr std::size_t kMaxGenerators = 14;

Operator pauli(char c) {
  Matrix m(2, 2);
  switch (c) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m = Matrix::Identity(2, 2);
  }
  return Operator(std::move(m));
}

// Jordan–Wigner generators on q qubits, 2q of them.
std::vector<MonomialMatrix> jordan_wigner(std::size_t q) {
  std::vector<MonomialMatrix> out;
  for (std::size_t j = 0; j < q; ++j)
    for (char c : {'x', 'y'}) {
      Operator m = Operator::identity(1);
      for (std::size_t s = 0; s < q; ++s) m = kron(m, s < j ? pauli('z') : s == j ? pauli(c) : pauli('i'));
      out.push_back(MonomialMatrix::from_dense(m.matrix()));
    }
  return out;
}

void check_k(std::size_t k) {
  if (k < 1 || k > kMaxGenerators) throw ValidationError("clifford_rep: k must lie in [1, 14]");
}

}  // namespace

CliffordRep::CliffordRep(std::size_t dim, std::vector<MonomialMatrix> mono) : dim_(dim), mono_(std::move(mono)) {
  for (const auto& m : mono_) phi_.emplace_back(m.dense());
}

CliffordRep CliffordRep::faithful(std::size_t k) {
  check_k(k);
  const std::size_t q = (k + 1) / 2;
  auto gens = jordan_wigner(q);
  gens.resize(k);
  return CliffordRep(std::size_t{1} << q, std::move(gens));
}

CliffordRep CliffordRep::irreducible(std::size_t k) {
  check_k(k);
  const std::size_t q = k / 2;
  auto gens = jordan_wigner(q);
  if (k % 2 == 1) {
    MonomialMatrix g = MonomialMatrix::identity(std::size_t{1} << q);
    for (const auto& p : gens) g = g * p;
    const cplx phase = std::pow(cplx(0.0, 1.0), static_cast<double>(q));
    for (auto& v : g.val) v *= phase;
    gens.push_back(std::move(g));
  }
  return CliffordRep(std::size_t{1} << q, std::move(gens));
}

CliffordRep clifford_rep(std::size_t k) { return CliffordRep::faithful(k); }

Operator CliffordRep::phi(const RealVector& v) const {
  if (static_cast<std::size_t>(v.size()) != k()) throw ValidationError("CliffordRep::phi: vector length must equal k");
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < k(); ++i) m += v(static_cast<Eigen::Index>(i)) * phi_[i].matrix();
  return Operator(std::move(m));
}

double CliffordRep::anticommutation_residual() const {
  double r = 0.0;
  const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < k(); ++i)
    for (std::size_t j = i; j < k(); ++j) {
      const Matrix ac = anticommutator(phi_[i], phi_[j]).matrix() - (i == j ? 2.0 : 0.0) * id;
      r = std::max(r, ac.cwiseAbs().maxCoeff());
    }
  return r;
}

CliffordRep CliffordRep::flipped() const {
  auto gens = mono_;
  for (auto& g : gens)
    for (auto& v : g.val) v = -v;
  return CliffordRep(dim_, std::move(gens));
}

OrthoPair::OrthoPair(RealVector u_, RealVector v_) : u(std::move(u_)), v(std::move(v_)) {
  if (u.size() != v.size() || u.size() == 0) throw ValidationError("OrthoPair: vectors must share a positive length");
  if (std::abs(u.norm() - 1.0) > 1e-12 || std::abs(v.norm() - 1.0) > 1e-12)
    throw ValidationError("OrthoPair: vectors must be unit");
  if (std::abs(u.dot(v)) > 1e-12) throw ValidationError("OrthoPair: vectors must be orthogonal");
}

OrthoPair OrthoPair::embedded(std::size_t kk) const {
  if (kk < k()) throw ValidationError("OrthoPair::embedded: target dimension too small");
  RealVector a = RealVector::Zero(static_cast<Eigen::Index>(kk)), b = a;
  a.head(u.size()) = u;
  b.head(v.size()) = v;
  return OrthoPair(a, b);
}

OrthoPair random_ortho_pair(std::size_t k, std::mt19937_64& rng) {
  if (k < 2) throw ValidationError("random_ortho_pair: need k >= 2");
  std::normal_distribution<double> g;
  const auto n = static_cast<Eigen::Index>(k);
  RealVector a(n), b(n);
  for (Eigen::Index i = 0; i < n; ++i) a(i) = g(rng);
  for (Eigen::Index i = 0; i < n; ++i) b(i) = g(rng);
  a.normalize();
  b -= a.dot(b) * a;
  b -= a.dot(b) * a;
  b.normalize();
  return OrthoPair(a, b);
}

namespace {

void check_pair(const CliffordRep& rep, const OrthoPair& p) {
  if (p.k() != rep.k()) throw ValidationError("car: pair dimension must equal the generator count");
}

}  // namespace

Operator x_uv(const CliffordRep& rep, const OrthoPair& p) {
  check_pair(rep, p);
  return Operator(cplx(0.0, 1.0) * (rep.phi(p.u).matrix() * rep.phi(p.v).matrix()));
}

Operator p_uv(const CliffordRep& rep, const OrthoPair& p, int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("p_uv: sign must be +1 or -1");
  const Operator x = x_uv(rep, p);
  return Operator(0.5 * (Matrix::Identity(x.matrix().rows(), x.matrix().cols()) + static_cast<double>(sign) * x.matrix()));
}

namespace {

double wedge(const OrthoPair& p, const OrthoPair& q) { return p.u.dot(q.u) * p.v.dot(q.v) - p.u.dot(q.v) * p.v.dot(q.u); }

}  // namespace

LawCheck car_prob(const CliffordRep& rep, const OrthoPair& p, const OrthoPair& q) {
  check_pair(rep, q);
  const Operator a = p_uv(rep, p, 1), b = p_uv(rep, q, 1);
  const double tr = (a.matrix() * b.matrix()).trace().real() / a.trace().real();
  const double cf = 0.5 * (1.0 + wedge(p, q));
  return {tr, cf, std::abs(tr - cf)};
}

LawCheck trace_xx(const CliffordRep& rep, const OrthoPair& p, const OrthoPair& q) {
  check_pair(rep, q);
  const double tr = trace_product({x_uv(rep, p), x_uv(rep, q)}).real();
  const double cf = static_cast<double>(rep.dim()) * wedge(p, q);
  return {tr, cf, std::abs(tr - cf)};
}

std::vector<std::size_t> expected_blocks(std::size_t k, bool even_part) {
  const std::size_t m = even_part ? k - 1 : k;
  if (m == 0) return {1};
  if (m % 2 == 0) return {std::size_t{1} << (m / 2)};
  return {std::size_t{1} << ((m - 1) / 2), std::size_t{1} << ((m - 1) / 2)};
}

namespace {

struct BasisElement {
  MonomialMatrix mono;
  std::vector<cplx> orth;  // orthonormalized values on the same sparsity pattern
};

// Returns +1 or -1 with g b g* = sign b; throws if neither.
int conjugation_sign(const MonomialMatrix& g, const MonomialMatrix& b) {
  const MonomialMatrix c = g * b * g.adjoint();
  if (c.col != b.col) throw NumericalError("structure_check: monomials neither commute nor anticommute");
  double plus = 0.0, minus = 0.0;
  for (std::size_t r = 0; r < c.val.size(); ++r) {
    plus = std::max(plus, std::abs(c.val[r] - b.val[r]));
    minus = std::max(minus, std::abs(c.val[r] + b.val[r]));
  }
  if (plus <= 1e-12) return 1;
  if (minus <= 1e-12) return -1;
  throw NumericalError("structure_check: monomials neither commute nor anticommute");
}

std::size_t round_integer(double x, const char* what) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-8 || r < 0) throw NumericalError(std::string("structure_check: non-integral ") + what);
  return static_cast<std::size_t>(r);
}

}  // namespace

StructureReport structure_check(std::size_t k, bool even_part) {
  const CliffordRep rep = CliffordRep::faithful(k);
  const std::size_t d = rep.dim();

  // Monomials phi_S grouped by sparsity pattern; different patterns are HS-orthogonal.
  std::map<std::vector<int>, std::vector<BasisElement>> blocks_by_pattern;
  for (std::uint32_t s = 0; s < (1u << k); ++s) {
    if (even_part && std::popcount(s) % 2 != 0) continue;
    MonomialMatrix m = MonomialMatrix::identity(d);
    for (std::size_t i = 0; i < k; ++i)
      if (s & (1u << i)) m = m * rep.monomial(i);
    auto& group = blocks_by_pattern[m.col];
    std::vector<cplx> w = m.val;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : group) {
        cplx ip = 0.0;
        for (std::size_t r = 0; r < d; ++r) ip += std::conj(e.orth[r]) * w[r];
        for (std::size_t r = 0; r < d; ++r) w[r] -= ip * e.orth[r];
      }
    double nrm = 0.0;
    for (const auto& x : w) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm <= 1e-10 * std::sqrt(static_cast<double>(d))) continue;
    for (auto& x : w) x /= nrm;
    group.push_back({std::move(m), std::move(w)});
  }
  std::vector<const BasisElement*> basis;
  for (const auto& [pattern, group] : blocks_by_pattern)
    for (const auto& e : group) basis.push_back(&e);

  // Test elements generating the algebra.
  std::vector<MonomialMatrix> gens;
  if (!even_part)
    for (std::size_t i = 0; i < k; ++i) gens.push_back(rep.monomial(i));
  else
    for (std::size_t i = 1; i < k; ++i) gens.push_back(rep.monomial(0) * rep.monomial(i));

  std::vector<Matrix> central;
  for (const auto* e : basis) {
    bool is_central = true;
    for (const auto& g : gens)
      if (conjugation_sign(g, e->mono) != 1) {
        is_central = false;
        break;
      }
    if (is_central) {
      Matrix c = e->mono.dense();
      // A unitary monomial squares to a phase times I; rescaling to square I makes it Hermitian.
      const cplx s = (c * c)(0, 0);
      c *= std::sqrt(std::conj(s));
      central.push_back(std::move(c));
    }
  }

  StructureReport rep_out{};
  rep_out.k = k;
  rep_out.even_part = even_part;
  rep_out.rep_dim = d;
  rep_out.algebra_dim = basis.size();
  rep_out.center_dim = central.size();

  // Minimal central idempotents from a generic central element.
  Matrix z = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < central.size(); ++j) {
    const double r = std::fmod(0.5 + 0.6180339887498949 * static_cast<double>(j + 1), 1.0) + 0.25;
    z += r * central[j];
  }
  const Spectrum sp = hermitian_spectrum(Operator(z), 1e-10);
  Eigen::Index start = 0;
  const Eigen::Index n = sp.eigenvalues.size();
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && sp.eigenvalues(end) - sp.eigenvalues(start) < 1e-8) ++end;
    const Matrix v = sp.eigenvectors.matrix().middleCols(start, end - start);
    const Matrix q = v * v.adjoint();
    // dim(Q A) is the trace of the HS-orthogonal projection a -> Q a restricted to A.
    double dq = 0.0;
    for (const auto* e : basis)
      for (std::size_t r = 0; r < d; ++r) dq += std::norm(e->orth[r]) * q(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)).real();
    const std::size_t dim_qa = round_integer(dq, "block dimension");
    const auto nb = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dim_qa))));
    if (nb * nb != dim_qa) throw NumericalError("structure_check: block dimension is not a perfect square");
    const auto rank = static_cast<std::size_t>(end - start);
    if (rank % nb != 0) throw NumericalError("structure_check: block does not divide the idempotent rank");
    // Center of the block: rank of Q Z(A).
    Eigen::Index cc = static_cast<Eigen::Index>(central.size());
    Matrix gram(cc, cc);
    std::vector<Matrix> qc;
    for (const auto& c : central) qc.push_back(q * c);
    for (Eigen::Index a = 0; a < cc; ++a)
      for (Eigen::Index b = 0; b < cc; ++b)
        gram(a, b) = (qc[static_cast<std::size_t>(a)].adjoint() * qc[static_cast<std::size_t>(b)]).trace();
    const Spectrum gs = hermitian_spectrum(Operator(gram), 1e-8);
    std::size_t cdim = 0;
    for (Eigen::Index a = 0; a < cc; ++a)
      if (gs.eigenvalues(a) > 1e-8 * static_cast<double>(d)) ++cdim;
    rep_out.blocks.push_back({nb, rank / nb, rank, cdim});
    start = end;
  }

  rep_out.expected_blocks = expected_blocks(k, even_part);
  rep_out.expected_dim = std::size_t{1} << (even_part ? k - 1 : k);
  std::vector<std::size_t> got;
  bool simple = true;
  for (const auto& b : rep_out.blocks) {
    got.push_back(b.size);
    simple = simple && b.center_dim == 1;
  }
  std::sort(got.begin(), got.end());
  auto want = rep_out.expected_blocks;
  std::sort(want.begin(), want.end());
  rep_out.matches = simple && got == want && rep_out.algebra_dim == rep_out.expected_dim &&
                    rep_out.center_dim == want.size();
  return rep_out;
}

}  // namespace sqm
