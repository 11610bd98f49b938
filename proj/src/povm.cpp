#include "sqm/povm.hpp"

#include "sqm/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sqm {

Operator povm_element(const CoherentFamily& f, const Region& s) {
  const auto idx = s.resolve(f);
  if (idx.empty()) throw ValidationError("povm_element: region resolves to no nodes");
  return f.element(idx);
}

PovmProb prior_prob(std::span<const Operator> ops, std::size_t k) {
  if (ops.empty() || k == 0 || k > ops.size()) throw ValidationError("prior_prob: need 1 <= k <= n");
  const std::size_t d = ops.front().dim();
  Matrix a = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < k; ++i) {
    if (ops[i].dim() != d) throw ValidationError("prior_prob: dimension mismatch");
    a = a * ops[i].matrix();
  }
  Matrix ab = a;
  for (std::size_t i = k; i < ops.size(); ++i) {
    if (ops[i].dim() != d) throw ValidationError("prior_prob: dimension mismatch");
    ab = ab * ops[i].matrix();
  }
  const double den = a.squaredNorm();
  if (!(den > 1e-300)) throw ConditioningOnNullError("prior_prob: conditioning operator vanishes");
  if (k == ops.size()) return {1.0, den, den};
  const double num = ab.squaredNorm();
  return {num / den, num, den};
}

PovmProb prior_prob_povm(const CoherentFamily& f, std::span<const Region> regions, std::size_t k) {
  std::vector<Operator> ops;
  ops.reserve(regions.size());
  for (const auto& r : regions) {
    const auto idx = r.resolve(f);
    ops.push_back(f.element(idx));
  }
  return prior_prob(ops, k);
}

namespace {

Matrix psd_sqrt(const Operator& m) {
  const Spectrum s = hermitian_spectrum(m, 1e-10);
  return spectral_apply(s, [](double l) { return cplx(std::sqrt(std::max(l, 0.0)), 0.0); }).matrix();
}

void check_povm(std::span<const Operator> elements) {
  if (elements.empty()) throw ValidationError("naimark_dilation: empty POVM");
  const std::size_t d = elements.front().dim();
  Matrix total = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& m : elements) {
    if (m.dim() != d) throw ValidationError("naimark_dilation: dimension mismatch");
    if (!m.is_hermitian(1e-10)) throw ValidationError("naimark_dilation: element not Hermitian");
    if (hermitian_spectrum(m, 1e-10).eigenvalues.minCoeff() < -1e-10)
      throw ValidationError("naimark_dilation: element not positive");
    total += m.matrix();
  }
  total -= Matrix::Identity(total.rows(), total.cols());
  if (total.cwiseAbs().maxCoeff() > 1e-10) throw ValidationError("naimark_dilation: elements do not sum to identity");
}

}  // namespace

NaimarkDilation naimark_dilation(std::span<const Operator> elements) {
  check_povm(elements);
  const auto d = static_cast<Eigen::Index>(elements.front().dim());
  const auto r = static_cast<Eigen::Index>(elements.size());

  const bool is_pvm = std::all_of(elements.begin(), elements.end(),
                                  [](const Operator& m) { return m.is_projection(1e-10); });
  if (is_pvm) {
    return {Matrix::Identity(d, d), std::vector<Operator>(elements.begin(), elements.end()), 0.0};
  }

  Matrix v = Matrix::Zero(d * r, d);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Matrix s = psd_sqrt(elements[static_cast<std::size_t>(i)]);
    for (Eigen::Index a = 0; a < d; ++a) v.row(a * r + i) = s.row(a);
  }
  std::vector<Operator> proj;
  double resid = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    Matrix e = Matrix::Zero(d * r, d * r);
    for (Eigen::Index a = 0; a < d; ++a) e(a * r + i, a * r + i) = 1.0;
    const Matrix comp = v.adjoint() * e * v;
    resid = std::max(resid, (comp - elements[static_cast<std::size_t>(i)].matrix()).cwiseAbs().maxCoeff());
    proj.emplace_back(std::move(e));
  }
  return {std::move(v), std::move(proj), resid};
}

double sorkin_residual(std::span<const Operator> a, const Operator& rho) {
  const std::size_t kk = a.size();
  if (kk < 2) throw ValidationError("sorkin_residual: need at least two operators");
  const std::size_t d = rho.dim();
  if (!rho.is_hermitian(1e-10) || std::abs(rho.trace().real() - 1.0) > 1e-10 ||
      hermitian_spectrum(rho, 1e-10).eigenvalues.minCoeff() < -1e-10)
    throw ValidationError("sorkin_residual: rho must be a density operator");
  auto check_norm = [](const Operator& x) {
    if (x.op_norm() > 1.0 + 1e-12) throw ValidationError("sorkin_residual: norm hypothesis violated");
  };
  auto p = [&rho](const Operator& x) { return (x.matrix() * rho.matrix() * x.matrix().adjoint()).trace().real(); };

  Operator total = Operator::zero(d);
  double singles = 0.0;
  for (const auto& x : a) {
    if (x.dim() != d) throw ValidationError("sorkin_residual: dimension mismatch");
    check_norm(x);
    total = total + x;
    singles += p(x);
  }
  check_norm(total);
  double pairs = 0.0;
  for (std::size_t i = 0; i < kk; ++i)
    for (std::size_t j = i + 1; j < kk; ++j) {
      const Operator s = a[i] + a[j];
      check_norm(s);
      pairs += p(s);
    }
  return std::abs(p(total) - pairs + static_cast<double>(kk - 2) * singles);
}

double sorkin_povm_residual(const CoherentFamily& f, const Region& s0, std::span<const Region> parts) {
  const std::size_t kk = parts.size();
  if (kk < 2) throw ValidationError("sorkin_povm_residual: need at least two regions");
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& r : parts) sets.push_back(r.resolve(f));
  for (std::size_t i = 0; i < kk; ++i)
    for (std::size_t j = i + 1; j < kk; ++j)
      for (std::size_t a : sets[i])
        if (std::find(sets[j].begin(), sets[j].end(), a) != sets[j].end())
          throw ValidationError("sorkin_povm_residual: regions share nodes");
  auto p0 = [&](const Region& x) {
    const std::vector<Region> regs{s0, x};
    return prior_prob_povm(f, regs, 1).probability;
  };
  Region total = parts[0];
  double singles = p0(parts[0]);
  for (std::size_t i = 1; i < kk; ++i) {
    total = total | parts[i];
    singles += p0(parts[i]);
  }
  double pairs = 0.0;
  for (std::size_t i = 0; i < kk; ++i)
    for (std::size_t j = i + 1; j < kk; ++j) pairs += p0(parts[i] | parts[j]);
  return std::abs(p0(total) - pairs + static_cast<double>(kk - 2) * singles);
}

Operator path_product(std::span<const Vector> pts) {
  if (pts.empty()) throw ValidationError("path_product: empty chain");
  std::vector<Operator> ps;
  ps.reserve(pts.size());
  for (const auto& v : pts) ps.push_back(RankOneProjection(v).to_operator());
  Matrix m = ps.front().matrix();
  for (std::size_t i = 1; i < ps.size(); ++i) m = m * ps[i].matrix();
  return Operator(std::move(m));
}

cplx overlap_chain(std::span<const Vector> pts) {
  if (pts.empty()) throw ValidationError("overlap_chain: empty chain");
  cplx f = 1.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) f *= pts[i].dot(pts[i + 1]);
  return f;
}

double sorkin_rho1(std::span<const Vector> x) {
  const Matrix a = path_product(x).matrix();
  return (a * a.adjoint()).trace().real();
}

namespace {

bool same_vector(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= 1e-12;
}

}  // namespace

double sorkin_rho2(std::span<const Vector> x, std::span<const Vector> y) {
  if (x.size() < 2 || y.size() < 2) throw ValidationError("sorkin_rho2: chains need two endpoints");
  if (!same_vector(x.front(), y.front()) || !same_vector(x.back(), y.back()))
    throw ValidationError("sorkin_rho2: chains must share endpoints");
  const Matrix s = path_product(x).matrix() + path_product(y).matrix();
  return (s * s.adjoint()).trace().real();
}

double sorkin_reconstruct(const CoherentFamily& f, std::span<const Region> regions) {
  if (regions.empty()) throw ValidationError("sorkin_reconstruct: need at least one region");
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& r : regions) {
    sets.push_back(r.resolve(f));
    if (sets.back().empty()) throw ValidationError("sorkin_reconstruct: region resolves to no nodes");
  }

  // Enumerate interior chains x_1..x_j with their weight and interior overlap product.
  struct Chain {
    std::vector<std::size_t> idx;
    double w;
  };
  std::vector<Chain> chains{{{}, 1.0}};
  for (const auto& s : sets) {
    std::vector<Chain> next;
    for (const auto& c : chains)
      for (std::size_t i : s) {
        Chain e = c;
        e.idx.push_back(i);
        e.w *= f.weight(i);
        next.push_back(std::move(e));
      }
    chains = std::move(next);
  }

  // For a rank-one chain A(X) = F(X)|v_0><v_{j+1}|, so rho1 = |F|^2 and rho2 = |F(X) + F(Y)|^2.
  const std::size_t n = f.size();
  std::vector<cplx> fx(chains.size());
  double num = 0.0;
  for (std::size_t e0 = 0; e0 < n; ++e0)
    for (std::size_t e1 = 0; e1 < n; ++e1) {
      const Vector& v0 = f.node(e0).v;
      const Vector& v1 = f.node(e1).v;
      for (std::size_t c = 0; c < chains.size(); ++c) {
        const auto& idx = chains[c].idx;
        cplx val = v0.dot(f.node(idx.front()).v);
        for (std::size_t i = 0; i + 1 < idx.size(); ++i) val *= f.node(idx[i]).v.dot(f.node(idx[i + 1]).v);
        fx[c] = val * f.node(idx.back()).v.dot(v1);
      }
      double acc = 0.0;
      for (std::size_t a = 0; a < chains.size(); ++a)
        for (std::size_t b = 0; b < chains.size(); ++b) {
          const double rho1x = std::norm(fx[a]);
          const double rho1y = std::norm(fx[b]);
          const double rho2 = std::norm(fx[a] + fx[b]);
          acc += chains[a].w * chains[b].w * 0.5 * (rho2 - rho1x - rho1y);
        }
      num += f.weight(e0) * f.weight(e1) * acc;
    }

  double c1 = 0.0;
  for (std::size_t a : sets.front())
    for (std::size_t b : sets.front()) c1 += f.weight(a) * f.weight(b) * std::norm(f.node(a).v.dot(f.node(b).v));
  if (!(c1 > 1e-300)) throw ConditioningOnNullError("sorkin_reconstruct: conditioning operator vanishes");
  return num / c1;
}

}  // namespace sqm
