#include "sqm/suites.hpp"

#include "sqm/coherent.hpp"
#include "sqm/kappa.hpp"
#include "sqm/povm.hpp"
#include "sqm/zeta.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sqm {

Matrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double re = g(rng);
      const double im = g(rng);
      m(r, c) = cplx(re, im);
    }
  return m;
}

std::vector<KappaTrial> kappa_suite(const Propagator& kernel, std::size_t k, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-2.0, 2.0), ut(0.2, 0.5);
  const KappaEval k2 = kernel.kind() == PropagatorKind::Free ? kappa2_free_eval(kernel.mass(), kernel.hbar())
                                                              : kappa_from_propagator(kernel);
  const KappaEval k4 = kernel.kind() == PropagatorKind::Free ? kappa4_free_eval(kernel.mass(), kernel.hbar())
                                                              : kappa_from_propagator(kernel);
  // Oscillator times stay inside half a period so no factor hits a caustic.
  const double tscale = kernel.kind() == PropagatorKind::Oscillator ? 1.0 / kernel.omega() : 1.0;
  std::vector<KappaTrial> out;
  for (std::size_t i = 0; i < trials; ++i) {
    KappaTrial tr;
    tr.k = k;
    tr.x.resize(2 * k - 2);
    for (auto& v : tr.x) v = ux(rng);
    std::vector<double> times{0.0};
    for (std::size_t j = 1; j < k; ++j) times.push_back(times.back() + tscale * ut(rng));
    tr.t = times;
    for (std::size_t j = k - 1; j-- > 1;) tr.t.push_back(times[j]);
    tr.direct = kappa_n(tr.x, tr.t, kernel);
    tr.reduced = kappa_reduce(k2, k4, tr.x, tr.t);
    tr.residual = std::abs(tr.direct - tr.reduced) / std::abs(tr.direct);
    out.push_back(std::move(tr));
  }
  return out;
}

std::vector<SorkinTrial> sorkin_suite(std::size_t trials, std::uint64_t seed, std::size_t k_min, std::size_t k_max,
                                      std::size_t dim_max) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> uk(k_min, k_max), ud(2, dim_max);
  std::vector<SorkinTrial> out;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t kk = uk(rng), d = ud(rng);
    std::vector<Operator> a;
    for (std::size_t j = 0; j < kk; ++j) {
      Matrix g = ginibre(d, d, rng);
      const double nrm = Operator(g).op_norm();
      a.emplace_back(g / (static_cast<double>(kk) * nrm));
    }
    const Matrix b = ginibre(d, d, rng);
    Matrix rho = b * b.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint());
    out.push_back({kk, d, sorkin_residual(a, Operator(rho))});
  }
  return out;
}

std::vector<ZetaTrial> zeta_suite(std::size_t trials, std::uint64_t seed, std::size_t n_max, std::size_t dim_max) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> un(3, n_max), ud(2, dim_max);
  std::vector<ZetaTrial> out;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t n = un(rng), d = ud(rng);
    std::vector<Vector> pts;
    for (std::size_t j = 0; j < n; ++j) pts.push_back(random_unit_vector(d, rng()));
    ZetaTrial tr{n, d, zeta_n_trace(pts), zeta_reduce(zeta2_direct(), zeta3_direct(), pts), 0.0};
    tr.residual = std::abs(tr.direct - tr.reduced) / std::abs(tr.direct);
    out.push_back(tr);
  }
  return out;
}

ZetaConjugateCheck zeta_conjugate_check(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uc(-1.0, 1.0), uphi(0.0, 2.0 * std::numbers::pi);
  const CoherentFamily f = CoherentFamily::gauss_product(2, 2, 3, uphi(rng));
  auto random_cap = [&]() {
    const double z = uc(rng), phi = uphi(rng), r = std::sqrt(1.0 - z * z);
    return Region::cap(Vec3(r * std::cos(phi), r * std::sin(phi), z), 1.9);
  };
  const std::vector<Region> regs{random_cap(), random_cap(), random_cap()};
  return {zeta_prob(f, regs, zeta2_direct(), zeta3_direct()), zeta_prob(f, regs, zeta2_direct(), zeta3_conjugated()),
          prior_prob_povm(f, regs, 1).probability};
}

std::vector<CarTrial> car_suite(std::size_t k, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CliffordRep rep = CliffordRep::irreducible(k);
  std::vector<CarTrial> out;
  for (std::size_t i = 0; i < trials; ++i) {
    const OrthoPair p = random_ortho_pair(k, rng), q = random_ortho_pair(k, rng);
    out.push_back({p, q, car_prob(rep, p, q), trace_xx(rep, p, q)});
  }
  return out;
}

}  // namespace sqm
