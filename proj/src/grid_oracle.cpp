#include "sqm/grid_oracle.hpp"

#include "sqm/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

namespace sqm {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

double wavenumber(std::size_t k, std::size_t n, double dx) {
  const auto kk = static_cast<long>(k);
  const auto nn = static_cast<long>(n);
  const long f = kk < nn / 2 ? kk : kk - nn;
  return 2.0 * kPi * static_cast<double>(f) / (static_cast<double>(n) * dx);
}

/// out[d] = (1/n) sum_k spec[k] exp(2 pi i d k / n)
std::vector<cplx> inverse_fft(std::vector<cplx> spec) {
  const int n = static_cast<int>(spec.size());
  std::vector<cplx> out(spec.size());
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(spec.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(p);
  fftw_destroy_plan(p);
  for (auto& v : out) v /= static_cast<double>(n);
  return out;
}

std::vector<std::size_t> support(const std::vector<double>& w) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != 0.0) s.push_back(i);
  return s;
}

}  // namespace

double balanced_oscillator_half_width(std::size_t G, double mass, double omega, double hbar) {
  return std::sqrt(kPi * hbar * static_cast<double>(G) / (2.0 * mass * omega));
}

GridOracle::GridOracle(const GridSpec& spec, const Propagator& kind) : spec_(spec), kind_(kind) {
  if (!is_pow2(spec.G)) throw ValidationError("GridOracle: G must be a power of two");
  if (!(spec.L > 0)) throw ValidationError("GridOracle: L must be positive");
  if (kind.kind() == PropagatorKind::Custom) throw ValidationError("GridOracle: needs the free or oscillator kind");
  dx_ = 2.0 * spec.L / static_cast<double>(spec.G);
  x_.resize(spec.G);
  for (std::size_t i = 0; i < spec.G; ++i) x_[i] = -spec.L + (static_cast<double>(i) + 0.5) * dx_;
  if (kind.kind() == PropagatorKind::Oscillator) {
    const std::size_t g = spec.G;
    const double m = kind.mass(), hb = kind.hbar(), w = kind.omega();
    std::vector<cplx> kin(g);
    for (std::size_t k = 0; k < g; ++k) {
      const double kk = wavenumber(k, g, dx_);
      kin[k] = hb * hb * kk * kk / (2.0 * m);
    }
    const std::vector<cplx> row = inverse_fft(std::move(kin));
    Matrix h(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g));
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[(i + g - j) % g];
    for (std::size_t i = 0; i < g; ++i)
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += 0.5 * m * w * w * x_[i] * x_[i];
    osc_ = hermitian_spectrum(Operator(0.5 * (h + h.adjoint())));
  }
}

std::vector<double> GridOracle::region_weights(const IntervalSet& s) const {
  if (!s.empty() && (s.lower() < -spec_.L || s.upper() > spec_.L))
    throw ValidationError("GridOracle: region leaves the box [-L, L)");
  std::vector<double> w(x_.size(), 0.0);
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (spec_.weighting == Weighting::Sharp)
      w[i] = s.contains(x_[i]) ? 1.0 : 0.0;
    else
      w[i] = s.overlap(x_[i] - 0.5 * dx_, x_[i] + 0.5 * dx_) / dx_;
  }
  return w;
}

std::size_t GridOracle::padding(double tau) const {
  const double reach = kind_.hbar() * (kPi / dx_) * std::abs(tau) / kind_.mass();
  std::size_t p = 2;
  while (2.0 * spec_.L * static_cast<double>(p - 1) < reach) p *= 2;
  return p;
}

Matrix GridOracle::evolution_block(double tau, std::span<const std::size_t> rows,
                                   std::span<const std::size_t> cols) const {
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(cols.size());
  Matrix out(nr, nc);
  if (tau == 0.0) {
    for (Eigen::Index i = 0; i < nr; ++i)
      for (Eigen::Index j = 0; j < nc; ++j) out(i, j) = rows[static_cast<std::size_t>(i)] == cols[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
    return out;
  }
  if (kind_.kind() == PropagatorKind::Oscillator) {
    const Matrix& v = osc_.eigenvectors.matrix();
    Vector ph(osc_.eigenvalues.size());
    for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::polar(1.0, -osc_.eigenvalues(k) * tau / kind_.hbar());
    Matrix vr(nr, v.cols()), vc(nc, v.cols());
    for (Eigen::Index i = 0; i < nr; ++i) vr.row(i) = v.row(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]));
    for (Eigen::Index j = 0; j < nc; ++j) vc.row(j) = v.row(static_cast<Eigen::Index>(cols[static_cast<std::size_t>(j)]));
    return vr * ph.asDiagonal() * vc.adjoint();
  }
  // Free motion is translation invariant: one inverse FFT gives every offset.
  const std::size_t n = padding(tau) * spec_.G;
  std::vector<cplx> phase(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double kk = wavenumber(k, n, dx_);
    phase[k] = std::polar(1.0, -kind_.hbar() * kk * kk * tau / (2.0 * kind_.mass()));
  }
  const std::vector<cplx> u = inverse_fft(std::move(phase));
  for (Eigen::Index i = 0; i < nr; ++i)
    for (Eigen::Index j = 0; j < nc; ++j) {
      const long d = static_cast<long>(rows[static_cast<std::size_t>(i)]) - static_cast<long>(cols[static_cast<std::size_t>(j)]);
      out(i, j) = u[static_cast<std::size_t>((d + static_cast<long>(n)) % static_cast<long>(n))];
    }
  return out;
}

cplx GridOracle::trace(const std::vector<IntervalSet>& regions, std::span<const double> times) const {
  if (regions.size() != times.size() || regions.empty())
    throw ValidationError("GridOracle::trace: regions and times must match and be non-empty");
  const std::size_t n = regions.size();
  std::vector<std::vector<double>> w;
  std::vector<std::vector<std::size_t>> s;
  for (const auto& r : regions) {
    w.push_back(region_weights(r));
    s.push_back(support(w.back()));
    if (s.back().empty()) return 0.0;
  }
  // Tr prod_a chi_a U(t_a - t_{a+1}), cyclic.
  auto block = [&](std::size_t a) {
    const std::size_t b = (a + 1) % n;
    Matrix m = evolution_block(times[a] - times[b], s[a], s[b]);
    for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) *= w[a][s[a][static_cast<std::size_t>(i)]];
    return m;
  };
  Matrix acc = block(0);
  for (std::size_t a = 1; a < n; ++a) acc = acc * block(a);
  return acc.trace();
}

cplx GridOracle::folded_trace(const std::vector<IntervalSet>& regions, std::span<const double> times) const {
  if (regions.size() != times.size() || regions.empty())
    throw ValidationError("GridOracle::folded_trace: regions and times must match and be non-empty");
  std::vector<IntervalSet> r(regions.begin(), regions.end());
  std::vector<double> t(times.begin(), times.end());
  for (std::size_t a = regions.size() - 1; a-- > 1;) {
    r.push_back(regions[a]);
    t.push_back(times[a]);
  }
  return trace(r, t);
}

double GridOracle::prob(const std::vector<IntervalSet>& regions, std::span<const double> times, std::size_t k) const {
  const std::size_t n = regions.size();
  if (times.size() != n) throw ValidationError("GridOracle::prob: regions and times must match");
  if (k < 1 || k > n) throw ValidationError("GridOracle::prob: need 1 <= k <= n");
  if (k == n) return 1.0;
  const std::vector<IntervalSet> head(regions.begin(), regions.begin() + static_cast<std::ptrdiff_t>(k));
  const cplx den = folded_trace(head, times.subspan(0, k));
  if (!(den.real() > 1e-300)) throw ConditioningOnNullError("GridOracle::prob: conditioning trace vanishes");
  return folded_trace(regions, times).real() / den.real();
}

}  // namespace sqm
