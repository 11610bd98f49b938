#include "sqm/quadrature.hpp"

#include "sqm/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <complex>

namespace sqm {

namespace {

template <unsigned N>
NodeSet rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  NodeSet out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      out.x.push_back(0.0);
      out.w.push_back(w[i]);
    } else {
      out.x.push_back(-a[i]);
      out.w.push_back(w[i]);
      out.x.push_back(a[i]);
      out.w.push_back(w[i]);
    }
  }
  return out;
}

}  // namespace

NodeSet gauss_legendre(int order) {
  switch (order) {
    case 8: { static const NodeSet r = rule<8>(); return r; }
    case 16: { static const NodeSet r = rule<16>(); return r; }
    case 20: { static const NodeSet r = rule<20>(); return r; }
    default: throw ValidationError("gauss_legendre: supported orders are 8, 16, 20");
  }
}

NodeSet composite_nodes(const IntervalSet& s, int depth, int order) {
  if (depth < 0) throw ValidationError("composite_nodes: negative depth");
  const NodeSet base = gauss_legendre(order);
  const double h = std::ldexp(1.0, -depth);
  NodeSet out;
  for (const auto& iv : s.intervals()) {
    const auto panels = static_cast<long>(std::ceil((iv.hi - iv.lo) / h - 1e-12));
    const double width = (iv.hi - iv.lo) / static_cast<double>(std::max(1L, panels));
    for (long p = 0; p < std::max(1L, panels); ++p) {
      const double mid = iv.lo + (static_cast<double>(p) + 0.5) * width;
      for (std::size_t j = 0; j < base.size(); ++j) {
        out.x.push_back(mid + 0.5 * width * base.x[j]);
        out.w.push_back(0.5 * width * base.w[j]);
      }
    }
  }
  return out;
}

std::complex<double> exp_integral(double c, const IntervalSet& s) {
  std::complex<double> acc = 0.0;
  for (const auto& iv : s.intervals()) {
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.5 * (iv.hi - iv.lo);
    const double z = c * half;
    const double sinc = std::abs(z) < 1e-4 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    acc += std::polar(2.0 * half * sinc, c * mid);
  }
  return acc;
}

}  // namespace sqm
