#include "sqm/zeta.hpp"

#include "sqm/errors.hpp"

#include <cmath>

namespace sqm {

cplx zeta_n(std::span<const Vector> pts) {
  if (pts.empty()) throw ValidationError("zeta_n: empty tuple");
  cplx z = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) z *= pts[i].dot(pts[(i + 1) % pts.size()]);
  return z;
}

cplx zeta_n_trace(std::span<const Vector> pts) {
  if (pts.empty()) throw ValidationError("zeta_n_trace: empty tuple");
  std::vector<Operator> ps;
  ps.reserve(pts.size());
  for (const auto& v : pts) ps.push_back(RankOneProjection(v).to_operator());
  return trace_product(ps);
}

Zeta2Eval zeta2_direct() {
  return [](const Vector& a, const Vector& b) { return std::norm(a.dot(b)); };
}

Zeta3Eval zeta3_direct() {
  return [](const Vector& a, const Vector& b, const Vector& c) { return a.dot(b) * b.dot(c) * c.dot(a); };
}

Zeta3Eval zeta3_conjugated() {
  return [](const Vector& a, const Vector& b, const Vector& c) { return std::conj(a.dot(b) * b.dot(c) * c.dot(a)); };
}

cplx zeta_reduce(const Zeta2Eval& z2, const Zeta3Eval& z3, std::span<const Vector> pts) {
  const std::size_t n = pts.size();
  if (n == 0) throw ValidationError("zeta_reduce: empty tuple");
  if (n == 1) return 1.0;
  if (n == 2) return z2(pts[0], pts[1]);
  cplx num = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) num *= z3(pts[0], pts[i], pts[i + 1]);
  double den = 1.0;
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double z = z2(pts[0], pts[i]);
    if (!(z > 1e-300)) throw DegenerateConfigurationError("zeta_reduce: vanishing two-point denominator");
    den *= z;
  }
  return num / den;
}

double zeta_prob(const CoherentFamily& f, std::span<const Region> regions, const Zeta2Eval& z2,
                 const Zeta3Eval& z3) {
  const std::size_t nn = regions.size();
  if (nn == 0) throw ValidationError("zeta_prob: need at least one region");
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& r : regions) {
    sets.push_back(r.resolve(f));
    if (sets.back().empty()) throw ValidationError("zeta_prob: region resolves to no nodes");
  }
  double c1 = 0.0;
  for (std::size_t a : sets[0])
    for (std::size_t b : sets[0]) c1 += f.weight(a) * f.weight(b) * z2(f.node(a).v, f.node(b).v);
  if (!(c1 > 1e-300)) throw ConditioningOnNullError("zeta_prob: conditioning operator vanishes");
  if (nn == 1) return 1.0;

  // Odometer over the 2N slots (x_1..x_N, x'_N..x'_1).
  const std::size_t slots = 2 * nn;
  auto region_of = [nn](std::size_t s) { return s < nn ? s : 2 * nn - 1 - s; };
  std::vector<std::size_t> pos(slots, 0);
  std::vector<Vector> word(slots);
  cplx acc = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t s = 0; s < slots; ++s) {
      const std::size_t node = sets[region_of(s)][pos[s]];
      word[s] = f.node(node).v;
      w *= f.weight(node);
    }
    acc += w * zeta_reduce(z2, z3, word);
    std::size_t s = 0;
    while (s < slots && ++pos[s] == sets[region_of(s)].size()) pos[s++] = 0;
    if (s == slots) break;
  }
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real())))
    throw NumericalError("zeta_prob: imaginary part above tolerance");
  return acc.real() / c1;
}

}  // namespace sqm
