#include "sqm/pvm_prob.hpp"

#include "sqm/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace sqm {

namespace {

void check_inputs(const std::vector<IntervalSet>& regions, std::span<const double> times) {
  if (regions.size() != times.size()) throw ValidationError("regions and times must have equal length");
  if (regions.size() < 2) throw ValidationError("folded trace needs at least two regions");
}

std::vector<NodeSet> nodes_for(const std::vector<IntervalSet>& regions, int depth, int order) {
  std::vector<NodeSet> out;
  out.reserve(regions.size());
  for (const auto& r : regions) out.push_back(composite_nodes(r, depth, order));
  return out;
}

std::size_t max_nodes_at(const std::vector<IntervalSet>& regions, int depth, int order) {
  std::size_t m = 0;
  for (const auto& r : regions) m = std::max(m, composite_nodes(r, depth, order).size());
  return m;
}

Matrix kernel_block(const NodeSet& a, double ta, const NodeSet& b, double tb, const Propagator& k, bool conj) {
  k.check_times(ta, tb);
  Matrix m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i) {
      const cplx v = k(a.x[i], ta, b.x[j], tb);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = conj ? std::conj(v) : v;
    }
  return m;
}

Eigen::VectorXd weights(const NodeSet& n) {
  return Eigen::Map<const Eigen::VectorXd>(n.w.data(), static_cast<Eigen::Index>(n.w.size()));
}

cplx propagator_word(const std::vector<NodeSet>& nodes, std::span<const double> times, const Propagator& k,
                     bool conj) {
  const std::size_t n = nodes.size();
  std::vector<std::size_t> seq;
  for (std::size_t a = 0; a < n; ++a) seq.push_back(a);
  for (std::size_t a = n - 1; a-- > 1;) seq.push_back(a);
  const std::size_t len = seq.size();
  Matrix r = weights(nodes[seq[0]]).asDiagonal() *
             kernel_block(nodes[seq[0]], times[seq[0]], nodes[seq[1]], times[seq[1]], k, conj);
  for (std::size_t p = 1; p < len; ++p) {
    const std::size_t a = seq[p], b = seq[(p + 1) % len];
    r = r * weights(nodes[a]).asDiagonal();
    r = r * kernel_block(nodes[a], times[a], nodes[b], times[b], k, conj);
  }
  return r.trace();
}

cplx reduced_word(const std::vector<NodeSet>& nodes, std::span<const double> times, const Propagator& k,
                  bool conj) {
  KappaEval k2, k4;
  if (k.kind() == PropagatorKind::Free) {
    k2 = kappa2_free_eval(k.mass(), k.hbar());
    k4 = kappa4_free_eval(k.mass(), k.hbar());
  } else {
    k2 = kappa_from_propagator(k);
    k4 = k2;
  }
  auto c = [conj](cplx v) { return conj ? std::conj(v) : v; };
  const std::size_t n = nodes.size();
  // Bond i = (x_{i+1}, x'_{i+2}) over nodes[i] x nodes[i+1] (0-based regions).
  auto bond_size = [&](std::size_t i) { return nodes[i].size() * nodes[i + 1].size(); };
  if (n == 2) {
    cplx acc = 0.0;
    for (std::size_t p = 0; p < nodes[0].size(); ++p)
      for (std::size_t q = 0; q < nodes[1].size(); ++q) {
        const std::array<double, 2> x{nodes[0].x[p], nodes[1].x[q]};
        const std::array<double, 2> t{times[0], times[1]};
        acc += nodes[0].w[p] * nodes[1].w[q] * c(k2(x, t));
      }
    return acc;
  }
  std::vector<cplx> v(bond_size(0));
  for (std::size_t p = 0; p < nodes[0].size(); ++p)
    for (std::size_t q = 0; q < nodes[1].size(); ++q) v[p * nodes[1].size() + q] = nodes[0].w[p] * nodes[1].w[q];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // kappa4 over (x_i, x_{i+1}, x'_{i+2}, x'_{i+1}); 0-based regions i-1, i, i+1, i.
    const NodeSet& na = nodes[i - 1];
    const NodeSet& nb = nodes[i];
    const NodeSet& nc = nodes[i + 1];
    const std::array<double, 4> t{times[i - 1], times[i], times[i + 1], times[i]};
    const bool interior = i + 2 < n;
    std::vector<cplx> out(bond_size(i), 0.0);
    for (std::size_t p2 = 0; p2 < nb.size(); ++p2)
      for (std::size_t q2 = 0; q2 < nc.size(); ++q2) {
        cplx acc = 0.0;
        for (std::size_t p1 = 0; p1 < na.size(); ++p1)
          for (std::size_t q1 = 0; q1 < nb.size(); ++q1) {
            const cplx vb = v[p1 * nb.size() + q1];
            const std::array<double, 4> x{na.x[p1], nb.x[p2], nc.x[q2], nb.x[q1]};
            acc += vb * c(k4(x, t));
          }
        double w = nb.w[p2] * nc.w[q2];
        cplx val = acc * w;
        if (interior) {
          const std::array<double, 2> x{nb.x[p2], nc.x[q2]};
          const std::array<double, 2> tt{times[i], times[i + 1]};
          const cplx d = c(k2(x, tt));
          if (std::abs(d) <= 1e-300) throw DegenerateConfigurationError("reduced trace: vanishing two-point factor");
          val /= d;
        }
        out[p2 * nc.size() + q2] = val;
      }
    v = std::move(out);
  }
  cplx acc = 0.0;
  for (const auto& e : v) acc += e;
  return acc;
}

ProbResult finish(cplx num, cplx den, double tol) {
  ProbResult r;
  r.numerator = num;
  r.denominator = den;
  const double scale = std::max(std::abs(num), std::abs(den));
  if (std::abs(num.imag()) > 1e-8 * std::max(1.0, scale) || std::abs(den.imag()) > 1e-8 * std::max(1.0, scale))
    throw NumericalError("prior probability: trace has a non-negligible imaginary part");
  r.raw = num.real() / den.real();
  r.probability = r.raw;
  const double eps = std::max(tol, 1e-12);
  if (r.raw < -10 * eps || r.raw > 1 + 10 * eps)
    throw NumericalError("prior probability " + std::to_string(r.raw) + " outside [0,1] beyond tolerance");
  if (r.raw < 0.0 || r.raw > 1.0) {
    r.probability = std::clamp(r.raw, 0.0, 1.0);
    r.clamped = true;
  }
  return r;
}

}  // namespace

cplx folded_trace_at_depth(const std::vector<IntervalSet>& regions, std::span<const double> times,
                           const Propagator& k, int depth, int order, TraceMode mode, bool conjugate) {
  check_inputs(regions, times);
  const auto nodes = nodes_for(regions, depth, order);
  for (const auto& n : nodes)
    if (n.size() == 0) return 0.0;
  return mode == TraceMode::Propagator ? propagator_word(nodes, times, k, conjugate)
                                       : reduced_word(nodes, times, k, conjugate);
}

TraceResult folded_trace(const std::vector<IntervalSet>& regions, std::span<const double> times,
                         const Propagator& k, const QuadratureSpec& q, TraceMode mode) {
  check_inputs(regions, times);
  TraceResult r;
  cplx prev = 0.0;
  for (int d = q.min_depth; d <= q.max_depth; ++d) {
    const std::size_t nn = max_nodes_at(regions, d, q.order);
    if (nn > q.node_budget) break;
    const cplx v = folded_trace_at_depth(regions, times, k, d, q.order, mode);
    r.value = v;
    r.depth = d;
    r.max_nodes = nn;
    if (d > q.min_depth) {
      r.change = std::abs(v - prev);
      if (r.change <= q.abs_tol) return r;
    }
    prev = v;
  }
  throw QuadratureError("folded_trace: no convergence within depth/node budget");
}

ProbResult prior_prob_pvm(const std::vector<IntervalSet>& regions, std::span<const double> times, std::size_t k,
                          const Propagator& kernel, const QuadratureSpec& q, TraceMode mode, bool conjugate) {
  if (regions.size() != times.size()) throw ValidationError("prior_prob_pvm: regions and times must match");
  const std::size_t n = regions.size();
  if (k < 1 || k > n) throw ValidationError("prior_prob_pvm: need 1 <= k <= n");
  if (k == 1)
    throw ValidationError("prior_prob_pvm: conditioning on a single position projection is not trace class");
  for (std::size_t i = 0; i < k; ++i)
    if (regions[i].empty()) throw ConditioningOnNullError("prior_prob_pvm: empty conditioning region");
  for (std::size_t i = 0; i + 1 < n; ++i) kernel.check_times(times[i], times[i + 1]);
  if (k == n) {
    ProbResult r;
    r.probability = r.raw = 1.0;
    return r;
  }
  const std::vector<IntervalSet> head(regions.begin(), regions.begin() + static_cast<std::ptrdiff_t>(k));
  const auto th = times.subspan(0, k);
  double prev = 0.0;
  for (int d = q.min_depth; d <= q.max_depth; ++d) {
    const std::size_t nn = max_nodes_at(regions, d, q.order);
    if (nn > q.node_budget) break;
    const cplx num = folded_trace_at_depth(regions, times, kernel, d, q.order, mode, conjugate);
    const cplx den = folded_trace_at_depth(head, th, kernel, d, q.order, mode, conjugate);
    if (!(den.real() > 1e-300)) throw ConditioningOnNullError("prior_prob_pvm: conditioning trace vanishes");
    const double p = num.real() / den.real();
    if (d > q.min_depth && std::abs(p - prev) <= q.abs_tol) {
      ProbResult r = finish(num, den, q.abs_tol);
      r.depth = d;
      r.max_nodes = nn;
      r.change = std::abs(p - prev);
      return r;
    }
    prev = p;
  }
  throw QuadratureError("prior_prob_pvm: no convergence within depth/node budget");
}

ProbResult doubleslit_prob(const IntervalSet& x1, const IntervalSet& x2, const IntervalSet& x3, double t1, double t2,
                           double t3, double mass, double hbar, const QuadratureSpec& q, bool conjugate) {
  if (x1.empty() || x2.empty()) throw ConditioningOnNullError("doubleslit_prob: empty conditioning region");
  if (x3.empty()) throw ValidationError("doubleslit_prob: empty screen region");
  if (!(mass > 0) || !(hbar > 0)) throw ValidationError("doubleslit_prob: mass and hbar must be positive");
  (void)kappa4_free(0, 0, 0, 0, t1, t2, t3, mass, hbar);  // rejects coincident times
  const double den = kappa2_free(t1, t2, mass, hbar) * x1.measure() * x2.measure();
  const double pref = kappa2_free(t1, t2, mass, hbar) * kappa2_free(t2, t3, mass, hbar);
  const double sgn = conjugate ? -1.0 : 1.0;

  // With s = x2 - x2' fixed the phase is affine in x1, x2 and x3 with no
  // cross terms, so those three integrals are exact and only s is sampled.
  auto integrand = [&](double s, double lo, double hi) -> cplx {
    const double f0 = kappa4_free_phase(0.0, 0.0, 0.0, -s, t1, t2, t3, mass, hbar);
    const double f1 = kappa4_free_phase(1.0, 0.0, 0.0, -s, t1, t2, t3, mass, hbar) - f0;
    const double f2 = kappa4_free_phase(0.0, 1.0, 0.0, 1.0 - s, t1, t2, t3, mass, hbar) - f0;
    const double f3 = kappa4_free_phase(0.0, 0.0, 1.0, -s, t1, t2, t3, mass, hbar) - f0;
    return std::polar(1.0, sgn * f0) * exp_integral(sgn * f1, x1) * exp_integral(sgn * f2, IntervalSet::single(lo, hi)) *
           exp_integral(sgn * f3, x3);
  };

  // For each pair of intervals (x2 in A, x2' in B) the admissible x2 range is
  // [max(a1, a2 + s), min(b1, b2 + s)); split s where either bound switches.
  struct Piece {
    double s_lo, s_hi, a1, b1, a2, b2;
  };
  std::vector<Piece> pieces;
  for (const auto& a : x2.intervals())
    for (const auto& b : x2.intervals()) {
      std::vector<double> br{a.lo - b.hi, a.lo - b.lo, a.hi - b.hi, a.hi - b.lo};
      std::sort(br.begin(), br.end());
      for (std::size_t i = 0; i + 1 < br.size(); ++i)
        if (br[i + 1] - br[i] > 1e-15) pieces.push_back({br[i], br[i + 1], a.lo, a.hi, b.lo, b.hi});
    }

  auto extent = [](const IntervalSet& s) { return std::max(std::abs(s.lower()), std::abs(s.upper())); };
  const double t21 = std::abs(t2 - t1), t32 = std::abs(t3 - t2);
  const double freq = mass / hbar * (extent(x1) / t21 + extent(x3) / t32 + 2.0 * extent(x2) * (1.0 / t21 + 1.0 / t32));
  const int d0 = std::max(q.min_depth, static_cast<int>(std::ceil(std::log2(std::max(1.0, freq / 3.0)))));
  const std::size_t budget = 64 * q.node_budget;
  double prev = 0.0;
  for (int d = d0; d <= d0 + q.max_depth; ++d) {
    cplx acc = 0.0;
    std::size_t used = 0;
    for (const auto& pc : pieces) {
      const NodeSet ns = composite_nodes(IntervalSet::single(pc.s_lo, pc.s_hi), d, q.order);
      used += ns.size();
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const double s = ns.x[i];
        const double lo = std::max(pc.a1, pc.a2 + s), hi = std::min(pc.b1, pc.b2 + s);
        if (hi > lo) acc += ns.w[i] * integrand(s, lo, hi);
      }
    }
    if (used > budget) break;
    const cplx num = pref * acc;
    const double p = num.real() / den;
    if (d > d0 && std::abs(p - prev) <= q.abs_tol) {
      ProbResult r = finish(num, cplx(den, 0.0), q.abs_tol);
      r.depth = d;
      r.max_nodes = used;
      r.change = std::abs(p - prev);
      return r;
    }
    prev = p;
  }
  throw QuadratureError("doubleslit_prob: no convergence within depth/node budget");
}

std::vector<IntervalSet> galilei_boost(const std::vector<IntervalSet>& regions, std::span<const double> times,
                                       double v) {
  if (regions.size() != times.size()) throw ValidationError("galilei_boost: regions and times must match");
  std::vector<IntervalSet> out;
  for (std::size_t i = 0; i < regions.size(); ++i) out.push_back(regions[i].shifted(v * times[i]));
  return out;
}

}  // namespace sqm
