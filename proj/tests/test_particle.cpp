#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/grid_oracle.hpp"
#include "sqm/kappa.hpp"
#include "sqm/pvm_prob.hpp"
#include "sqm/suites.hpp"

using namespace sqm;
using std::numbers::pi;

namespace {

IntervalSet iv(double lo, double hi) { return IntervalSet::single(lo, hi); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("particle") {
  TEST_CASE("free propagator modulus and diagonal value") {
    for (double x : {-2.0, 0.0, 0.3, 5.0})
      CHECK(std::norm(propagator_free(x, 0.0, 1.7, 1.0)) == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-14));
    const cplx diag = std::sqrt(cplx(1.0, 0.0) / (2 * pi * cplx(0.0, 1.0) * 1.3));
    CHECK(std::abs(propagator_free(0.4, 0.0, 0.4, 1.3) - diag) <= 1e-15);
    CHECK_THROWS_AS(propagator_free(0.0, 1.0, 1.0, 1.0), SingularTimeError);
  }

  TEST_CASE("composition over an intermediate time") {
    for (const auto& k : {Propagator::free(), Propagator::oscillator(1.0, 0.7)}) {
      const auto c = composition_check(k, 0.3, 0.0, 0.5, -0.8, 1.0);
      CHECK(c.residual <= 1e-6);
    }
  }

  TEST_CASE("oscillator propagator") {
    CHECK(propagator_oscillator(0.3, 0.0, -1.2, 0.8) == propagator_oscillator(-1.2, 0.0, 0.3, 0.8));
    const cplx osc = propagator_oscillator(0.5, 0.0, -0.7, 1.0, 1.0, 1e-4);
    CHECK(rel(osc, propagator_free(0.5, 0.0, -0.7, 1.0)) <= 1e-6);
    // cot(pi/2) = 0, sin(pi/2) = 1.
    const double x = 0.6, xp = -1.1;
    const cplx quarter = std::sqrt(cplx(1.0, 0.0) / (2 * pi * cplx(0.0, 1.0))) * std::exp(cplx(0.0, -x * xp));
    CHECK(std::abs(propagator_oscillator(x, 0.0, xp, pi / 2) - quarter) <= 1e-14);
    CHECK_THROWS_AS(propagator_oscillator(0.0, 0.0, 1.0, pi), SingularTimeError);
  }

  TEST_CASE("kappa_n symmetries and closed forms") {
    const auto k = Propagator::free();
    const std::vector<double> x2{0.4, -1.3}, t2{0.0, 1.0};
    CHECK(std::abs(kappa_n(x2, t2, k) - cplx(1.0 / (2 * pi), 0.0)) <= 1e-15);

    const std::vector<double> x{0.1, 0.9, -0.4, 1.2}, t{0.0, 0.7, 1.5, 2.2};
    const std::vector<double> xr{x.rbegin(), x.rend()}, tr{t.rbegin(), t.rend()};
    CHECK(std::abs(kappa_n(xr, tr, k) - std::conj(kappa_n(x, t, k))) <= 1e-15);

    // Triangles (0,0),(1,1),(0,2) and (0,0),(-1,1),(0,2) have equal area.
    CHECK(triangle_area(0, 0, 1, 1, 0, 2) == doctest::Approx(1.0));
    CHECK(triangle_area(0, 0, -1, 1, 0, 2) == doctest::Approx(1.0));
    const std::vector<double> x4{0.0, 1.0, 0.0, -1.0}, t4{0.0, 1.0, 2.0, 1.0};
    const cplx direct = kappa_n(x4, t4, k);
    CHECK(std::abs(direct - cplx(1.0 / (4 * pi * pi), 0.0)) <= 1e-15);
    CHECK(std::abs(kappa4_free(0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 2.0) - direct) <= 1e-15);

    // Off the symmetric point the closed form still matches the four-factor product.
    const std::vector<double> y4{0.3, -0.8, 1.4, 0.5};
    CHECK(std::abs(kappa4_free(0.3, -0.8, 1.4, 0.5, 0.0, 1.0, 2.5) - kappa_n(y4, std::vector<double>{0.0, 1.0, 2.5, 1.0}, k)) <= 1e-14);
    CHECK_THROWS_AS(kappa_n(x2, std::vector<double>{1.0, 1.0}, k), SingularTimeError);
  }

  TEST_CASE("kappa_reduce") {
    const auto k = Propagator::free();
    const auto k2 = kappa_from_propagator(k), k4 = kappa_from_propagator(k);
    const std::vector<double> x{0.2, -0.5, 1.1, 0.7}, t{0.0, 1.0, 2.0, 1.0};
    CHECK(std::abs(kappa_reduce(k2, k4, x, t) - kappa_n(x, t, k)) <= 1e-15);

    for (const auto& tr : kappa_suite(k, 4, 50, 3)) CHECK(tr.residual <= 1e-10);
    for (const auto& tr : kappa_suite(Propagator::oscillator(), 5, 50, 4)) CHECK(tr.residual <= 1e-10);
    for (const auto& tr : kappa_suite(Propagator::free(), 6, 20, 5)) CHECK(tr.residual <= 1e-10);
    const std::vector<double> bad{0.0, 1.0, 2.0, 3.0};
    CHECK_THROWS_AS(check_folded_times(bad), ValidationError);
    CHECK(check_folded_times(std::vector<double>{0.0, 1.0, 2.0, 3.0, 2.0, 1.0}) == 4);
  }

  TEST_CASE("prior_prob_pvm basic contract") {
    const auto k = Propagator::free();
    const std::vector<IntervalSet> r{iv(-1, 1), iv(-1, 1)};
    const std::vector<double> t{0.0, 1.0};
    CHECK(prior_prob_pvm(r, t, 2, k).probability == 1.0);
    CHECK_THROWS_AS(prior_prob_pvm(r, t, 1, k), ValidationError);
    CHECK_THROWS_AS(prior_prob_pvm(r, t, 3, k), ValidationError);
  }

  TEST_CASE("chain rule, conjugation gauge and time reflection") {
    const auto k = Propagator::free();
    QuadratureSpec q;
    q.abs_tol = 1e-10;
    const std::vector<IntervalSet> r{iv(-1, 1), iv(-0.5, 1.5), iv(0, 2), iv(-1, 0.5)};
    const std::vector<double> t{0.0, 1.0, 2.0, 3.0};
    const double p24 = prior_prob_pvm(r, t, 2, k, q).probability;
    const std::vector<IntervalSet> r3{r[0], r[1], r[2]};
    const std::vector<double> t3{0.0, 1.0, 2.0};
    const double p23 = prior_prob_pvm(r3, t3, 2, k, q).probability;
    const double p34 = prior_prob_pvm(r, t, 3, k, q).probability;
    CHECK(std::abs(p24 - p23 * p34) <= 1e-8);

    const auto plain = prior_prob_pvm(r3, t3, 2, k, q);
    const auto conj = prior_prob_pvm(r3, t3, 2, k, q, TraceMode::Propagator, true);
    CHECK(std::abs(plain.probability - conj.probability) <= 1e-12);
    const auto reduced = prior_prob_pvm(r3, t3, 2, k, q, TraceMode::Reduced);
    CHECK(std::abs(plain.probability - reduced.probability) <= 1e-8);

    // Free motion is time-reversal invariant, so the retrodictive ordering
    // (times running backwards) gives the same probability.
    const std::vector<double> back{0.0, -1.0, -2.0};
    CHECK(std::abs(prior_prob_pvm(r3, back, 2, k, q).probability - plain.probability) <= 1e-8);
  }

  TEST_CASE("grid oracle: Tr E E on the free line") {
    const GridOracle g({}, Propagator::free());
    const std::vector<IntervalSet> r{iv(-1, 1), iv(-1, 1)};
    const std::vector<double> t{0.0, 1.0};
    const cplx tr = g.trace(r, t);
    CHECK(std::abs(tr - 2.0 / pi) <= 0.01 * 2.0 / pi);
    const cplx quad = folded_trace(r, t, Propagator::free(), {}).value;
    CHECK(std::abs(tr - quad) <= 0.01 * std::abs(quad));

    const std::vector<IntervalSet> disjoint{iv(-1, 0), iv(0.5, 1)};
    const std::vector<double> same{0.5, 0.5};
    CHECK(std::abs(g.trace(disjoint, same)) == 0.0);
    CHECK_THROWS_AS(g.trace(std::vector<IntervalSet>{iv(-50, 1), iv(0, 1)}, t), ValidationError);
  }

  TEST_CASE("grid oracle: conditional probability matches quadrature") {
    const auto k = Propagator::free();
    const GridOracle g({}, k);
    const std::vector<IntervalSet> r{iv(-1, 1), iv(-1, 1), iv(0, 2)};
    const std::vector<double> t{0.0, 1.0, 2.0};
    const double pg = g.prob(r, t, 2), pq = prior_prob_pvm(r, t, 2, k).probability;
    CHECK(std::abs(pg - pq) <= 0.01 * pg);
  }

  TEST_CASE("grid oracle: oscillator full period") {
    const auto k = Propagator::oscillator();
    const GridSpec spec{balanced_oscillator_half_width(512, 1.0, 1.0, 1.0), 512, Weighting::CellOverlap};
    const GridOracle g(spec, k);
    const std::vector<IntervalSet> r{iv(-1, 0), iv(0.5, 1.5)};
    const double quarter = std::abs(g.trace(r, std::vector<double>{0.0, pi / 2}));
    const double full = std::abs(g.trace(r, std::vector<double>{0.0, 2 * pi}));
    CHECK(quarter == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-4));
    CHECK(full <= 1e-2 * quarter);
  }

  TEST_CASE("double slit") {
    const IntervalSet x1 = iv(-1, 1), slits({{-1.1, -0.9}, {0.9, 1.1}});
    const double full = doubleslit_prob(x1, slits, iv(-1e4, 1e4), 0, 1, 2).probability;
    CHECK(std::abs(full - 1.0) <= 1e-3);

    const IntervalSet screen = iv(-3, 2);
    const double p = doubleslit_prob(x1, slits, screen, 0, 1, 2).probability;
    const double v = 0.7;
    const double pb = doubleslit_prob(x1.shifted(0.0), slits.shifted(v), screen.shifted(2 * v), 0, 1, 2).probability;
    CHECK(std::abs(p - pb) <= 1e-3);

    // Fringe spacing 2 pi hbar T/(m d) = pi for slit separation d = 2.
    const GridOracle g({}, Propagator::free());
    std::vector<double> bins;
    for (int b = 0; b < 16; ++b) {
      const IntervalSet bin = iv(-8.0 + b, -7.0 + b);
      const double ps = doubleslit_prob(x1, slits, bin, 0, 1, 2).probability;
      const double pg = g.prob(std::vector<IntervalSet>{x1, slits, bin}, std::vector<double>{0, 1, 2}, 2);
      CHECK(std::abs(ps - pg) <= 0.02 * pg);
      bins.push_back(ps);
    }
    bool fringe = false;
    for (std::size_t b = 1; b + 1 < bins.size(); ++b) fringe = fringe || (bins[b] < bins[b - 1] && bins[b] < bins[b + 1]);
    CHECK(fringe);
  }
}
