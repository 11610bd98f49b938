#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/holonomy.hpp"
#include "sqm/povm.hpp"
#include "sqm/suites.hpp"
#include "sqm/timed.hpp"
#include "sqm/zeta.hpp"

using namespace sqm;
using std::numbers::pi;

namespace {

const Vec3 ez{0, 0, 1};

Region cap(double theta, double phi, double alpha) { return Region::cap(direction(theta, phi), alpha); }

std::vector<Vector> random_points(std::size_t dim, std::size_t n, std::uint64_t seed) {
  std::vector<Vector> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_unit_vector(dim, seed * 131 + i));
  return v;
}

Operator psd_contraction(std::size_t d, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  const Matrix g = ginibre(d, d, rng);
  return Operator(scale * g / Operator(g).op_norm());
}

}  // namespace

TEST_SUITE("povm") {
  TEST_CASE("completeness of the shipped families") {
    for (std::size_t d = 2; d <= 6; ++d) CHECK(CoherentFamily::fibonacci(d, 2000).completeness_residual() <= 5e-3);
    for (std::size_t d = 2; d <= 6; ++d)
      CHECK(CoherentFamily::gauss_product(d, (d + 2) / 2, d).completeness_residual() <= 1e-13);
    CHECK(CoherentFamily::fibonacci(3, 4000).completeness_residual() <
          CoherentFamily::fibonacci(3, 500).completeness_residual());
  }

  TEST_CASE("povm_element") {
    const auto f = CoherentFamily::fibonacci(2, 2000);
    CHECK(max_abs_diff(povm_element(f, Region::all()).matrix(), Matrix::Identity(2, 2)) <= 5e-3);

    // Spin 1/2 over the upper hemisphere: (1/2pi) int (1 + z)/2 dOmega = 3/4 and 1/4.
    const Operator up = povm_element(f, Region::cap(ez, pi / 2));
    CHECK(up.trace().real() == doctest::Approx(cap_measure(2, pi / 2)).epsilon(2e-3));
    CHECK(std::abs(up.matrix()(0, 0) - 0.75) <= 2e-3);
    CHECK(std::abs(up.matrix()(1, 1) - 0.25) <= 2e-3);
    CHECK(std::abs(up.matrix()(0, 1)) <= 2e-3);

    const Region a = cap(0.3, 0.0, 0.4), b = cap(2.0, 1.0, 0.5);
    CHECK(max_abs_diff(povm_element(f, a | b).matrix(), (povm_element(f, a) + povm_element(f, b)).matrix()) <= 1e-15);
    CHECK_THROWS_AS(povm_element(f, Region::cap(ez, 1e-6)), ValidationError);
  }

  TEST_CASE("prior_prob_povm") {
    const auto f = CoherentFamily::fibonacci(2, 2000);
    const Region s1 = cap(0.0, 0.0, 0.6), s2 = cap(pi / 2, 0.0, 0.5), s3 = cap(pi / 2, pi / 2, 0.5);
    const std::vector<Region> one{s1, s2};
    CHECK(prior_prob_povm(f, one, 2).probability == 1.0);

    const double p2 = prior_prob_povm(f, std::vector<Region>{s1, s2}, 1).probability;
    const double p3 = prior_prob_povm(f, std::vector<Region>{s1, s3}, 1).probability;
    const double p23 = prior_prob_povm(f, std::vector<Region>{s1, s2 | s3}, 1).probability;
    CHECK(std::abs(p23 - (p2 + p3)) > 1e-3);

    std::vector<Operator> ops;
    for (std::uint64_t s = 0; s < 4; ++s) ops.push_back(psd_contraction(4, 10 + s, 0.9));
    const std::vector<Operator> head(ops.begin(), ops.begin() + 2), mid(ops.begin(), ops.begin() + 3);
    const double lhs = prior_prob(ops, 1).probability;
    const double rhs = prior_prob(head, 1).probability * prior_prob(mid, 2).probability * prior_prob(ops, 3).probability;
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    CHECK_THROWS_AS(prior_prob(std::vector<Operator>{Operator::zero(2), Operator::identity(2)}, 1),
                    ConditioningOnNullError);
  }

  TEST_CASE("naimark_dilation") {
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const std::vector<Operator> pvm{Operator(p0), Operator(p1)};
    const auto dp = naimark_dilation(pvm);
    CHECK(dp.isometry.rows() == 2);
    CHECK(max_abs_diff(dp.projections[0].matrix(), p0) == 0.0);

    std::vector<Operator> trine;
    for (int k = 0; k < 3; ++k) {
      Vector v(2);
      v << std::cos(k * pi / 3), std::sin(k * pi / 3);
      trine.push_back((2.0 / 3.0) * RankOneProjection(v).to_operator());
    }
    const auto dt = naimark_dilation(trine);
    CHECK(dt.isometry.rows() == 6);
    CHECK(dt.compression_residual <= 1e-12);
    CHECK(max_abs_diff(dt.isometry.adjoint() * dt.isometry, Matrix::Identity(2, 2)) <= 1e-12);
    Matrix sum = Matrix::Zero(6, 6);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(dt.projections[i].is_projection(1e-14));
      for (std::size_t j = i + 1; j < 3; ++j)
        CHECK((dt.projections[i] * dt.projections[j]).hs_norm() == 0.0);
      sum += dt.projections[i].matrix();
    }
    CHECK(max_abs_diff(sum, Matrix::Identity(6, 6)) == 0.0);

    Matrix m = Matrix::Zero(2, 2);
    m.diagonal() << 0.3, 0.8;
    const std::vector<Operator> two{Operator(m), Operator::identity(2) - Operator(m)};
    CHECK(naimark_dilation(two).compression_residual <= 1e-12);
    const std::vector<Operator> bad{Operator(m), Operator(m)};
    CHECK_THROWS_AS(naimark_dilation(bad), ValidationError);
  }

  TEST_CASE("sorkin additivity") {
    const Operator rho = Operator::identity(4) * cplx(0.25, 0.0);
    const std::vector<Operator> two{psd_contraction(4, 1, 0.4), psd_contraction(4, 2, 0.4)};
    CHECK(sorkin_residual(two, rho) == 0.0);
    const std::vector<Operator> three{psd_contraction(4, 3, 0.3), psd_contraction(4, 4, 0.3), psd_contraction(4, 5, 0.3)};
    const Operator r = random_rank_one(4, 6).to_operator();
    CHECK(sorkin_residual(three, r) <= 1e-13);
    const std::vector<Operator> big{psd_contraction(4, 7, 0.9), psd_contraction(4, 8, 0.9)};
    CHECK_THROWS_AS(sorkin_residual(big, rho), ValidationError);

    for (const auto& t : sorkin_suite(100, 9)) CHECK(t.residual <= 1e-12);

    const auto f = CoherentFamily::fibonacci(2, 2000);
    const std::vector<Region> parts{cap(pi / 2, 0.0, 0.4), cap(pi / 2, pi / 2, 0.4), cap(pi / 2, pi, 0.4),
                                    cap(pi / 2, 3 * pi / 2, 0.4)};
    CHECK(sorkin_povm_residual(f, cap(0.0, 0.0, 1.2), parts) <= 1e-12);
    const std::vector<Region> overlap{cap(pi / 2, 0.0, 0.4), cap(pi / 2, 0.2, 0.4), cap(pi / 2, pi, 0.4)};
    CHECK_THROWS_AS(sorkin_povm_residual(f, cap(0.0, 0.0, 1.2), overlap), ValidationError);
  }

  TEST_CASE("sorkin densities") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto x = random_points(3, 4, 2 * s), y = random_points(3, 4, 2 * s + 1);
      y.front() = x.front();
      y.back() = x.back();
      CHECK(sorkin_rho2(x, x) == doctest::Approx(4 * sorkin_rho1(x)).epsilon(1e-13));
      const double cross = 2 * (overlap_chain(x) * std::conj(overlap_chain(y))).real();
      CHECK(std::abs(sorkin_rho2(x, y) - sorkin_rho1(x) - sorkin_rho1(y) - cross) <= 1e-13);
    }
    auto x = random_points(3, 3, 50), y = random_points(3, 3, 51);
    CHECK_THROWS_AS(sorkin_rho2(x, y), ValidationError);

    const auto g = CoherentFamily::gauss_product(2, 6, 8);
    const std::vector<Region> r{cap(0.3, 0.2, 1.0), cap(1.8, 2.0, 1.1)};
    CHECK(std::abs(sorkin_reconstruct(g, r) - prior_prob_povm(g, r, 1).probability) <= 1e-10);
    const std::vector<Region> r3{cap(0.3, 0.2, 1.0), cap(1.8, 2.0, 1.1), cap(2.5, 4.0, 0.9)};
    CHECK(std::abs(sorkin_reconstruct(g, r3) - prior_prob_povm(g, r3, 1).probability) <= 1e-10);
  }

  TEST_CASE("zeta functions") {
    const Vector v = random_unit_vector(5, 1);
    const std::vector<Vector> same{v, v};
    CHECK(std::abs(zeta_n(same) - 1.0) <= 1e-15);

    const auto p4 = random_points(8, 4, 2);
    double prod = 1.0;
    for (std::size_t i = 0; i < 4; ++i) prod *= std::abs(p4[i].dot(p4[(i + 1) % 4]));
    CHECK(std::abs(std::abs(zeta_n_trace(p4)) - prod) <= 1e-12);

    const auto p6 = random_points(4, 6, 3);
    const cplx red = zeta_reduce(zeta2_direct(), zeta3_direct(), p6);
    CHECK(std::abs(red - zeta_n_trace(p6)) <= 1e-11 * std::abs(zeta_n_trace(p6)));
    for (const auto& t : zeta_suite(100, 4)) CHECK(t.residual <= 1e-11);

    const auto c = zeta_conjugate_check(5);
    CHECK(std::abs(c.plain - c.conjugated) <= 1e-12);
    CHECK(std::abs(c.plain - c.direct) <= 1e-12);

    Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
    e0(0) = 1.0;
    e1(1) = 1.0;
    const std::vector<Vector> degenerate{e0, random_unit_vector(2, 7), e1, random_unit_vector(2, 8)};
    CHECK_THROWS_AS(zeta_reduce(zeta2_direct(), zeta3_direct(), degenerate), DegenerateConfigurationError);
  }

  TEST_CASE("path operators and holonomy") {
    const Vector v = spin_coherent(2, direction(0.7, 0.4));
    const auto loop = Curve::from_vectors({v, v, v, v}, true);
    CHECK(std::abs(holonomy(loop) - 1.0) <= 1e-15);
    CHECK(max_abs_diff(path_operator(loop.samples).matrix(), RankOneProjection(v).to_operator().matrix()) <= 1e-15);

    Vector a = Vector::Zero(2), b = Vector::Zero(2);
    a(0) = 1.0;
    b << std::cos(0.3), std::sin(0.3);
    const auto gc = GreatCircle::between(a, b);
    CHECK(gc.eps == doctest::Approx(0.3));
    double prev = 0.0;
    for (std::size_t n = 64; n <= 4096; n *= 2) {
      const double err = (path_operator(gc.samples(n)) - gc.limit_operator()).op_norm();
      if (prev > 0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.05));
      prev = err;
    }

    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto tri = geodesic_triangle(random_unit_vector(3, 3 * s), random_unit_vector(3, 3 * s + 1),
                                         random_unit_vector(3, 3 * s + 2), 64);
      CHECK(std::abs(holonomy(tri.loop) - tri.expected) <= 1e-10);
    }

    const std::vector<Vec3> octant{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const double omega = solid_angle(octant[0], octant[1], octant[2]);
    CHECK(std::abs(omega) == doctest::Approx(pi / 2));
    const auto sph = Curve::sphere_polygon(2, octant, 4096, true);
    CHECK(std::abs(holonomy(sph) - std::polar(1.0, -omega / 2)) <= 1e-6);
    CHECK(std::abs(holonomy(sph.reversed()) - std::polar(1.0, omega / 2)) <= 1e-6);

    // Random rephasing of every sample leaves the holonomy alone.
    std::vector<Vector> re = sph.samples;
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> th(0.0, 2 * pi);
    for (auto& x : re) x *= std::polar(1.0, th(rng));
    CHECK(std::abs(holonomy(Curve::from_vectors(re, true)) - holonomy(sph)) <= 1e-12);

    const std::vector<Vector> orth{a, Vector(Vector::Unit(2, 1))};
    CHECK_THROWS(Curve::from_vectors(orth, false));
  }

  TEST_CASE("interference") {
    const std::vector<Vec3> p1{{0, 0, 1}, {1, 0, 0}}, p2{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    const auto c1 = Curve::sphere_polygon(2, p1, 512, false), c2 = Curve::sphere_polygon(2, p2, 512, false);
    const auto same = curve_interference(c1, c1);
    CHECK(same.rho2 == doctest::Approx(4.0));
    CHECK(same.probability == doctest::Approx(1.0));
    const auto two = curve_interference(c1, c2);
    CHECK(std::abs(two.probability - 0.5 * (1 + std::cos(pi / 4))) <= 1e-6);

    const auto f = CoherentFamily::gauss_product(2, 6, 8);
    const std::vector<Region> s{cap(0.2, 0.0, 1.0), cap(1.5, 1.0, 1.0), cap(2.6, 3.0, 1.0)};
    const auto ri = path_interference(f, s, s);
    CHECK(ri.probability == doctest::Approx(ri.p_s).epsilon(1e-12));
    CHECK(ri.p_s == doctest::Approx(prior_prob_povm(f, s, 1).probability).epsilon(1e-12));
  }

  TEST_CASE("unitary time evolution") {
    const auto f = CoherentFamily::fibonacci(2, 2000);
    const std::vector<Region> r{cap(0.2, 0.0, 0.8), cap(1.5, 1.0, 0.9)};
    const std::vector<double> t{0.0, 1.3};
    const UnitaryGroup still(Operator::zero(2));
    CHECK(timed_prior_prob(f, r, t, still, 1).probability == prior_prob_povm(f, r, 1).probability);

    const double w = 0.8;
    Matrix h = Matrix::Zero(2, 2);
    h.diagonal() << w / 2, -w / 2;
    const UnitaryGroup u((Operator(h)));
    const Vector x = spin_coherent(2, direction(pi / 2, 0.6));
    for (double s : {0.3, 1.0, 2.5}) CHECK(std::norm(propagator_povm(x, 0.0, x, s, u)) == doctest::Approx(std::pow(std::cos(w * s / 2), 2)));

    auto pts = random_points(2, 5, 20);
    const std::vector<double> ts{0.0, 0.4, 1.1, 0.7, 2.0};
    const cplx k0 = kappa_povm(pts, ts, u);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] *= std::polar(1.0, 0.7 * i + 0.1);
    CHECK(std::abs(kappa_povm(pts, ts, u) - k0) <= 1e-13);

    Matrix nh = Matrix::Zero(2, 2);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(UnitaryGroup(Operator(nh)), ValidationError);
  }
}
