#include <doctest.h>

#include <cmath>
#include <random>

#include "sqm/car.hpp"
#include "sqm/errors.hpp"
#include "sqm/nets.hpp"
#include "sqm/suites.hpp"

using namespace sqm;

namespace {

RealVector unit(std::size_t k, std::size_t i) { return RealVector::Unit(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)); }

}  // namespace

TEST_SUITE("car") {
  TEST_CASE("Clifford generators") {
    const auto r1 = clifford_rep(1);
    CHECK(r1.dim() == 2);
    CHECK(max_abs_diff((r1.generator(0) * r1.generator(0)).matrix(), Matrix::Identity(2, 2)) == 0.0);
    for (std::size_t k = 1; k <= 11; ++k) {
      CHECK(CliffordRep::faithful(k).anticommutation_residual() <= 1e-13);
      CHECK(CliffordRep::irreducible(std::max<std::size_t>(k, 2)).anticommutation_residual() <= 1e-13);
    }
    CHECK(CliffordRep::irreducible(7).dim() == 8);
    CHECK(CliffordRep::faithful(7).dim() == 16);
  }

  TEST_CASE("X and P operators") {
    std::mt19937_64 rng(1);
    const auto rep = CliffordRep::irreducible(7);
    for (int i = 0; i < 10; ++i) {
      const auto p = random_ortho_pair(7, rng);
      const Operator x = x_uv(rep, p);
      CHECK(max_abs_diff((x * x).matrix(), Matrix::Identity(8, 8)) <= 1e-13);
      CHECK(x.is_hermitian(1e-14));
      // dim W = 2n + 1 = 7: Tr P+ = 2^{n-1}.
      CHECK(std::abs(p_uv(rep, p, +1).trace() - 4.0) <= 1e-13);
      CHECK(max_abs_diff((p_uv(rep, p, +1) + p_uv(rep, p.swapped(), +1)).matrix(), Matrix::Identity(8, 8)) <= 1e-15);
    }
    const RealVector u = unit(3, 0);
    CHECK_THROWS_AS(OrthoPair(u, u), ValidationError);
    CHECK_THROWS_AS(OrthoPair(u, RealVector(RealVector::Ones(3))), ValidationError);
  }

  TEST_CASE("probability law") {
    std::mt19937_64 rng(2);
    const auto rep7 = CliffordRep::irreducible(7), rep9 = CliffordRep::irreducible(9), rep11 = CliffordRep::irreducible(11);
    for (int i = 0; i < 20; ++i) {
      const auto p = random_ortho_pair(7, rng), q = random_ortho_pair(7, rng);
      CHECK(std::abs(car_prob(rep7, p, p).trace_value - 1.0) <= 1e-13);
      CHECK(std::abs(car_prob(rep7, p, p.swapped()).trace_value) <= 1e-13);
      const auto l7 = car_prob(rep7, p, q);
      CHECK(l7.residual <= 1e-12);
      CHECK(std::abs(car_prob(rep9, p.embedded(9), q.embedded(9)).trace_value - l7.trace_value) <= 1e-12);
      CHECK(std::abs(car_prob(rep11, p.embedded(11), q.embedded(11)).trace_value - l7.trace_value) <= 1e-12);
      // The Z2 gauge phi -> -phi leaves X, hence every probability, unchanged.
      CHECK(std::abs(car_prob(rep7.flipped(), p, q).trace_value - l7.trace_value) <= 1e-14);
    }
    for (std::size_t k : {5, 7, 9, 11})
      for (const auto& t : car_suite(k, 50, 3)) {
        CHECK(t.law.residual <= 1e-12);
        CHECK(t.trace.residual <= 1e-11);
      }
  }

  TEST_CASE("trace_xx") {
    const auto rep = CliffordRep::irreducible(6);  // n = 3, 8x8
    std::mt19937_64 rng(4);
    const auto p = random_ortho_pair(6, rng);
    CHECK(trace_xx(rep, p, p).trace_value == doctest::Approx(8.0));
    const OrthoPair a(unit(6, 0), unit(6, 1)), b(unit(6, 2), unit(6, 3));
    CHECK(std::abs(trace_xx(rep, a, b).trace_value) <= 1e-15);
    for (int i = 0; i < 20; ++i) CHECK(trace_xx(rep, random_ortho_pair(6, rng), random_ortho_pair(6, rng)).residual <= 1e-12);
  }

  TEST_CASE("structure") {
    const auto s2 = structure_check(2, false);
    CHECK(s2.algebra_dim == 4);
    CHECK(s2.center_dim == 1);
    CHECK(s2.matches);
    const auto s3 = structure_check(3, false);
    CHECK(s3.algebra_dim == 8);
    CHECK(s3.center_dim == 2);
    REQUIRE(s3.blocks.size() == 2);
    CHECK(s3.blocks[0].size == 2);
    CHECK(s3.blocks[1].size == 2);
    const auto e3 = structure_check(3, true);
    CHECK(e3.algebra_dim == 4);
    CHECK(e3.center_dim == 1);
    const auto e5 = structure_check(5, true);
    CHECK(e5.algebra_dim == 16);
    CHECK(e5.center_dim == 1);
    REQUIRE(e5.blocks.size() == 1);
    CHECK(e5.blocks[0].size == 4);
    for (std::size_t k = 2; k <= 9; ++k) {
      CHECK(structure_check(k, false).matches);
      CHECK(structure_check(k, true).matches);
    }
    CHECK(expected_blocks(6, false) == std::vector<std::size_t>{8});
    CHECK(expected_blocks(7, false) == std::vector<std::size_t>{8, 8});
  }

  TEST_CASE("CAR nets") {
    const auto rep = CliffordRep::faithful(9);
    const std::vector<Eigen::MatrixXd> subs{coordinate_subspace(9, {0, 1, 2}), coordinate_subspace(9, {3, 4, 5}),
                                           coordinate_subspace(9, {0, 1, 2}), coordinate_subspace(9, {2, 3, 4})};
    const auto h = car_net_instance(rep, subs);
    CHECK(max_commutator(h[0], h[1]) <= 1e-13);
    CHECK(max_commutator(h[0], h[3]) > 1e-2);
    const auto sample = car_scope_sample(subs);
    CHECK(sample.perp(0, 1));
    CHECK_FALSE(sample.perp(0, 3));
    CHECK(sample.leq(0, 2));
    const auto report = check_causal_net(h, {{0, 2}, {2, 0}}, {{0, 1}});
    CHECK(report.pass);
    CHECK_THROWS_AS(car_net_instance(rep, {coordinate_subspace(9, {0, 1})}), ValidationError);
  }
}
