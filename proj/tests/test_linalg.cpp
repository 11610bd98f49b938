#include <doctest.h>

#include <cmath>
#include <vector>

#include "sqm/errors.hpp"
#include "sqm/linalg.hpp"

using namespace sqm;

TEST_SUITE("linalg") {
  TEST_CASE("trace of identity and of a squared rank-one projection") {
    CHECK(std::abs(trace_product({Operator::identity(2)}) - cplx(2.0, 0.0)) == 0.0);
    const Operator p = random_rank_one(5, 11).to_operator();
    CHECK(std::abs(trace_product({p, p}) - cplx(1.0, 0.0)) <= 1e-12);
  }

  TEST_CASE("Tr(AB) against a direct double sum") {
    const Operator a = random_hermitian(4, 1), b = random_hermitian(4, 2);
    cplx sum = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) sum += a.matrix()(i, j) * b.matrix()(j, i);
    CHECK(std::abs(trace_product({a, b}) - sum) <= 1e-13);
    CHECK(std::abs(trace_product({a, b}) - trace_product({b, a})) <= 1e-13);
  }

  TEST_CASE("dimension mismatch and empty lists are rejected") {
    CHECK_THROWS_AS(trace_product({Operator::identity(2), Operator::identity(3)}), ValidationError);
    CHECK_THROWS_AS(trace_product(std::vector<Operator>{}), ValidationError);
  }

  TEST_CASE("trace_product is cyclic on random 8x8 suites") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const std::vector<Operator> f{random_unitary(8, 3 * s), random_hermitian(8, 3 * s + 1), random_hermitian(8, 3 * s + 2)};
      const std::vector<Operator> g{f[1], f[2], f[0]};
      CHECK(std::abs(trace_product(f) - trace_product(g)) <= 1e-12);
      CHECK(std::abs(trace_product(f)) <= f[0].hs_norm() * f[1].hs_norm() * f[2].hs_norm());
    }
  }

  TEST_CASE("random_rank_one") {
    const Operator one = random_rank_one(1, 99).to_operator();
    CHECK(max_abs_diff(one.matrix(), Matrix::Identity(1, 1)) <= 1e-15);
    CHECK(random_rank_one(4, 5).vector() == random_rank_one(4, 5).vector());
    CHECK_THROWS_AS(random_rank_one(0, 1), ValidationError);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Operator p = random_rank_one(6, s).to_operator();
      CHECK(p.is_hermitian(1e-12));
      CHECK(p.is_projection(1e-12));
    }
  }

  TEST_CASE("E Tr(PQ) = 1/dim by Monte Carlo") {
    // |<u|v>|^2 ~ Beta(1, d-1): variance (d-1)/(d^2 (d+1)).
    const std::size_t d = 8, n = 10000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vector u = random_unit_vector(d, 2 * i + 1000), v = random_unit_vector(d, 2 * i + 1001);
      sum += std::norm(u.dot(v));
    }
    const double se = std::sqrt((d - 1.0) / (d * d * (d + 1.0)) / n);
    CHECK(std::abs(sum / n - 1.0 / d) <= 3.0 * se);
  }

  TEST_CASE("hermitian_spectrum") {
    Matrix m = Matrix::Zero(3, 3);
    m.diagonal() << 3.0, 1.0, 2.0;
    const auto s = hermitian_spectrum(Operator(m));
    CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
    CHECK(s.eigenvalues(2) == doctest::Approx(3.0));

    Matrix x(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    const auto sx = hermitian_spectrum(Operator(x));
    CHECK(sx.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(sx.eigenvalues(1) == doctest::Approx(1.0));

    const Operator a = random_hermitian(16, 42);
    const auto sa = hermitian_spectrum(a);
    const Matrix& v = sa.eigenvectors.matrix();
    const Matrix back = v * sa.eigenvalues.cast<cplx>().asDiagonal() * v.adjoint();
    CHECK(max_abs_diff(back, a.matrix()) <= 1e-10 * a.op_norm());
    CHECK(sa.eigenvectors.is_unitary(1e-12));

    Matrix nh(2, 2);
    nh << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(hermitian_spectrum(Operator(nh)), ValidationError);
  }

  TEST_CASE("degenerate spectra are reproducible") {
    const Operator p = random_rank_one(6, 3).to_operator();
    const Operator a = Operator::identity(6) - p;
    const auto s1 = hermitian_spectrum(a), s2 = hermitian_spectrum(a);
    CHECK(max_abs_diff(s1.eigenvectors.matrix(), s2.eigenvectors.matrix()) == 0.0);
  }
}
