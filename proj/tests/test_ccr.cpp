#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sqm/ccr.hpp"
#include "sqm/errors.hpp"
#include "sqm/nets.hpp"

using namespace sqm;
using std::numbers::pi;

namespace {

RealVector vec(double a, double b) { return (RealVector(2) << a, b).finished(); }

double balanced(std::size_t g) { return std::sqrt(pi * static_cast<double>(g) / 2.0); }

}  // namespace

TEST_SUITE("ccr") {
  TEST_CASE("symplectic space") {
    const auto v = SymplecticSpace::standard(2);
    CHECK(v(RealVector::Unit(4, 0), RealVector::Unit(4, 1)) == 1.0);
    CHECK(v(RealVector::Unit(4, 1), RealVector::Unit(4, 0)) == -1.0);
    CHECK(v.is_symplectic(coordinate_subspace(4, {0, 1})));
    CHECK_FALSE(v.is_symplectic(coordinate_subspace(4, {0, 2})));
    CHECK(v.orthogonal(coordinate_subspace(4, {0, 1}), coordinate_subspace(4, {2, 3})));
    Eigen::MatrixXd sym = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(SymplecticSpace{sym}, ValidationError);
  }

  TEST_CASE("Weyl operators") {
    const WeylGridRep rep(12.0, 512);
    CHECK(max_abs_diff(rep.weyl(vec(0, 0)).matrix(), Matrix::Identity(512, 512)) <= 1e-15);
    const RealVector v = vec(0.7, -1.1);
    CHECK(max_abs_diff(rep.weyl(-v).matrix(), rep.weyl(v).adjoint().matrix()) <= 1e-12);
    CHECK(rep.weyl(v).is_unitary(1e-10));
    CHECK(weyl_relation_residual(rep, vec(1.2, 0.4), vec(-0.3, 1.5)) <= 1e-6);
    CHECK(weyl_relation_residual(rep, vec(0.0, 2.0), vec(2.0, 0.0)) <= 1e-6);
    CHECK(ccr_residual(rep) <= 1e-6);
    // One-parameter group along a fixed direction is exact on the grid.
    CHECK(max_abs_diff((rep.weyl(0.4 * v) * rep.weyl(0.9 * v)).matrix(), rep.weyl(1.3 * v).matrix()) <= 1e-8);
  }

  TEST_CASE("field projections") {
    const WeylGridRep rep(8.0, 64);
    const auto w = rep.window(vec(1, 0));
    const Operator all = rep.field_pvm(vec(1, 0), IntervalSet::single(w.spec_lo - 1, w.spec_hi + 1));
    CHECK(max_abs_diff(all.matrix(), Matrix::Identity(64, 64)) <= 1e-12);
    const Operator half = rep.field_pvm(vec(1, 0), IntervalSet::single(0.0, w.spec_hi + 1));
    CHECK(std::abs(half.trace() - 32.0) <= 1e-10);
    CHECK(half.is_projection(1e-10));
    // Parallel fields have sigma = 0 and commuting spectral projections.
    const Operator a = rep.field_pvm(vec(1, 0), IntervalSet::single(-1, 2));
    const Operator b = rep.field_pvm(vec(2, 0), IntervalSet::single(-3, 1));
    CHECK(commutator(a, b).op_norm() <= 1e-8);
    // Rescaling the direction rescales the interval.
    CHECK(max_abs_diff(rep.field_pvm(vec(2, 0), IntervalSet::single(-2, 4)).matrix(), a.matrix()) <= 1e-10);
    CHECK_THROWS_AS(rep.field_pvm(vec(1, 0), IntervalSet::single(w.spec_lo + 0.01, 0.0)), ValidationError);
  }

  TEST_CASE("prob_z") {
    const WeylGridRep rep(balanced(256), 256);
    const std::vector<FieldFactor> a{{vec(1, 0), IntervalSet::single(-1, 1)}, {vec(0, 1), IntervalSet::single(-1, 1)}};
    CHECK(prob_z(rep, a, std::vector<FieldFactor>{}).probability == 1.0);
    const double t = trace_aa(rep, a);
    CHECK(t > 0.0);
    CHECK(t == doctest::Approx(2.0 / pi).epsilon(0.05));
    const std::vector<FieldFactor> b{{vec(1, 1), IntervalSet::single(-0.5, 1.0)}};
    const auto p = prob_z(rep, a, b);
    CHECK(p.probability >= 0.0);
    CHECK(p.probability <= 1.0);
    const std::vector<FieldFactor> null{{vec(1, 0), IntervalSet::single(-1, 0)}, {vec(1, 0), IntervalSet::single(0.5, 1)}};
    CHECK_THROWS_AS(prob_z(rep, null, b), ConditioningOnNullError);
  }

  TEST_CASE("trace growth separates trace-class from non-trace-class products") {
    const std::vector<std::size_t> gs{128, 256, 512};
    const std::vector<FieldFactor> q{{vec(1, 0), IntervalSet::single(-1, 1)}};
    const std::vector<FieldFactor> qp{{vec(1, 0), IntervalSet::single(-1, 1)}, {vec(0, 1), IntervalSet::single(-1, 1)}};
    CHECK(trace_growth(12.0, gs, q).exponent > 0.8);
    CHECK(std::abs(trace_growth(12.0, gs, qp).exponent) < 0.2);
  }

  TEST_CASE("Lagrangian frames on two modes") {
    const std::size_t g = 16;
    const MultiModeRep rep(2, balanced(g), g);
    auto e = [](int i) { return RealVector(RealVector::Unit(4, i)); };
    const IntervalSet s = IntervalSet::single(-1, 1);
    const Operator a = rep.field_pvm(e(0), s) * rep.field_pvm(e(2), s) * rep.field_pvm(e(1), s) * rep.field_pvm(e(3), s);
    const double t = (a.adjoint() * a).trace().real();
    CHECK(t > 0.0);
    CHECK(std::isfinite(t));
    MESSAGE("two-mode Lagrangian Tr A*A = " << t);
  }

  TEST_CASE("CCR nets") {
    const auto v = SymplecticSpace::standard(2);
    const std::size_t g = 8;
    const MultiModeRep rep(2, balanced(g), g);
    const std::vector<Eigen::MatrixXd> subs{coordinate_subspace(4, {0, 1}), coordinate_subspace(4, {2, 3}),
                                           coordinate_subspace(4, {0, 1, 2, 3})};
    const auto h = ccr_net_instance(v, rep, subs);
    CHECK(max_commutator(h[0], h[1]) <= 1e-8);
    NetCheckOptions opt;
    opt.word_length = 2;
    opt.commutator_tol = 1e-6;
    const auto report = check_causal_net(h, {{0, 2}, {1, 2}}, {{0, 1}}, opt);
    CHECK(report.pass);
    CHECK(max_commutator(h[0], h[2]) > 1e-2);
    Eigen::MatrixXd lag = coordinate_subspace(4, {0, 2});
    CHECK_THROWS_AS(ccr_net_instance(v, rep, {lag}), ValidationError);
  }
}
