#include <doctest.h>

#include <random>
#include <utility>
#include <vector>

#include "sqm/causal_net.hpp"
#include "sqm/errors.hpp"
#include "sqm/nets.hpp"

using namespace sqm;

namespace {

ScopeSample intervals(std::vector<std::pair<double, double>> iv) {
  ScopeSample s;
  for (std::size_t i = 0; i < iv.size(); ++i) s.names.push_back("I" + std::to_string(i));
  s.leq = [iv](std::size_t a, std::size_t b) { return iv[b].first <= iv[a].first && iv[a].second <= iv[b].second; };
  s.perp = [iv](std::size_t a, std::size_t b) { return iv[a].second < iv[b].first || iv[b].second < iv[a].first; };
  return s;
}

}  // namespace

TEST_SUITE("causal_net") {
  TEST_CASE("spacelike intervals") {
    const auto r = check_orthogonality_axioms(intervals({{0, 1}, {2, 3}, {5, 6}}));
    CHECK(r.pass);
    CHECK(r.axioms.size() == 6);
    for (const auto& a : r.axioms)
      if (!a.existential) CHECK(a.witnesses.empty());
  }

  TEST_CASE("single scope has no orthogonal partner") {
    const auto r = check_orthogonality_axioms(intervals({{0, 1}}));
    CHECK(r.pass);
    CHECK_FALSE(r.witnesses_complete);
    CHECK(r.axioms[3].existential);
    CHECK_FALSE(r.axioms[3].pass);
  }

  TEST_CASE("broken symmetry is caught") {
    ScopeSample s;
    s.names = {"a", "b"};
    s.leq = [](std::size_t a, std::size_t b) { return a == b; };
    s.perp = [](std::size_t a, std::size_t b) { return a == 0 && b == 1; };
    CHECK_FALSE(check_orthogonality_axioms(s).pass);
  }

  TEST_CASE("random symplectic subspaces satisfy axiom 2") {
    const auto v = SymplecticSpace::standard(3);
    std::mt19937_64 rng(1);
    std::vector<Eigen::MatrixXd> subs;
    for (int i = 0; i < 20; ++i) subs.push_back(random_subspace(6, 2, rng));
    // Add nested and orthogonal coordinate scopes so the axiom sees nontrivial triples.
    subs.push_back(coordinate_subspace(6, {0, 1}));
    subs.push_back(coordinate_subspace(6, {0, 1, 2, 3}));
    subs.push_back(coordinate_subspace(6, {4, 5}));
    const auto r = check_orthogonality_axioms(ccr_scope_sample(v, subs));
    CHECK(r.pass);
    CHECK(r.axioms[4].witnesses.empty());
  }

  TEST_CASE("net inclusion and commutation") {
    const Operator x = random_hermitian(3, 1), y = random_hermitian(3, 2);
    const LocalAlgebraHandle full{"full", {x, y}}, same{"same", {x, y}}, other{"other", {random_hermitian(3, 3)}};
    const auto r = check_causal_net({full, same}, {{0, 1}, {1, 0}}, {});
    CHECK(r.pass);
    CHECK(r.inclusions.size() == 2);
    CHECK(max_commutator(full, other) == doctest::Approx(max_commutator(other, full)));

    // A diagonal algebra does not contain a generic Hermitian matrix.
    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 1.0, 2.0, 3.0;
    const LocalAlgebraHandle diag{"diag", {Operator(d)}};
    const auto bad = check_causal_net({full, diag}, {{0, 1}}, {});
    CHECK_FALSE(bad.pass);
    CHECK(span_residual({Operator(d)}, Operator(Matrix(d * d)), 2) <= 1e-12);

    const LocalAlgebraHandle wrong{"wrong", {Operator::identity(2)}};
    CHECK_THROWS_AS(check_causal_net({full, wrong}, {{0, 1}}, {}), ValidationError);
  }
}
