// One PASS/FAIL line per acceptance criterion. Usage: sqm_acceptance [path-to-sqm-cli]
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sqm/car.hpp"
#include "sqm/ccr.hpp"
#include "sqm/grid_oracle.hpp"
#include "sqm/holonomy.hpp"
#include "sqm/nets.hpp"
#include "sqm/pvm_prob.hpp"
#include "sqm/suites.hpp"

using namespace sqm;
using std::numbers::pi;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << what << ": " << detail << std::endl;
}

std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

IntervalSet iv(double lo, double hi) { return IntervalSet::single(lo, hi); }

void car_law_and_trace() {
  const auto t0 = std::chrono::steady_clock::now();
  double law = 0.0, tr = 0.0;
  for (std::size_t k : {5, 7, 9, 11})
    for (const auto& t : car_suite(k, 1000, 1000 + k)) {
      law = std::max(law, t.law.residual);
      tr = std::max(tr, t.trace.residual);
    }
  const double secs = seconds_since(t0);
  report(1, law <= 1e-12 && secs < 10.0, "CAR probability law, k in {5,7,9,11}, 1000 pairs each",
         "max residual " + sci(law) + " (tol 1e-12), " + sci(secs) + " s (limit 10 s)");
  report(2, tr <= 1e-11, "CAR trace lemma, same sweep", "max residual " + sci(tr) + " (tol 1e-11)");
}

void car_structure() {
  int bad = 0;
  for (std::size_t k = 2; k <= 11; ++k)
    for (bool even : {false, true})
      if (!structure_check(k, even).matches) ++bad;
  report(3, bad == 0, "CAR structure table, k = 2..11, full and even parts", std::to_string(bad) + " mismatches of 20");
}

void sorkin() {
  double worst = 0.0;
  std::size_t n = 0;
  for (const auto& t : sorkin_suite(500, 4, 3, 5, 16)) {
    worst = std::max(worst, t.residual);
    ++n;
  }
  report(4, n == 500 && worst <= 1e-12, "Sorkin additivity, 500 configurations",
         "max residual " + sci(worst) + " (tol 1e-12)");
}

void zeta() {
  double worst = 0.0, conj = 0.0;
  for (const auto& t : zeta_suite(500, 5, 8, 16)) worst = std::max(worst, t.residual);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto c = zeta_conjugate_check(500 + s);
    conj = std::max(conj, std::abs(c.plain - c.conjugated));
  }
  report(5, worst <= 1e-11 && conj <= 1e-12, "zeta reduction, 500 tuples, and conjugated three-point function",
         "max relative residual " + sci(worst) + " (tol 1e-11), conjugate difference " + sci(conj) + " (tol 1e-12)");
}

void kappa() {
  double worst = 0.0;
  for (const auto& kind : {Propagator::free(), Propagator::oscillator()})
    for (std::size_t k : {4, 5, 6})
      for (const auto& t : kappa_suite(kind, k, 100, 60 + k)) worst = std::max(worst, t.residual);
  report(6, worst <= 1e-10, "kappa reduction, free and oscillator, k in {4,5,6}",
         "max relative residual " + sci(worst) + " (tol 1e-10)");
}

void particle_grid() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto k = Propagator::free();
  const GridOracle grid({}, k);
  const std::vector<IntervalSet> r{iv(0, 1), iv(0, 1)};
  const std::vector<double> t{0.0, 1.0};
  const double g = grid.trace(r, t).real(), q = folded_trace(r, t, k, {}).value.real();
  const double trace_err = std::abs(g - q) / std::abs(q);

  const IntervalSet x1 = iv(-1, 1), slits({{-1.1, -0.9}, {0.9, 1.1}});
  double slit_err = 0.0;
  for (int b = 0; b < 16; ++b) {
    const IntervalSet bin = iv(-8.0 + b, -7.0 + b);
    const double ps = doubleslit_prob(x1, slits, bin, 0, 1, 2).probability;
    const double pg = grid.prob(std::vector<IntervalSet>{x1, slits, bin}, std::vector<double>{0, 1, 2}, 2);
    slit_err = std::max(slit_err, std::abs(ps - pg) / pg);
  }

  double boost = 0.0;
  const IntervalSet screen = iv(-3, 2);
  const double p = doubleslit_prob(x1, slits, screen, 0, 1, 2).probability;
  for (double v : {-2.0, -0.7, 0.7, 2.0}) {
    const double pb = doubleslit_prob(x1, slits.shifted(v), screen.shifted(2 * v), 0, 1, 2).probability;
    boost = std::max(boost, std::abs(p - pb));
  }
  const double secs = seconds_since(t0);
  report(7, trace_err <= 0.01 && slit_err <= 0.02 && boost <= 1e-3 && secs < 60.0,
         "propagator pipeline against the grid oracle",
         "Tr E E relative error " + sci(trace_err) + " (tol 1e-2), double-slit bins " + sci(slit_err) +
             " (tol 2e-2), Galilei " + sci(boost) + " (tol 1e-3), " + sci(secs) + " s (limit 60 s)");
}

void holonomy_checks() {
  double tri = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = geodesic_triangle(random_unit_vector(3, 3 * s + 7), random_unit_vector(3, 3 * s + 8),
                                     random_unit_vector(3, 3 * s + 9), 64);
    tri = std::max(tri, std::abs(holonomy(g.loop) - g.expected));
  }

  Vector a = Vector::Zero(2), b = Vector::Zero(2);
  a(0) = 1.0;
  b << std::cos(0.3), std::sin(0.3);
  const auto gc = GreatCircle::between(a, b);
  double lo = 1e9, hi = 0.0, prev = 0.0;
  for (std::size_t n = 64; n <= 4096; n *= 2) {
    const double err = (path_operator(gc.samples(n)) - gc.limit_operator()).op_norm();
    if (prev > 0) {
      lo = std::min(lo, prev / err);
      hi = std::max(hi, prev / err);
    }
    prev = err;
  }

  const std::vector<Vec3> octant{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const double omega = solid_angle(octant[0], octant[1], octant[2]);
  const double phase = std::abs(holonomy(Curve::sphere_polygon(2, octant, 4096, true)) - std::polar(1.0, -omega / 2));
  const bool halves = lo >= 1.9 && hi <= 2.1;
  report(8, tri <= 1e-10 && halves && phase <= 1e-6, "holonomy",
         "geodesic triangle " + sci(tri) + " (tol 1e-10), error ratios per doubling in [" + sci(lo) + ", " + sci(hi) +
             "] (want 2 +- 0.1), spherical phase " + sci(phase) + " (tol 1e-6)");
}

RealVector vec2(double a, double b) { return (RealVector(2) << a, b).finished(); }

void ccr() {
  const WeylGridRep rep(12.0, 512);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(0.0, 2 * pi), rad(0.0, 2.0);
  double weyl = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double rv = i == 0 ? 2.0 : rad(rng), ru = i == 0 ? 2.0 : rad(rng);
    const double av = ang(rng), au = ang(rng);
    weyl = std::max(weyl, weyl_relation_residual(rep, vec2(rv * std::cos(av), rv * std::sin(av)),
                                                 vec2(ru * std::cos(au), ru * std::sin(au))));
  }

  const std::size_t g = 1024;
  const WeylGridRep big(std::sqrt(pi * g / 2.0), g);
  const std::vector<FieldFactor> a{{vec2(1, 0), iv(-1, 1)}, {vec2(0, 1), iv(-1, 1)}};
  const double hs = trace_aa(big, a);
  const double hs_err = std::abs(hs - 4.0 / (2 * pi)) / (4.0 / (2 * pi));

  const std::size_t g2 = 16;
  const MultiModeRep two(2, std::sqrt(pi * g2 / 2.0), g2);
  const auto v = SymplecticSpace::standard(2);
  const auto h = ccr_net_instance(v, two, {coordinate_subspace(4, {0, 1}), coordinate_subspace(4, {2, 3})});
  const double comm = max_commutator(h[0], h[1]);
  report(9, weyl <= 1e-6 && hs_err <= 0.02 && comm <= 1e-8, "CCR grid representation",
         "Weyl relation " + sci(weyl) + " (tol 1e-6), Tr A*A relative error " + sci(hs_err) +
             " (tol 2e-2), two-mode sigma-orthogonal commutator " + sci(comm) + " (tol 1e-8)");
}

void nets() {
  const auto rep = CliffordRep::faithful(9);
  std::mt19937_64 rng(10);
  double comm = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Eigen::MatrixXd r = random_subspace(9, 9, rng);
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(r).householderQ();
    const std::vector<Eigen::MatrixXd> subs{q.leftCols(3), q.middleCols(3, 3), q.rightCols(3), q.leftCols(5)};
    const auto h = car_net_instance(rep, subs);
    comm = std::max({comm, max_commutator(h[0], h[1]), max_commutator(h[1], h[2]), max_commutator(h[0], h[2]),
                     max_commutator(h[3], h[2])});
  }

  std::vector<std::string> failed;
  {
    const std::vector<std::pair<double, double>> iv{{0, 1}, {2, 3}, {5, 6}, {0, 3}};
    ScopeSample s;
    for (std::size_t i = 0; i < iv.size(); ++i) s.names.push_back(std::to_string(i));
    s.leq = [iv](std::size_t a, std::size_t b) { return iv[b].first <= iv[a].first && iv[a].second <= iv[b].second; };
    s.perp = [iv](std::size_t a, std::size_t b) { return iv[a].second < iv[b].first || iv[b].second < iv[a].first; };
    if (!check_orthogonality_axioms(s).pass) failed.push_back("intervals");
  }
  const std::vector<Eigen::MatrixXd> car_subs{coordinate_subspace(9, {0, 1, 2}), coordinate_subspace(9, {3, 4, 5}),
                                             coordinate_subspace(9, {0, 1, 2, 3, 4}), coordinate_subspace(9, {2, 3, 4})};
  if (!check_orthogonality_axioms(car_scope_sample(car_subs)).pass) failed.push_back("car");
  const auto v = SymplecticSpace::standard(3);
  std::vector<Eigen::MatrixXd> ccr_subs;
  for (int i = 0; i < 20; ++i) ccr_subs.push_back(random_subspace(6, 2, rng));
  if (!check_orthogonality_axioms(ccr_scope_sample(v, ccr_subs)).pass) failed.push_back("ccr");
  const auto v2 = SymplecticSpace::standard(2);
  const std::vector<Eigen::MatrixXd> two{coordinate_subspace(4, {0, 1}), coordinate_subspace(4, {2, 3}),
                                        coordinate_subspace(4, {0, 1, 2, 3})};
  if (!check_orthogonality_axioms(ccr_scope_sample(v2, two)).pass) failed.push_back("ccr two-mode");

  std::string which = failed.empty() ? "all 4 instances pass" : "failing:";
  for (const auto& f : failed) which += " " + f;
  report(10, comm <= 1e-12 && failed.empty(), "causal nets",
         "CAR orthogonal commutator " + sci(comm) + " (tol 1e-12), axioms " + which);
}

std::string run(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

void determinism(const char* cli) {
  if (!cli) {
    report(11, false, "determinism", "no CLI path given");
    return;
  }
  const std::vector<std::string> args{
      "car-law --k 7 --trials 50 --seed 3",
      "zeta-reduce --trials 50 --seed 4",
      "sorkin --trials 50 --seed 5",
      "kappa-reduce --k 5 --trials 20 --seed 6",
      "holonomy --mode triangle --seed 7",
      "car-structure --k-max 6 --csv",
  };
  std::size_t same = 0;
  std::string bad;
  for (const auto& a : args) {
    int s1 = 0, s2 = 0;
    const std::string cmd = std::string(cli) + " " + a;
    const std::string o1 = run(cmd, s1), o2 = run(cmd, s2);
    if (s1 == 0 && s2 == 0 && !o1.empty() && o1 == o2)
      ++same;
    else
      bad += " [" + a + "]";
  }
  report(11, same == args.size(), "determinism of repeated CLI runs",
         std::to_string(same) + " of " + std::to_string(args.size()) + " commands byte-identical" + bad);
}

}  // namespace

int main(int argc, char** argv) {
  car_law_and_trace();
  car_structure();
  sorkin();
  zeta();
  kappa();
  particle_grid();
  holonomy_checks();
  ccr();
  nets();
  determinism(argc > 1 ? argv[1] : nullptr);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
