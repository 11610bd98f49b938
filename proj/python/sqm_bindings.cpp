#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqm/car.hpp"
#include "sqm/ccr.hpp"
#include "sqm/coherent.hpp"
#include "sqm/errors.hpp"
#include "sqm/grid_oracle.hpp"
#include "sqm/holonomy.hpp"
#include "sqm/povm.hpp"
#include "sqm/pvm_prob.hpp"
#include "sqm/suites.hpp"
#include "sqm/zeta.hpp"

namespace py = pybind11;
using namespace sqm;

namespace {

using Bounds = std::vector<std::pair<double, double>>;

std::vector<Operator> ops(const std::vector<Matrix>& ms) {
  std::vector<Operator> out;
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

IntervalSet intervals(const Bounds& b) {
  std::vector<IntervalSet::Interval> iv;
  for (const auto& [lo, hi] : b) iv.push_back({lo, hi});
  return IntervalSet(std::move(iv));
}

std::vector<IntervalSet> regions(const std::vector<Bounds>& r) {
  std::vector<IntervalSet> out;
  for (const auto& b : r) out.push_back(intervals(b));
  return out;
}

/// (theta, phi, alpha) caps.
std::vector<Region> caps(const std::vector<std::array<double, 3>>& c) {
  std::vector<Region> out;
  for (const auto& [t, p, a] : c) out.push_back(Region::cap(direction(t, p), a));
  return out;
}

Propagator kernel(const std::string& kind, double mass, double hbar, double omega) {
  if (kind == "free") return Propagator::free(mass, hbar);
  if (kind == "oscillator") return Propagator::oscillator(mass, omega, hbar);
  throw ValidationError("kind must be 'free' or 'oscillator'");
}

std::vector<FieldFactor> factors(const std::vector<std::pair<RealVector, Bounds>>& f) {
  std::vector<FieldFactor> out;
  for (const auto& [v, b] : f) out.push_back({v, intervals(b)});
  return out;
}

py::dict law(const LawCheck& c) {
  py::dict d;
  d["trace_value"] = c.trace_value;
  d["closed_form"] = c.closed_form;
  d["residual"] = c.residual;
  return d;
}

QuadratureSpec quad(double abs_tol) {
  QuadratureSpec q;
  q.abs_tol = abs_tol;
  return q;
}

py::dict prob_dict(const ProbResult& p) {
  py::dict d;
  d["probability"] = p.probability;
  d["numerator"] = p.numerator;
  d["denominator"] = p.denominator;
  d["depth"] = p.depth;
  d["change"] = p.change;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sqm, m) {
  m.doc() = "Trace-based conditional probabilities for PVMs, coherent-state POVMs, CCR and CAR algebras.";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // core_linalg
  m.def("trace_product", [](const std::vector<Matrix>& f) { return trace_product(ops(f)); }, py::arg("factors"));
  m.def(
      "hermitian_spectrum",
      [](const Matrix& a) {
        const auto s = hermitian_spectrum(Operator(a));
        return std::make_pair(s.eigenvalues, s.eigenvectors.matrix());
      },
      py::arg("a"));
  m.def("random_unit_vector", &random_unit_vector, py::arg("dim"), py::arg("seed"));
  m.def(
      "random_rank_one", [](std::size_t dim, std::uint64_t seed) { return random_rank_one(dim, seed).to_operator().matrix(); },
      py::arg("dim"), py::arg("seed"));

  // particle_pvm
  m.def("propagator_free", &propagator_free, py::arg("x"), py::arg("t"), py::arg("xp"), py::arg("tp"),
        py::arg("mass") = 1.0, py::arg("hbar") = 1.0);
  m.def("propagator_oscillator", &propagator_oscillator, py::arg("x"), py::arg("t"), py::arg("xp"), py::arg("tp"),
        py::arg("mass") = 1.0, py::arg("omega") = 1.0, py::arg("hbar") = 1.0);
  m.def(
      "prior_prob_pvm",
      [](const std::vector<Bounds>& r, const std::vector<double>& t, std::size_t k, const std::string& kind, double mass,
         double hbar, double omega, double abs_tol) {
        return prob_dict(prior_prob_pvm(regions(r), t, k, kernel(kind, mass, hbar, omega), quad(abs_tol)));
      },
      py::arg("regions"), py::arg("times"), py::arg("k"), py::arg("kind") = "free", py::arg("mass") = 1.0,
      py::arg("hbar") = 1.0, py::arg("omega") = 1.0, py::arg("abs_tol") = 1e-6);
  m.def(
      "doubleslit_prob",
      [](const Bounds& x1, const Bounds& x2, const Bounds& x3, const std::vector<double>& t, double mass, double hbar) {
        if (t.size() != 3) throw ValidationError("doubleslit_prob: three times required");
        return prob_dict(doubleslit_prob(intervals(x1), intervals(x2), intervals(x3), t[0], t[1], t[2], mass, hbar));
      },
      py::arg("x1"), py::arg("x2"), py::arg("x3"), py::arg("times"), py::arg("mass") = 1.0, py::arg("hbar") = 1.0);
  m.def(
      "grid_trace",
      [](const std::vector<Bounds>& r, const std::vector<double>& t, double L, std::size_t G) {
        GridSpec g;
        g.L = L;
        g.G = G;
        return GridOracle(g, Propagator::free()).trace(regions(r), t);
      },
      py::arg("regions"), py::arg("times"), py::arg("L") = 40.0, py::arg("G") = 2048);
  m.def(
      "kappa_suite",
      [](const std::string& kind, std::size_t k, std::size_t trials, std::uint64_t seed) {
        std::vector<double> res;
        for (const auto& t : kappa_suite(kernel(kind, 1.0, 1.0, 1.0), k, trials, seed)) res.push_back(t.residual);
        return res;
      },
      py::arg("kind"), py::arg("k"), py::arg("trials"), py::arg("seed") = 1);

  // povm_geometry
  py::class_<CoherentFamily>(m, "CoherentFamily")
      .def_static("fibonacci", &CoherentFamily::fibonacci, py::arg("dim"), py::arg("n"))
      .def_static("gauss_product", &CoherentFamily::gauss_product, py::arg("dim"), py::arg("n_theta"),
                  py::arg("n_phi"), py::arg("phi_offset") = 0.0)
      .def_property_readonly("dim", &CoherentFamily::dim)
      .def_property_readonly("size", &CoherentFamily::size)
      .def("completeness_residual", &CoherentFamily::completeness_residual)
      .def(
          "element",
          [](const CoherentFamily& f, const std::array<double, 3>& cap) {
            return povm_element(f, caps({cap})[0]).matrix();
          },
          py::arg("cap"));
  m.def(
      "prior_prob_povm",
      [](const CoherentFamily& f, const std::vector<std::array<double, 3>>& c, std::size_t k) {
        return prior_prob_povm(f, caps(c), k).probability;
      },
      py::arg("family"), py::arg("caps"), py::arg("k"));
  m.def(
      "naimark_dilation",
      [](const std::vector<Matrix>& elems) {
        const auto d = naimark_dilation(ops(elems));
        std::vector<Matrix> p;
        for (const auto& e : d.projections) p.push_back(e.matrix());
        return py::make_tuple(d.isometry, p, d.compression_residual);
      },
      py::arg("elements"));
  m.def(
      "sorkin_residual", [](const std::vector<Matrix>& a, const Matrix& rho) { return sorkin_residual(ops(a), Operator(rho)); },
      py::arg("a"), py::arg("rho"));
  m.def(
      "sorkin_suite",
      [](std::size_t trials, std::uint64_t seed) {
        std::vector<double> res;
        for (const auto& t : sorkin_suite(trials, seed)) res.push_back(t.residual);
        return res;
      },
      py::arg("trials"), py::arg("seed") = 1);
  m.def("zeta_n", [](const std::vector<Vector>& pts) { return zeta_n(pts); }, py::arg("vectors"));
  m.def(
      "zeta_reduce", [](const std::vector<Vector>& pts) { return zeta_reduce(zeta2_direct(), zeta3_direct(), pts); },
      py::arg("vectors"));
  m.def(
      "holonomy",
      [](std::vector<Vector> samples) { return holonomy(Curve::from_vectors(std::move(samples), true)); },
      py::arg("samples"), "Samples of a closed curve, the last on the ray of the first.");
  m.def(
      "polygon_holonomy",
      [](std::size_t dim, const std::vector<Vec3>& vertices, std::size_t n) {
        return holonomy(Curve::sphere_polygon(dim, vertices, n, true));
      },
      py::arg("dim"), py::arg("vertices"), py::arg("n"));
  m.def("solid_angle", &solid_angle);

  // car_field
  m.def(
      "clifford_generators",
      [](std::size_t k, bool irreducible) {
        const auto rep = irreducible ? CliffordRep::irreducible(k) : CliffordRep::faithful(k);
        std::vector<Matrix> g;
        for (std::size_t i = 0; i < rep.k(); ++i) g.push_back(rep.generator(i).matrix());
        return g;
      },
      py::arg("k"), py::arg("irreducible") = false);
  m.def(
      "car_prob",
      [](const RealVector& u, const RealVector& v, const RealVector& u2, const RealVector& v2) {
        return law(car_prob(CliffordRep::irreducible(static_cast<std::size_t>(u.size())), OrthoPair(u, v), OrthoPair(u2, v2)));
      },
      py::arg("u"), py::arg("v"), py::arg("u2"), py::arg("v2"));
  m.def(
      "trace_xx",
      [](const RealVector& u, const RealVector& v, const RealVector& u2, const RealVector& v2) {
        return law(trace_xx(CliffordRep::irreducible(static_cast<std::size_t>(u.size())), OrthoPair(u, v), OrthoPair(u2, v2)));
      },
      py::arg("u"), py::arg("v"), py::arg("u2"), py::arg("v2"));
  m.def(
      "car_suite",
      [](std::size_t k, std::size_t trials, std::uint64_t seed) {
        std::vector<std::pair<double, double>> res;
        for (const auto& t : car_suite(k, trials, seed)) res.emplace_back(t.law.residual, t.trace.residual);
        return res;
      },
      py::arg("k"), py::arg("trials"), py::arg("seed") = 1);
  m.def(
      "structure_check",
      [](std::size_t k, bool even) {
        const auto s = structure_check(k, even);
        std::vector<std::size_t> blocks;
        for (const auto& b : s.blocks) blocks.push_back(b.size);
        py::dict d;
        d["algebra_dim"] = s.algebra_dim;
        d["center_dim"] = s.center_dim;
        d["blocks"] = blocks;
        d["expected_dim"] = s.expected_dim;
        d["expected_blocks"] = s.expected_blocks;
        d["matches"] = s.matches;
        return d;
      },
      py::arg("k"), py::arg("even_part") = false);

  // ccr_field
  py::class_<WeylGridRep>(m, "WeylGridRep")
      .def(py::init<double, std::size_t, double>(), py::arg("half_width"), py::arg("points"), py::arg("hbar") = 1.0)
      .def_property_readonly("q", [](const WeylGridRep& r) { return r.q().matrix(); })
      .def_property_readonly("p", [](const WeylGridRep& r) { return r.p().matrix(); })
      .def("weyl", [](const WeylGridRep& r, const RealVector& v) { return r.weyl(v).matrix(); }, py::arg("v"))
      .def(
          "field_pvm", [](const WeylGridRep& r, const RealVector& v, const Bounds& s) { return r.field_pvm(v, intervals(s)).matrix(); },
          py::arg("v"), py::arg("s"))
      .def(
          "window",
          [](const WeylGridRep& r, const RealVector& v) {
            const auto w = r.window(v);
            return std::make_pair(w.lo, w.hi);
          },
          py::arg("v"));
  m.def(
      "weyl_relation_residual",
      [](const WeylGridRep& r, const RealVector& v, const RealVector& u, std::size_t modes) {
        return weyl_relation_residual(r, v, u, modes);
      },
      py::arg("rep"), py::arg("v"), py::arg("u"), py::arg("modes") = 20);
  m.def(
      "trace_aa",
      [](const WeylGridRep& r, const std::vector<std::pair<RealVector, Bounds>>& a) { return trace_aa(r, factors(a)); },
      py::arg("rep"), py::arg("factors"));
  m.def(
      "prob_z",
      [](const WeylGridRep& r, const std::vector<std::pair<RealVector, Bounds>>& a,
         const std::vector<std::pair<RealVector, Bounds>>& b) { return prob_z(r, factors(a), factors(b)).probability; },
      py::arg("rep"), py::arg("a"), py::arg("b"));
}
