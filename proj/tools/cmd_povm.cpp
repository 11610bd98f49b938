#include <cmath>
#include <numbers>

#include "cli_common.hpp"
#include "sqm/errors.hpp"
#include "sqm/holonomy.hpp"
#include "sqm/povm.hpp"
#include "sqm/suites.hpp"
#include "sqm/timed.hpp"
#include "sqm/zeta.hpp"

namespace cli {

using sqm::ValidationError;

namespace {

struct Family {
  std::size_t dim = 2;
  std::string kind = "fibonacci";
  std::size_t nodes = 2000;
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;

  void add(CLI::App* sub) {
    sub->add_option("--dim", dim, "Hilbert dimension 2j+1")->check(CLI::Range(2, 64))->capture_default_str();
    sub->add_option("--family", kind)->check(CLI::IsMember({"fibonacci", "gauss"}))->capture_default_str();
    sub->add_option("--nodes", nodes, "Fibonacci nodes")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--n-theta", n_theta, "Gauss nodes in cos(theta); 0 picks the exact minimum");
    sub->add_option("--n-phi", n_phi, "azimuthal nodes; 0 picks the exact minimum");
  }
  sqm::CoherentFamily make() const {
    if (kind == "fibonacci") return sqm::CoherentFamily::fibonacci(dim, nodes);
    return sqm::CoherentFamily::gauss_product(dim, n_theta ? n_theta : (dim + 2) / 2, n_phi ? n_phi : dim);
  }
};

/// Signed solid angle of a spherical polygon by a fan from its first vertex.
double polygon_solid_angle(const std::vector<sqm::Vec3>& v) {
  double omega = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) omega += sqm::solid_angle(v[0], v[i], v[i + 1]);
  return omega;
}

}  // namespace

void register_povm(CLI::App& app, Context& ctx) {
  {
    struct Opts {
      std::string mode = "random";
      std::size_t trials = 500;
      std::size_t k_min = 3;
      std::size_t k_max = 5;
      std::size_t dim_max = 16;
      Family fam;
      std::string s0 = "0,0,1.2";
      std::string parts = "1.5708,0,0.5;1.5708,2.0944,0.5;1.5708,4.1888,0.5";
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("sorkin", "Sorkin additivity and density reconstruction");
    add_common(sub, ctx.common);
    o->fam.add(sub);
    sub->add_option("--mode", o->mode, "random: contraction sweep; povm: P(.|S0) on disjoint caps; density: node-level reconstruction")
        ->check(CLI::IsMember({"random", "povm", "density"}))
        ->capture_default_str();
    sub->add_option("--trials", o->trials)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--k-min", o->k_min)->check(CLI::Range(2, 12))->capture_default_str();
    sub->add_option("--k-max", o->k_max)->check(CLI::Range(2, 12))->capture_default_str();
    sub->add_option("--dim-max", o->dim_max)->check(CLI::Range(1, 64))->capture_default_str();
    sub->add_option("--s0", o->s0, "conditioning cap theta,phi,alpha (povm mode)")->capture_default_str();
    sub->add_option("--parts", o->parts, "caps theta,phi,alpha;... (povm: disjoint parts, density: S1;S2;...)")
        ->capture_default_str();
    sub->callback([o, &ctx] {
      const double tol = ctx.common.tolerance(1e-12);
      if (o->mode == "random") {
        if (o->k_min > o->k_max) throw ValidationError("sorkin: --k-min exceeds --k-max");
        const auto trials = sqm::sorkin_suite(o->trials, ctx.common.seed, o->k_min, o->k_max, o->dim_max);
        double worst = 0.0;
        for (std::size_t i = 0; i < trials.size(); ++i) {
          worst = std::max(worst, trials[i].residual);
          Json r;
          r["law"] = "sorkin_additivity";
          r["trial"] = i;
          r["terms"] = trials[i].terms;
          r["dim"] = trials[i].dim;
          r["residual"] = trials[i].residual;
          r["tolerance"] = tol;
          r["pass"] = trials[i].residual <= tol;
          ctx.out.emit(std::move(r));
        }
        std::cerr << "sorkin: " << trials.size() << " configurations, max residual " << worst << "\n";
        return;
      }
      const auto f = o->fam.make();
      const auto parts = parse_caps(o->parts);
      Json r;
      if (o->mode == "povm") {
        const auto s0 = parse_caps(o->s0);
        if (s0.size() != 1) throw ValidationError("sorkin: --s0 takes one cap");
        const double res = sqm::sorkin_povm_residual(f, s0[0], parts);
        r["law"] = "sorkin_additivity_povm";
        r["terms"] = parts.size();
        r["dim"] = f.dim();
        r["nodes"] = f.size();
        r["residual"] = res;
      } else {
        const double rec = sqm::sorkin_reconstruct(f, parts);
        const double direct = sqm::prior_prob_povm(f, parts, 1).probability;
        r["law"] = "sorkin_density_reconstruction";
        r["regions"] = parts.size();
        r["dim"] = f.dim();
        r["nodes"] = f.size();
        r["reconstructed"] = rec;
        r["direct"] = direct;
        r["residual"] = std::abs(rec - direct);
      }
      r["tolerance"] = tol;
      r["pass"] = r["residual"].get<double>() <= tol;
      std::cerr << "sorkin: residual " << r["residual"].get<double>() << "\n";
      ctx.out.emit(std::move(r));
    });
  }
  {
    struct Opts {
      std::size_t trials = 500;
      std::size_t n_max = 8;
      std::size_t dim_max = 16;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("zeta-reduce", "zeta_n from zeta_2 and zeta_3, and the conjugate theory");
    add_common(sub, ctx.common);
    sub->add_option("--trials", o->trials)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--n-max", o->n_max)->check(CLI::Range(3, 16))->capture_default_str();
    sub->add_option("--dim-max", o->dim_max)->check(CLI::Range(2, 64))->capture_default_str();
    sub->callback([o, &ctx] {
      const double tol = ctx.common.tolerance(1e-11);
      const auto trials = sqm::zeta_suite(o->trials, ctx.common.seed, o->n_max, o->dim_max);
      double worst = 0.0;
      for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        worst = std::max(worst, t.residual);
        Json r;
        r["law"] = "zeta_reduction";
        r["trial"] = i;
        r["n"] = t.n;
        r["dim"] = t.dim;
        r["direct"] = cj(t.direct);
        r["reduced"] = cj(t.reduced);
        r["residual"] = t.residual;
        r["tolerance"] = tol;
        r["pass"] = t.residual <= tol;
        ctx.out.emit(std::move(r));
      }
      const auto c = sqm::zeta_conjugate_check(ctx.common.seed);
      const double res = std::max(std::abs(c.plain - c.conjugated), std::abs(c.plain - c.direct));
      Json r;
      r["law"] = "zeta_conjugate_invariance";
      r["plain"] = c.plain;
      r["conjugated"] = c.conjugated;
      r["direct"] = c.direct;
      r["residual"] = res;
      r["tolerance"] = 1e-12;
      r["pass"] = res <= 1e-12;
      ctx.out.emit(std::move(r));
      std::cerr << "zeta-reduce: " << trials.size() << " tuples, max relative residual " << worst
                << "; conjugate difference " << res << "\n";
    });
  }
  {
    struct Opts {
      std::string mode = "triangle";
      std::size_t dim = 3;
      std::size_t n = 64;
      std::size_t trials = 10;
      double eps = 0.3;
      std::size_t n_min = 64;
      std::size_t n_max = 4096;
      std::string vertices = "1,0,0;0,1,0;0,0,1";
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("holonomy", "geodesic triangles, great-circle convergence, spherical phases");
    add_common(sub, ctx.common);
    sub->add_option("--mode", o->mode)->check(CLI::IsMember({"triangle", "circle", "sphere"}))->capture_default_str();
    sub->add_option("--dim", o->dim)->check(CLI::Range(2, 64))->capture_default_str();
    sub->add_option("--n", o->n, "steps per edge")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--trials", o->trials, "random triangles")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--eps", o->eps, "great-circle angle")->check(CLI::Range(1e-6, 1.5))->capture_default_str();
    sub->add_option("--n-min", o->n_min)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--n-max", o->n_max)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--vertices", o->vertices, "Bloch directions x,y,z;... of a closed polygon")->capture_default_str();
    sub->callback([o, &ctx] {
      const auto seed = ctx.common.seed;
      if (o->mode == "triangle") {
        const double tol = ctx.common.tolerance(1e-10);
        double worst = 0.0;
        for (std::size_t i = 0; i < o->trials; ++i) {
          const auto s = seed * 1000003ULL + 3 * i;
          const auto tri = sqm::geodesic_triangle(sqm::random_unit_vector(o->dim, s), sqm::random_unit_vector(o->dim, s + 1),
                                                  sqm::random_unit_vector(o->dim, s + 2), o->n);
          const auto h = sqm::holonomy(tri.loop);
          const double res = std::abs(h - tri.expected);
          worst = std::max(worst, res);
          Json r;
          r["law"] = "geodesic_triangle_holonomy";
          r["trial"] = i;
          r["dim"] = o->dim;
          r["n"] = o->n;
          r["holonomy"] = cj(h);
          r["expected"] = cj(tri.expected);
          r["residual"] = res;
          r["tolerance"] = tol;
          r["pass"] = res <= tol;
          ctx.out.emit(std::move(r));
        }
        std::cerr << "holonomy: " << o->trials << " triangles, max residual " << worst << "\n";
      } else if (o->mode == "circle") {
        if (o->n_min > o->n_max) throw ValidationError("holonomy: --n-min exceeds --n-max");
        const double tol = ctx.common.tolerance(0.1);
        sqm::Vector from = sqm::random_unit_vector(o->dim, seed);
        sqm::Vector w = sqm::random_unit_vector(o->dim, seed + 1);
        w -= from * from.dot(w);
        w.normalize();
        const auto circle = sqm::GreatCircle::between(from, std::cos(o->eps) * from + std::sin(o->eps) * w);
        const auto limit = circle.limit_operator();
        double prev = 0.0;
        for (std::size_t n = o->n_min; n <= o->n_max; n *= 2) {
          const auto samples = circle.samples(n);
          const double err = (sqm::path_operator(samples) - limit).op_norm();
          Json r;
          r["law"] = "great_circle_convergence";
          r["n"] = n;
          r["eps"] = circle.eps;
          r["error"] = err;
          r["n_times_error"] = static_cast<double>(n) * err;
          if (prev > 0.0) {
            const double ratio = prev / err;
            r["ratio"] = ratio;
            r["residual"] = std::abs(ratio - 2.0);
            r["tolerance"] = tol;
            r["pass"] = std::abs(ratio - 2.0) <= tol;
          } else {
            r["residual"] = nullptr;
            r["tolerance"] = tol;
          }
          prev = err;
          ctx.out.emit(std::move(r));
          std::cerr << "holonomy: n = " << n << ", |A(C,n) - A(C)| = " << err << "\n";
        }
      } else {
        const auto verts = parse_directions(o->vertices);
        if (verts.size() < 3) throw ValidationError("holonomy: a polygon needs three vertices");
        const double tol = ctx.common.tolerance(1e-6);
        const auto curve = sqm::Curve::sphere_polygon(o->dim, verts, o->n, true);
        const auto h = sqm::holonomy(curve);
        const double omega = polygon_solid_angle(verts);
        const auto expected = std::polar(1.0, -0.5 * static_cast<double>(o->dim - 1) * omega);
        const double res = std::abs(h - expected);
        Json r;
        r["law"] = "spherical_polygon_phase";
        r["dim"] = o->dim;
        r["n"] = o->n;
        r["solid_angle"] = omega;
        r["holonomy"] = cj(h);
        r["expected"] = cj(expected);
        r["residual"] = res;
        r["tolerance"] = tol;
        r["pass"] = res <= tol;
        ctx.out.emit(std::move(r));
        std::cerr << "holonomy: solid angle " << omega << ", phase residual " << res << "\n";
      }
    });
  }
  {
    struct Opts {
      std::string mode = "curves";
      Family fam;
      std::size_t n = 512;
      std::string path1 = "0,0,1;1,0,0";
      std::string path2 = "0,0,1;0,1,0;1,0,0";
      std::string s_path;
      std::string t_path;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("interfere", "two-path interference for curves or region chains");
    add_common(sub, ctx.common);
    o->fam.add(sub);
    sub->add_option("--mode", o->mode)->check(CLI::IsMember({"curves", "regions"}))->capture_default_str();
    sub->add_option("--n", o->n, "steps per edge")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--path1", o->path1, "Bloch directions x,y,z;...")->capture_default_str();
    sub->add_option("--path2", o->path2, "Bloch directions with the same endpoints")->capture_default_str();
    sub->add_option("--s-path", o->s_path, "caps S1;...;Sn");
    sub->add_option("--t-path", o->t_path, "caps T1;...;Tn");
    sub->callback([o, &ctx] {
      if (o->mode == "regions") {
        const auto f = o->fam.make();
        const auto s = parse_caps(o->s_path);
        const auto t = parse_caps(o->t_path);
        const auto res = sqm::path_interference(f, s, t);
        Json r;
        r["law"] = "region_path_interference";
        r["probability"] = res.probability;
        r["p_s"] = res.p_s;
        r["p_t"] = res.p_t;
        r["cross"] = res.cross;
        r["residual"] = nullptr;
        r["tolerance"] = nullptr;
        ctx.out.emit(std::move(r));
        std::cerr << "interfere: P = " << res.probability << "\n";
        return;
      }
      const auto p1 = parse_directions(o->path1);
      const auto p2 = parse_directions(o->path2);
      if (p1.size() < 2 || p2.size() < 2) throw ValidationError("interfere: paths need two vertices");
      const auto c1 = sqm::Curve::sphere_polygon(o->fam.dim, p1, o->n, false);
      const auto c2 = sqm::Curve::sphere_polygon(o->fam.dim, p2, o->n, false);
      const auto res = sqm::curve_interference(c1, c2);
      std::vector<sqm::Vec3> loop(p1.begin(), p1.end());
      for (std::size_t i = p2.size() - 1; i-- > 1;) loop.push_back(p2[i]);
      const double omega = polygon_solid_angle(loop);
      const double expected =
          0.5 * (1.0 + std::cos(0.5 * static_cast<double>(o->fam.dim - 1) * omega));
      const double tol = ctx.common.tolerance(1e-6);
      Json r;
      r["law"] = "curve_interference";
      r["dim"] = o->fam.dim;
      r["n"] = o->n;
      r["probability"] = res.probability;
      r["rho2"] = res.rho2;
      r["holonomy"] = cj(res.hol);
      r["direct"] = res.direct;
      r["solid_angle"] = omega;
      r["expected"] = expected;
      r["residual"] = std::abs(res.probability - expected);
      r["tolerance"] = tol;
      r["pass"] = std::abs(res.probability - expected) <= tol;
      ctx.out.emit(std::move(r));
      std::cerr << "interfere: P = " << res.probability << ", expected " << expected << "\n";
    });
  }
  {
    struct Opts {
      Family fam;
      std::string regions;
      std::size_t k = 1;
      std::string times;
      double omega = 1.0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("povm-prob", "prior conditional probability for coherent-state POVM regions");
    add_common(sub, ctx.common);
    o->fam.add(sub);
    sub->add_option("--regions", o->regions, "caps theta,phi,alpha;... or 'all'")->required();
    sub->add_option("--k", o->k, "number of conditioning regions")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--times", o->times, "t1,...,tn: evolve each element under H = omega J_z");
    sub->add_option("--omega", o->omega)->capture_default_str();
    sub->callback([o, &ctx] {
      const auto f = o->fam.make();
      const auto regs = parse_caps(o->regions);
      sqm::PovmProb p{};
      if (o->times.empty()) {
        p = sqm::prior_prob_povm(f, regs, o->k);
      } else {
        const auto t = parse_doubles(o->times);
        sqm::Matrix h = sqm::Matrix::Zero(f.dim(), f.dim());
        for (std::size_t a = 0; a < f.dim(); ++a) h(a, a) = o->omega * (0.5 * static_cast<double>(f.dim() - 1) - a);
        p = sqm::timed_prior_prob(f, regs, t, sqm::UnitaryGroup(sqm::Operator(h)), o->k);
      }
      const double tol = ctx.common.tolerance(1e-4);
      const double comp = f.completeness_residual();
      Json r;
      r["law"] = "povm_prior_probability";
      r["dim"] = f.dim();
      r["family"] = o->fam.kind;
      r["nodes"] = f.size();
      r["k"] = o->k;
      r["probability"] = p.probability;
      r["numerator"] = p.numerator;
      r["denominator"] = p.denominator;
      r["residual"] = comp;
      r["tolerance"] = tol;
      r["pass"] = comp <= tol;
      ctx.out.emit(std::move(r));
      std::cerr << "povm-prob: P = " << p.probability << ", completeness residual " << comp << "\n";
    });
  }
}

}  // namespace cli
