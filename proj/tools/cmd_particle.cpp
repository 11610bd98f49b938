#include <cmath>
#include <limits>

#include "cli_common.hpp"
#include "sqm/errors.hpp"
#include "sqm/grid_oracle.hpp"
#include "sqm/pvm_prob.hpp"
#include "sqm/suites.hpp"

namespace cli {

using sqm::ValidationError;

namespace {

struct Physics {
  std::string kind = "free";
  double mass = 1.0;
  double hbar = 1.0;
  double omega = 1.0;

  void add(CLI::App* sub) {
    sub->add_option("--kind", kind, "propagator kind")->check(CLI::IsMember({"free", "oscillator"}))->capture_default_str();
    sub->add_option("--mass", mass)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--hbar", hbar)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--omega", omega, "oscillator frequency")->check(CLI::PositiveNumber)->capture_default_str();
  }
  sqm::Propagator propagator() const {
    return kind == "free" ? sqm::Propagator::free(mass, hbar) : sqm::Propagator::oscillator(mass, omega, hbar);
  }
};

struct Quad {
  sqm::QuadratureSpec q;
  std::size_t budget = 4096;

  void add(CLI::App* sub) {
    sub->add_option("--abs-tol", q.abs_tol, "quadrature refinement tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--order", q.order, "Gauss–Legendre points per panel")->check(CLI::IsMember({8, 16, 20}))->capture_default_str();
    sub->add_option("--max-depth", q.max_depth)->check(CLI::Range(0, 30))->capture_default_str();
    sub->add_option("--budget", budget, "nodes per integration variable")->check(CLI::PositiveNumber)->capture_default_str();
  }
  sqm::QuadratureSpec spec() const {
    auto s = q;
    s.node_budget = budget;
    return s;
  }
};

Json bounds(const sqm::IntervalSet& s) {
  Json a = Json::array();
  for (const auto& iv : s.intervals()) a.push_back(Json::array({iv.lo, iv.hi}));
  return a;
}

Json regions_json(const std::vector<sqm::IntervalSet>& r) {
  Json a = Json::array();
  for (const auto& s : r) a.push_back(bounds(s));
  return a;
}

sqm::GridSpec grid_spec(double L, std::size_t G, const std::string& weighting, const Physics& ph) {
  sqm::GridSpec g;
  g.G = G;
  g.L = L > 0.0 ? L
                : (ph.kind == "free" ? 40.0 : sqm::balanced_oscillator_half_width(G, ph.mass, ph.omega, ph.hbar));
  g.weighting = weighting == "sharp" ? sqm::Weighting::Sharp : sqm::Weighting::CellOverlap;
  return g;
}

void add_grid(CLI::App* sub, double& L, std::size_t& G, std::string& weighting) {
  sub->add_option("--L", L, "grid half-width (default 40, balanced box for the oscillator)");
  sub->add_option("--G", G, "grid cells, power of two")->capture_default_str();
  sub->add_option("--weighting", weighting)->check(CLI::IsMember({"overlap", "sharp"}))->capture_default_str();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min()); }

}  // namespace

void register_particle(CLI::App& app, Context& ctx) {
  {
    struct Opts {
      Physics ph;
      std::size_t k = 4;
      std::size_t trials = 100;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("kappa-reduce", "kappa_{2k-2} from kappa_2 and kappa_4 against the direct cyclic product");
    add_common(sub, ctx.common);
    o->ph.add(sub);
    sub->add_option("--k", o->k, "number of regions")->check(CLI::Range(4, 12))->capture_default_str();
    sub->add_option("--trials", o->trials)->check(CLI::PositiveNumber)->capture_default_str();
    sub->callback([o, &ctx] {
      const double tol = ctx.common.tolerance(1e-10);
      double worst = 0.0;
      const auto trials = sqm::kappa_suite(o->ph.propagator(), o->k, o->trials, ctx.common.seed);
      for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        worst = std::max(worst, t.residual);
        Json r;
        r["law"] = "kappa_reduction";
        r["kind"] = o->ph.kind;
        r["k"] = t.k;
        r["trial"] = i;
        r["x"] = t.x;
        r["t"] = t.t;
        r["direct"] = cj(t.direct);
        r["reduced"] = cj(t.reduced);
        r["residual"] = t.residual;
        r["tolerance"] = tol;
        r["pass"] = t.residual <= tol;
        ctx.out.emit(std::move(r));
      }
      std::cerr << "kappa-reduce: " << trials.size() << " trials, k = " << o->k << ", max relative residual " << worst
                << "\n";
    });
  }
  {
    struct Opts {
      Physics ph;
      Quad q;
      std::string x1 = "-1:1";
      std::string slits = "-1.1:-0.9,0.9:1.1";
      std::string screen = "-10000:10000";
      std::size_t bins = 1;
      std::string times = "0,1,2";
      bool grid = false;
      double L = 0.0;
      std::size_t G = 2048;
      std::string weighting = "overlap";
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("doubleslit", "P(X3 | X1, X2) for a free particle");
    add_common(sub, ctx.common);
    o->ph.add(sub);
    o->q.add(sub);
    sub->add_option("--x1", o->x1, "source region lo:hi,...")->capture_default_str();
    sub->add_option("--slits", o->slits, "slit region lo:hi,...")->capture_default_str();
    sub->add_option("--screen", o->screen, "screen interval lo:hi")->capture_default_str();
    sub->add_option("--bins", o->bins, "equal screen bins")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--times", o->times, "t1,t2,t3")->capture_default_str();
    sub->add_flag("--grid", o->grid, "compare each bin with the lattice oracle");
    add_grid(sub, o->L, o->G, o->weighting);
    sub->callback([o, &ctx] {
      if (o->ph.kind != "free") throw ValidationError("doubleslit: only the free kind has the closed-form kernels");
      const auto t = parse_doubles(o->times);
      if (t.size() != 3) throw ValidationError("doubleslit: --times needs t1,t2,t3");
      const auto x1 = parse_intervals(o->x1);
      const auto x2 = parse_intervals(o->slits);
      const auto screen = parse_intervals(o->screen);
      if (screen.intervals().size() != 1 && o->bins > 1)
        throw ValidationError("doubleslit: binning needs a single screen interval");
      std::unique_ptr<sqm::GridOracle> grid;
      if (o->grid) grid = std::make_unique<sqm::GridOracle>(grid_spec(o->L, o->G, o->weighting, o->ph), o->ph.propagator());
      const double tol = ctx.common.tolerance(0.02);
      double total = 0.0;
      for (std::size_t b = 0; b < o->bins; ++b) {
        sqm::IntervalSet x3 = screen;
        if (o->bins > 1) {
          const double lo = screen.lower(), w = (screen.upper() - lo) / static_cast<double>(o->bins);
          x3 = sqm::IntervalSet::single(lo + w * static_cast<double>(b), b + 1 == o->bins ? screen.upper() : lo + w * static_cast<double>(b + 1));
        }
        const auto p = sqm::doubleslit_prob(x1, x2, x3, t[0], t[1], t[2], o->ph.mass, o->ph.hbar, o->q.spec());
        total += p.probability;
        Json r;
        r["law"] = "doubleslit_probability";
        r["bin"] = b;
        r["screen"] = bounds(x3);
        r["probability"] = p.probability;
        r["raw"] = p.raw;
        r["numerator"] = cj(p.numerator);
        r["denominator"] = cj(p.denominator);
        r["depth"] = p.depth;
        r["change"] = p.change;
        if (grid) {
          const std::vector<sqm::IntervalSet> regs{x1, x2, x3};
          const double g = grid->prob(regs, t, 2);
          r["grid_probability"] = g;
          r["residual"] = rel(p.probability, g);
          r["tolerance"] = tol;
          r["pass"] = rel(p.probability, g) <= tol;
        } else {
          r["residual"] = p.change;
          r["tolerance"] = o->q.q.abs_tol;
          r["pass"] = p.change <= o->q.q.abs_tol;
        }
        ctx.out.emit(std::move(r));
      }
      std::cerr << "doubleslit: " << o->bins << " bins, summed probability " << total << "\n";
    });
  }
  {
    struct Opts {
      Physics ph;
      Quad q;
      std::string regions;
      std::string times;
      std::size_t k = 2;
      std::string mode = "propagator";
      double galilei = std::numeric_limits<double>::quiet_NaN();
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("pvm-prob", "prior conditional probability for sharp position regions");
    add_common(sub, ctx.common);
    o->ph.add(sub);
    o->q.add(sub);
    sub->add_option("--regions", o->regions, "X1;X2;... each lo:hi,...")->required();
    sub->add_option("--times", o->times, "t1,...,tn")->required();
    sub->add_option("--k", o->k, "number of conditioning regions")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--mode", o->mode)->check(CLI::IsMember({"propagator", "reduced"}))->capture_default_str();
    sub->add_option("--galilei", o->galilei, "also evaluate the configuration boosted by this velocity");
    sub->callback([o, &ctx] {
      const auto regs = parse_regions(o->regions);
      const auto t = parse_doubles(o->times);
      const auto kernel = o->ph.propagator();
      const auto mode = o->mode == "reduced" ? sqm::TraceMode::Reduced : sqm::TraceMode::Propagator;
      const auto p = sqm::prior_prob_pvm(regs, t, o->k, kernel, o->q.spec(), mode);
      Json r;
      r["law"] = "pvm_prior_probability";
      r["kind"] = o->ph.kind;
      r["k"] = o->k;
      r["regions"] = regions_json(regs);
      r["times"] = t;
      r["probability"] = p.probability;
      r["raw"] = p.raw;
      r["clamped"] = p.clamped;
      r["numerator"] = cj(p.numerator);
      r["denominator"] = cj(p.denominator);
      r["depth"] = p.depth;
      r["max_nodes"] = p.max_nodes;
      r["residual"] = p.change;
      r["tolerance"] = o->q.q.abs_tol;
      r["pass"] = p.change <= o->q.q.abs_tol;
      ctx.out.emit(std::move(r));
      std::cerr << "pvm-prob: P = " << p.probability << " (depth " << p.depth << ")\n";
      if (std::isnan(o->galilei)) return;
      if (o->ph.kind != "free") throw ValidationError("pvm-prob: Galilei invariance holds for the free kind only");
      const auto boosted = sqm::galilei_boost(regs, t, o->galilei);
      const auto pb = sqm::prior_prob_pvm(boosted, t, o->k, kernel, o->q.spec(), mode);
      const double tol = ctx.common.tolerance(1e-3);
      const double res = std::abs(pb.probability - p.probability);
      Json g;
      g["law"] = "galilei_invariance";
      g["velocity"] = o->galilei;
      g["probability"] = p.probability;
      g["boosted_probability"] = pb.probability;
      g["residual"] = res;
      g["tolerance"] = tol;
      g["pass"] = res <= tol;
      ctx.out.emit(std::move(g));
      std::cerr << "pvm-prob: boosted P = " << pb.probability << "\n";
    });
  }
  {
    struct Opts {
      Physics ph;
      Quad q;
      std::string regions;
      std::string times;
      std::size_t k = 0;
      double L = 0.0;
      std::size_t G = 2048;
      std::string weighting = "overlap";
      bool compare = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("grid-oracle", "lattice traces and probabilities, optionally against quadrature");
    add_common(sub, ctx.common);
    o->ph.add(sub);
    o->q.add(sub);
    sub->add_option("--regions", o->regions, "X1;X2;... each lo:hi,...")->required();
    sub->add_option("--times", o->times, "t1,...,tn")->required();
    sub->add_option("--k", o->k, "conditioning regions; 0 emits the trace Tr E1...En")->capture_default_str();
    add_grid(sub, o->L, o->G, o->weighting);
    sub->add_flag("--compare", o->compare, "compare with the propagator quadrature");
    sub->callback([o, &ctx] {
      const auto regs = parse_regions(o->regions);
      const auto t = parse_doubles(o->times);
      const auto kernel = o->ph.propagator();
      const auto spec = grid_spec(o->L, o->G, o->weighting, o->ph);
      const sqm::GridOracle grid(spec, kernel);
      Json r;
      r["kind"] = o->ph.kind;
      r["regions"] = regions_json(regs);
      r["times"] = t;
      r["L"] = spec.L;
      r["G"] = spec.G;
      if (o->k == 0) {
        const auto g = grid.trace(regs, t);
        r["law"] = "grid_trace";
        r["grid_trace"] = cj(g);
        if (o->compare) {
          if (regs.size() != 2) throw ValidationError("grid-oracle: trace comparison needs exactly two regions");
          const auto qv = sqm::folded_trace(regs, t, kernel, o->q.spec()).value;
          const double tol = ctx.common.tolerance(0.01);
          const double res = std::abs(qv - g) / std::abs(g);
          r["quadrature_trace"] = cj(qv);
          r["residual"] = res;
          r["tolerance"] = tol;
          r["pass"] = res <= tol;
        }
        std::cerr << "grid-oracle: trace " << g << "\n";
      } else {
        const double g = grid.prob(regs, t, o->k);
        r["law"] = "grid_prior_probability";
        r["k"] = o->k;
        r["grid_probability"] = g;
        if (o->compare) {
          const auto p = sqm::prior_prob_pvm(regs, t, o->k, kernel, o->q.spec());
          const double tol = ctx.common.tolerance(0.02);
          r["quadrature_probability"] = p.probability;
          r["residual"] = rel(p.probability, g);
          r["tolerance"] = tol;
          r["pass"] = rel(p.probability, g) <= tol;
        }
        std::cerr << "grid-oracle: P = " << g << "\n";
      }
      if (!r.contains("residual")) {
        r["residual"] = nullptr;
        r["tolerance"] = nullptr;
      }
      ctx.out.emit(std::move(r));
    });
  }
}

}  // namespace cli
