#include "sqm/causal_net.hpp"

#include "sqm/errors.hpp"

#include <cmath>

namespace sqm {

OrthogonalityReport check_orthogonality_axioms(const ScopeSample& s) {
  if (s.size() == 0) throw ValidationError("check_orthogonality_axioms: empty sample");
  const std::size_t n = s.size();
  OrthogonalityReport r;
  auto make = [](const char* name, bool existential) {
    AxiomReport a;
    a.axiom = name;
    a.existential = existential;
    return a;
  };
  AxiomReport refl = make("order_reflexive", false), trans = make("order_transitive", false),
              sym = make("perp_symmetric", false), ax1 = make("axiom1_exists_orthogonal", true),
              ax2 = make("axiom2_hereditary", false), ax3 = make("axiom3_upper_bound", true);
  for (std::size_t a = 0; a < n; ++a) {
    if (!s.leq(a, a)) refl.witnesses.push_back({a});
    bool found = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (s.perp(a, b) != s.perp(b, a)) sym.witnesses.push_back({a, b});
      found = found || s.perp(a, b);
    }
    if (!found) ax1.witnesses.push_back({a});
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (s.leq(a, b) && s.leq(b, c) && !s.leq(a, c)) trans.witnesses.push_back({a, b, c});
        if (s.leq(a, b) && s.perp(b, c) && !s.perp(a, c)) ax2.witnesses.push_back({a, b, c});
        if (s.perp(a, b) && s.perp(a, c)) {
          bool found = false;
          for (std::size_t d = 0; d < n && !found; ++d) found = s.perp(a, d) && s.leq(b, d) && s.leq(c, d);
          if (!found) ax3.witnesses.push_back({a, b, c});
        }
      }
  for (auto* ax : {&refl, &trans, &sym, &ax1, &ax2, &ax3}) {
    ax->pass = ax->witnesses.empty();
    if (ax->existential)
      r.witnesses_complete = r.witnesses_complete && ax->pass;
    else
      r.pass = r.pass && ax->pass;
    r.axioms.push_back(std::move(*ax));
  }
  return r;
}

double max_commutator(const LocalAlgebraHandle& a, const LocalAlgebraHandle& b) {
  double r = 0.0;
  for (const auto& x : a.generators)
    for (const auto& y : b.generators) {
      if (x.dim() != y.dim()) throw ValidationError("max_commutator: dimension mismatch");
      r = std::max(r, commutator(x, y).hs_norm());
    }
  return r;
}

double span_residual(const std::vector<Operator>& generators, const Operator& x, std::size_t len,
                     std::size_t* span_dim) {
  const std::size_t d = x.dim();
  for (const auto& g : generators)
    if (g.dim() != d) throw ValidationError("span_residual: dimension mismatch");
  const auto dd = static_cast<Eigen::Index>(d * d);
  std::vector<Vector> basis;
  auto add = [&](const Matrix& w) {
    Vector v = Eigen::Map<const Vector>(w.data(), dd);
    const double n0 = v.norm();
    if (n0 == 0.0) return;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    if (v.norm() > 1e-10 * n0) basis.push_back(v / v.norm());
  };
  // Words of length l span S_{l-1} + S_{l-1} G, and only elements new at level l-1 can leave S_{l-1}.
  std::vector<Matrix> fresh{Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))};
  add(fresh.front());
  for (std::size_t l = 1; l <= len && !fresh.empty() && static_cast<Eigen::Index>(basis.size()) < dd; ++l) {
    std::vector<Matrix> next;
    for (const auto& w : fresh)
      for (const auto& g : generators) {
        const std::size_t before = basis.size();
        add(w * g.matrix());
        if (basis.size() > before) next.push_back(Eigen::Map<const Matrix>(basis.back().data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
      }
    fresh = std::move(next);
  }
  if (span_dim) *span_dim = basis.size();
  Vector v = Eigen::Map<const Vector>(x.matrix().data(), dd);
  const double n0 = v.norm();
  if (n0 == 0.0) return 0.0;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v -= b.dot(v) * b;
  return v.norm() / n0;
}

NetReport check_causal_net(const std::vector<LocalAlgebraHandle>& handles, const std::vector<IndexPair>& inclusions,
                           const std::vector<IndexPair>& orthogonal, const NetCheckOptions& opt) {
  if (handles.empty()) throw ValidationError("check_causal_net: no handles");
  std::size_t d = 0;
  for (const auto& h : handles)
    for (const auto& g : h.generators) {
      if (d == 0) d = g.dim();
      if (g.dim() != d) throw ValidationError("check_causal_net: handles must share one ambient dimension");
    }
  auto check_index = [&handles](const IndexPair& p) {
    if (p.first >= handles.size() || p.second >= handles.size())
      throw ValidationError("check_causal_net: pair index out of range");
  };
  NetReport r;
  // Every span above contains the identity word, so the local algebras share I by construction.
  r.common_identity = d > 0;
  for (const auto& p : inclusions) {
    check_index(p);
    InclusionEntry e{p.first, p.second, 0.0, 0, true};
    for (const auto& g : handles[p.first].generators) {
      std::size_t sd = 0;
      e.residual = std::max(e.residual, span_residual(handles[p.second].generators, g, opt.word_length, &sd));
      e.span_dim = sd;
    }
    e.pass = e.residual <= opt.membership_tol;
    r.pass = r.pass && e.pass;
    r.inclusions.push_back(e);
  }
  for (const auto& p : orthogonal) {
    check_index(p);
    CommutationEntry e{p.first, p.second, max_commutator(handles[p.first], handles[p.second]), true};
    e.pass = e.residual <= opt.commutator_tol;
    r.pass = r.pass && e.pass;
    r.commutations.push_back(e);
  }
  r.pass = r.pass && r.common_identity;
  return r;
}

}  // namespace sqm
