// Twisting cochains (nonlinear and n-th order maps of algebroids), the
// Maurer-Cartan check, and composition through the bar coalgebra.
//
// A cochain tau : Sym^{1..n}(g[1]) -> h[1] is stored through its values on
// monomials, desuspended into the carrier of h. It induces a coalgebra map
// F_tau : bar(g) -> bar(h); the Maurer-Cartan equation holds exactly when
// F_tau is a chain map, and the reported residual is the weight-one
// corestriction of the chain defect, which expands to the familiar
// d tau + sum_j 1/j! [tau, ..., tau]_j.
#ifndef ALGD_HOMOTOPY_HPP
#define ALGD_HOMOTOPY_HPP

#include "sym.hpp"

namespace algd {

struct TwistingCochain {
  int order = 1;
  std::map<Mono, Vec> comp;  // monomial in Sym(g[1]) -> h-carrier vector

  Vec eval(const Mono& m) const
  {
    auto it = comp.find(m);
    return it == comp.end() ? Vec{} : it->second;
  }

  Vec eval_symvec(const SymVec& v, bool* overflow = nullptr) const
  {
    Vec out;
    for (const auto& [m, c] : v) {
      if (static_cast<int>(m.size()) > order) {
        if (overflow) *overflow = true;
        continue;
      }
      vec_add(out, eval(m), c);
    }
    return out;
  }
};

/// A strict morphism viewed as a cochain concentrated in Sym^1.
inline TwistingCochain cochain_of_morphism(const Algebroid& g, const Algebroid& h,
                                           const AlgebroidMorphism& f, int order = 1)
{
  TwistingCochain tau;
  tau.order = order;
  for (int id = 0; id < g.dim(); ++id) {
    int d = g.deg_of(id);
    Vec local = f.map.apply(d, unit_vec(g.fb.local_index(id)));
    Vec flat;
    for (const auto& [r, c] : local) flat[h.fb.id(d, r)] = c;
    if (!flat.empty()) tau.comp[{id}] = std::move(flat);
  }
  return tau;
}

inline TwistingCochain identity_cochain(const Algebroid& g, int order = 1)
{
  TwistingCochain tau;
  tau.order = order;
  for (int id = 0; id < g.dim(); ++id) tau.comp[{id}] = unit_vec(id);
  return tau;
}

/// F_tau on a monomial: sum over partitions of products of tau-values.
inline SymVec cochain_coalgebra_map(const Algebroid& g, const Algebroid& h,
                                    const TwistingCochain& tau, const SymSpace& sg,
                                    const SymSpace& sh, const Mono& m)
{
  return coalgebra_map_apply(
      sg, sh, [&](const Mono& block) { return tau.eval(block); }, m, tau.order);
}

struct McReport {
  CheckReport checks;
  // residual per monomial (only nonzero ones), as h-carrier vectors
  std::vector<std::pair<Mono, Vec>> residuals;
  bool pass() const { return checks.pass() && residuals.empty(); }
};

/// Maurer-Cartan residual on one monomial: the weight-1 corestriction of
/// D_h F_tau - F_tau D_g.
inline Vec mc_residual(const Algebroid& g, const Algebroid& h, const TwistingCochain& tau,
                       const SymSpace& sg, const SymSpace& sh, const Mono& m)
{
  Vec out;
  SymVec f = cochain_coalgebra_map(g, h, tau, sg, sh, m);
  for (const auto& [hm, c] : f) {
    SymVec dh = bar_diff(h, sh, hm);
    for (const auto& [hm2, c2] : dh)
      if (hm2.size() == 1) {
        Vec t = unit_vec(hm2[0]);
        vec_add(out, t, c * c2);
      }
  }
  SymVec dg = bar_diff(g, sg, m);
  Vec t = tau.eval_symvec(dg);
  vec_add(out, t, Scalar(-1));
  return out;
}

/// Full Maurer-Cartan check: the MC equation on every in-window basis
/// monomial of Sym^{<= order}(g[1]), plus the anchor condition (i) and the
/// A-multilinearity condition (ii).
inline McReport mc_check(const Algebroid& g, const Algebroid& h, const TwistingCochain& tau)
{
  McReport rep;
  SymSpace sg = bar_space(g), sh = bar_space(h);

  // degree bookkeeping of the stored values
  {
    bool ok = true;
    std::string wit;
    for (const auto& [m, v] : tau.comp) {
      int want = sg.mono_degree(m) - 1;
      for (const auto& [hid, c] : v) {
        (void)c;
        if (h.deg_of(hid) != want) {
          ok = false;
          wit = "component at weight " + std::to_string(m.size()) +
                " has a value of wrong degree";
          break;
        }
      }
      if (static_cast<int>(m.size()) > tau.order) {
        ok = false;
        wit = "component beyond the stated order";
      }
      if (!ok) break;
    }
    rep.checks.add("degree bookkeeping", ok, wit);
  }

  // (i): rho_h tau = rho_g on Sym^1, zero on Sym^{>= 2}
  {
    bool ok = true;
    std::string wit;
    for (int id = 0; id < g.dim() && ok; ++id) {
      Vec lhs = h.anchor_flat(tau.eval({id}));
      Vec rhs = g.anchor_flat(unit_vec(id));
      Vec delta = lhs;
      vec_add(delta, rhs, Scalar(-1));
      if (!delta.empty()) {
        ok = false;
        wit = "rho_h(tau(" + g.fb.name[id] + ")) != rho_g";
      }
    }
    for (const auto& [m, v] : tau.comp) {
      if (m.size() < 2) continue;
      if (!h.anchor_flat(v).empty()) {
        ok = false;
        wit = "rho_h of a weight-" + std::to_string(m.size()) + " component is nonzero";
        break;
      }
    }
    rep.checks.add("condition (i): anchors", ok, wit);
  }

  // (ii): descends to Sym_A: tau(w_1 ... a.w_i ... w_q) =
  //        (-1)^{|a| (|w_1|+...+|w_{i-1}|)} a . tau(w_1 ... w_q)
  {
    bool ok = true;
    std::string wit;
    for (int q = 1; q <= tau.order && ok; ++q)
      for (const auto& m : sg.monomials(q)) {
        for (size_t i = 0; i < m.size() && ok; ++i)
          for (int gen = 0; gen < g.base->gen_count(); ++gen) {
            Expo a(g.base->gen_count(), 0);
            a[gen] = 1;
            int adeg = g.base->gen_degree(gen);
            Vec aw = g.act_mono_flat(a, unit_vec(m[i]));
            // lhs: tau with slot i replaced by a.w_i
            Vec lhs;
            Mono rest;
            for (size_t t = 0; t < m.size(); ++t)
              if (t != i) rest.push_back(m[t]);
            // reinsert each component with its sign relative to written order
            // (a.w_i occupies slot i)
            for (const auto& [rid, c] : aw) {
              // move the new letter from slot i to sorted position
              Mono work = rest;
              int pos = 0;
              while (pos < static_cast<int>(work.size()) && work[pos] < rid) ++pos;
              bool odd = sg.deg[rid] % 2 != 0;
              if (odd && ((pos < static_cast<int>(work.size()) && work[pos] == rid) ||
                          (pos > 0 && work[pos - 1] == rid)))
                continue;
              // the letter moves from written slot i to sorted slot pos,
              // crossing the letters in between (either direction)
              long jump = 0;
              int lo = std::min(pos, static_cast<int>(i));
              int hi = std::max(pos, static_cast<int>(i));
              for (int t = lo; t < hi; ++t) jump += sg.deg[work[t]];
              work.insert(work.begin() + pos, rid);
              Scalar sgn = ((jump * sg.deg[rid]) % 2 == 0) ? 1 : -1;
              vec_add(lhs, tau.eval(work), sgn * c);
            }
            // rhs
            long cross = 0;
            for (size_t t = 0; t < i; ++t) cross += sg.deg[m[t]];
            Scalar sgn = ((long(adeg) * cross) % 2 == 0) ? 1 : -1;
            Vec rhs = h.act_mono_flat(a, tau.eval(m));
            Vec delta = lhs;
            vec_add(delta, rhs, -sgn);
            if (!delta.empty()) {
              ok = false;
              wit = "A-linearity at " + sg.mono_name(m, g.fb.name) + ", slot " +
                    std::to_string(i) + ", a = " + g.base->pres.generators[gen].name;
            }
          }
        if (!ok) break;
      }
    rep.checks.add("condition (ii): descends to Sym_A", ok, wit);
  }

  // MC equation
  for (int q = 1; q <= tau.order; ++q)
    for (const auto& m : sg.monomials(q)) {
      Vec r = mc_residual(g, h, tau, sg, sh, m);
      if (!r.empty()) rep.residuals.push_back({m, r});
    }
  rep.checks.add("Maurer-Cartan equation", rep.residuals.empty(),
                 rep.residuals.empty()
                     ? ""
                     : "first witness monomial " +
                           sg.mono_name(rep.residuals.front().first, g.fb.name));
  return rep;
}

/// Composite of nonlinear maps through the bar coalgebra: the corestriction
/// of F_tau o F_sigma. Throws window_error when a needed component of tau
/// lies beyond its order (weight overflow).
inline TwistingCochain compose_nonlinear(const Algebroid& g, const Algebroid& h,
                                         const Algebroid& l, const TwistingCochain& sigma,
                                         const TwistingCochain& tau, int out_order)
{
  SymSpace sg = bar_space(g), sh = bar_space(h);
  TwistingCochain out;
  out.order = out_order;
  for (int q = 1; q <= out_order; ++q)
    for (const auto& m : sg.monomials(q)) {
      SymVec fs = cochain_coalgebra_map(g, h, sigma, sg, sh, m);
      bool overflow = false;
      Vec v = tau.eval_symvec(fs, &overflow);
      if (overflow)
        throw window_error("compose_nonlinear: weight overflow beyond the order of tau");
      if (!v.empty()) out.comp[m] = std::move(v);
    }
  (void)l;
  return out;
}

} // namespace algd

#endif
