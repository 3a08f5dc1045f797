// Atiyah algebroids, anchor kernels, mapping fibers, cotensors by a finite
// cdga over k, and free loop spaces.
#ifndef ALGD_ALGEBROID_MORE_HPP
#define ALGD_ALGEBROID_MORE_HPP

#include "algebroid_build.hpp"

namespace algd {

//------------------------------------------------------------------------------
// Atiyah algebroid At(E)
//------------------------------------------------------------------------------

/// Unknown layout for the Atiyah solve in one degree: tangent coordinates
/// first, then the nabla blocks per source degree.
struct AtiyahLayout {
  int total = 0;
  int t_dim = 0;
  std::map<int, int> nabla_off;  // source degree d -> offset of the E_d -> E_{d+n} block
};

/// Atiyah algebroid together with its solved (v, nabla) data, which is
/// needed to express representation cochains in its basis.
struct AtiyahAlgebroid {
  Algebroid algebra;
  ChainComplex E;
  std::map<int, std::vector<Vec>> solutions;  // per degree: raw kernel vectors
  std::map<int, AtiyahLayout> layouts;

  /// Coordinates of (tangent coords, nabla blocks) in the degree-n basis.
  std::optional<Vec> coords_of(int n, const Vec& tangent_coords,
                               const std::map<int, QMat>& nabla) const
  {
    auto lit = layouts.find(n);
    if (lit == layouts.end()) return Vec{};
    const AtiyahLayout& L = lit->second;
    Vec target;
    for (const auto& [t, c] : tangent_coords) target[t] = c;
    for (const auto& [d, off] : L.nabla_off) {
      auto it = nabla.find(d);
      if (it == nabla.end()) continue;
      for (int rr = 0; rr < it->second.nrows; ++rr)
        for (const auto& [cc, c] : it->second.rows[rr])
          target[off + rr * E.dim(d) + cc] = c;
    }
    QMat sys = from_rows(solutions.at(n), L.total).transpose();
    return solve(sys, target);
  }
};

/// Degree-n elements are pairs (v, nabla) with v a derivation of A and
/// nabla(a e) = v(a) e + (-1)^{|a| n} a nabla(e); solved exactly per degree.
inline AtiyahAlgebroid atiyah_algebroid(CdgaPtr base, const ChainComplex& E,
                                        const ModuleAction& actE, int arity_cap = 4)
{
  const Cdga& A = *base;
  const auto& w = A.window;

  using Layout = AtiyahLayout;
  auto layout_for = [&](int n) {
    Layout L;
    L.t_dim = A.tangent_dim(n);
    L.total = L.t_dim;
    for (int d = w.lo; d <= w.hi; ++d) {
      if (!w.contains(d + n)) continue;
      int sz = E.dim(d) * E.dim(d + n);
      if (sz == 0) continue;
      L.nabla_off[d] = L.total;
      L.total += sz;
    }
    return L;
  };
  auto nabla_entry = [&](const Layout& L, int d, int row, int col) {
    // row indexes E_{d+n}, col indexes E_d
    return L.nabla_off.at(d) + row * E.dim(d) + col;
  };

  // per-degree solve
  std::map<int, std::vector<Vec>> at_basis;  // degree -> solution vectors
  std::map<int, Layout> layouts;
  for (int n = w.lo; n <= w.hi; ++n) {
    Layout L = layout_for(n);
    layouts[n] = L;
    if (L.total == 0) {
      at_basis[n] = {};
      continue;
    }
    QMat sys(0, L.total);
    // constraints: nabla(a e) - v(a) e - (-1)^{|a| n} a nabla(e) = 0
    for (int adeg = w.lo; adeg <= w.hi; ++adeg)
      for (const auto& am : A.basis(adeg)) {
        if (am == A.unit()) continue;
        for (int d = w.lo; d <= w.hi; ++d) {
          int dae = d + adeg;           // degree of a.e
          int dtar = d + adeg + n;      // target degree of the constraint
          if (!w.contains(dae) || !w.contains(dtar) || !w.contains(d + n)) continue;
          if (E.dim(d) == 0 || E.dim(dtar) == 0) continue;
          if (!L.nabla_off.count(dae) || !L.nabla_off.count(d)) {
            if (E.dim(dae) != 0) continue;  // nabla block missing: only fine if source empty
          }
          for (int e = 0; e < E.dim(d); ++e) {
            Vec ae = actE.act_mono(am, d, unit_vec(e));
            int base_row = sys.nrows;
            sys.nrows += E.dim(dtar);
            sys.rows.resize(sys.nrows);
            // nabla(a e)
            if (L.nabla_off.count(dae))
              for (const auto& [i, c] : ae)
                for (int rr = 0; rr < E.dim(dtar); ++rr)
                  sys.rows[base_row + rr][nabla_entry(L, dae, rr, i)] += c;
            // - v(a) e : v = sum_t c_t basis_t, v(a) in A_{adeg + n}
            for (int t = 0; t < L.t_dim; ++t) {
              const Derivation& der = A.tangent_basis(n)[t];
              Poly va = A.derivation_on_poly(der.values, n, A.mono_poly(am));
              Vec vae = actE.act_poly(va, d, unit_vec(e));
              for (const auto& [rr, c] : vae) sys.rows[base_row + rr][t] -= c;
            }
            // - (-1)^{|a| n} a nabla(e)
            if (L.nabla_off.count(d)) {
              Scalar s = ((long(adeg) * n) % 2 == 0) ? 1 : -1;
              for (int rr = 0; rr < E.dim(d + n); ++rr) {
                Vec arr = actE.act_mono(am, d + n, unit_vec(rr));
                for (const auto& [r2, c] : arr)
                  sys.rows[base_row + r2][nabla_entry(L, d, rr, e)] -= s * c;
              }
            }
          }
        }
      }
    at_basis[n] = kernel_basis(sys);
  }

  // assemble the carrier
  ChainComplex carrier(w);
  for (int n = w.lo; n <= w.hi; ++n) {
    std::vector<std::string> names;
    for (size_t i = 0; i < at_basis[n].size(); ++i)
      names.push_back("At" + std::to_string(i) + "@" + std::to_string(n));
    carrier.set_basis(n, std::move(names));
  }
  carrier.sync_shapes();

  Algebroid g = algebroid_shell(base, std::move(carrier), true, arity_cap);

  // helpers to read a solution vector
  auto sol_tangent = [&](int n, const Vec& sol) {
    Derivation der;
    der.degree = n;
    der.values.resize(A.gen_count());
    for (int t = 0; t < layouts[n].t_dim; ++t) {
      Scalar c = vec_get(sol, t);
      if (is_zero(c)) continue;
      const Derivation& b = A.tangent_basis(n)[t];
      for (int i = 0; i < A.gen_count(); ++i) poly_add(der.values[i], b.values[i], c);
    }
    return der;
  };
  auto sol_nabla = [&](int n, const Vec& sol) {
    // per source degree: matrix E_d -> E_{d+n}
    std::map<int, QMat> out;
    for (const auto& [d, off] : layouts[n].nabla_off) {
      QMat m(E.dim(d + n), E.dim(d));
      for (int rr = 0; rr < m.nrows; ++rr)
        for (int cc = 0; cc < m.ncols; ++cc) {
          Scalar c = vec_get(sol, off + rr * E.dim(d) + cc);
          if (!is_zero(c)) m.set(rr, cc, c);
        }
      out[d] = std::move(m);
    }
    return out;
  };
  auto coords_of = [&](int n, const Derivation& v, const std::map<int, QMat>& nab) -> std::optional<Vec> {
    const Layout& L = layouts.at(n);
    Vec target;
    bool vzero = true;
    for (const auto& p : v.values)
      if (!p.empty()) vzero = false;
    if (!vzero) {
      Vec tc = A.tangent_coords(v.values, n);
      for (const auto& [t, c] : tc) target[t] = c;
    }
    for (const auto& [d, off] : L.nabla_off) {
      auto it = nab.find(d);
      if (it == nab.end()) continue;
      for (int rr = 0; rr < it->second.nrows; ++rr)
        for (const auto& [cc, c] : it->second.rows[rr]) target[off + rr * E.dim(d) + cc] = c;
    }
    QMat sys = from_rows(at_basis[n], L.total).transpose();
    return solve(sys, target);
  };

  // differential: ([d_A, v], [d_E, nabla])
  for (int n = w.lo; n <= w.hi; ++n) {
    if (!w.contains(n - 1)) continue;
    for (size_t j = 0; j < at_basis[n].size(); ++j) {
      const Vec& sol = at_basis[n][j];
      auto dv = A.tangent_differential(sol_tangent(n, sol));
      auto nab = sol_nabla(n, sol);
      std::map<int, QMat> dnab;
      Scalar s = (n % 2 == 0) ? 1 : -1;
      for (const auto& [d, off] : layouts[n - 1].nabla_off) {
        (void)off;
        QMat m(E.dim(d + n - 1), E.dim(d));
        // d_E o nabla
        if (nab.count(d) && E.window.contains(d + n) && E.window.contains(d + n - 1)) {
          QMat t = E.d_at(d + n) * nab.at(d);
          m = m + t;
        }
        // - (-1)^n nabla o d_E
        if (nab.count(d - 1) && E.window.contains(d - 1)) {
          QMat t = nab.at(d - 1) * E.d_at(d);
          m = m - (s * t);
        }
        dnab[d] = std::move(m);
      }
      Derivation dver = dv ? *dv : Derivation{n - 1, std::vector<Poly>(A.gen_count())};
      auto coords = coords_of(n - 1, dver, dnab);
      if (!coords) throw std::runtime_error("atiyah: differential leaves the solved space");
      for (const auto& [r, c] : *coords) g.carrier.d_at(n).add(r, static_cast<int>(j), c);
    }
  }

  // anchor: (v, nabla) -> v
  for (int n = w.lo; n <= w.hi; ++n)
    for (size_t j = 0; j < at_basis[n].size(); ++j) {
      Derivation v = sol_tangent(n, at_basis[n][j]);
      bool vzero = true;
      for (const auto& p : v.values)
        if (!p.empty()) vzero = false;
      if (vzero) continue;
      Vec tc = A.tangent_coords(v.values, n);
      for (const auto& [r, c] : tc) g.anchor.at(n).add(r, static_cast<int>(j), c);
    }

  // A-action: a (v, nabla) = (a v, a nabla)
  for (int i = 0; i < A.gen_count(); ++i) {
    Expo gi(A.gen_count(), 0);
    gi[i] = 1;
    int gdeg = A.gen_degree(i);
    for (int n = w.lo; n <= w.hi; ++n) {
      if (!w.contains(n + gdeg)) continue;
      for (size_t j = 0; j < at_basis[n].size(); ++j) {
        const Vec& sol = at_basis[n][j];
        Derivation av = A.tangent_scale(A.mono_poly(gi), sol_tangent(n, sol));
        auto nab = sol_nabla(n, sol);
        std::map<int, QMat> anab;
        for (const auto& [d, off] : layouts[n + gdeg].nabla_off) {
          (void)off;
          QMat m(E.dim(d + n + gdeg), E.dim(d));
          if (nab.count(d)) {
            const QMat& nd = nab.at(d);
            for (int cc = 0; cc < nd.ncols; ++cc) {
              Vec col;
              for (int rr = 0; rr < nd.nrows; ++rr) {
                Scalar c = nd.at(rr, cc);
                if (!is_zero(c)) col[rr] = c;
              }
              Vec acol = actE.act_mono(gi, d + n, col);
              for (const auto& [rr, c] : acol) m.add(rr, cc, c);
            }
          }
          anab[d] = std::move(m);
        }
        auto coords = coords_of(n + gdeg, av, anab);
        if (!coords) throw std::runtime_error("atiyah: action leaves the solved space");
        for (const auto& [r, c] : *coords) g.action.gen_action[i].at(n).add(r, static_cast<int>(j), c);
      }
    }
  }

  // bracket: ([v,w], nabla Xi - (-1)^{nm} Xi nabla)
  for (const auto& tup : g.sorted_tuples(2)) {
    int n = g.deg_of(tup[0]), m = g.deg_of(tup[1]);
    int outdeg = n + m;
    if (!w.contains(outdeg)) continue;
    const Vec& s1 = at_basis[n][g.fb.local_index(tup[0])];
    const Vec& s2 = at_basis[m][g.fb.local_index(tup[1])];
    Derivation bv = A.tangent_bracket(sol_tangent(n, s1), sol_tangent(m, s2));
    auto n1 = sol_nabla(n, s1);
    auto n2 = sol_nabla(m, s2);
    std::map<int, QMat> bn;
    Scalar s = ((long(n) * m) % 2 == 0) ? 1 : -1;
    for (const auto& [d, off] : layouts[outdeg].nabla_off) {
      (void)off;
      QMat mat(E.dim(d + outdeg), E.dim(d));
      if (n2.count(d) && n1.count(d + m)) mat = mat + n1.at(d + m) * n2.at(d);
      if (n1.count(d) && n2.count(d + n)) mat = mat - (s * (n2.at(d + n) * n1.at(d)));
      bn[d] = std::move(mat);
    }
    auto coords = coords_of(outdeg, bv, bn);
    if (!coords) throw std::runtime_error("atiyah: bracket leaves the solved space");
    Vec val;
    for (const auto& [r, c] : *coords) val[g.fb.id(outdeg, r)] = c;
    set_bracket(g, tup, std::move(val));
  }

  AtiyahAlgebroid out{std::move(g), E, std::move(at_basis), std::move(layouts)};
  return out;
}

//------------------------------------------------------------------------------
// Kernel of the anchor
//------------------------------------------------------------------------------

struct KernelResult {
  Algebroid algebra;   // zero anchor, restricted brackets
  GradedMap embed;     // kernel -> g, degree 0
};

inline KernelResult anchor_kernel(const Algebroid& g)
{
  const auto& w = g.carrier.window;
  std::map<int, std::vector<Vec>> kb;
  for (int d = w.lo; d <= w.hi; ++d) kb[d] = kernel_basis(g.anchor.at(d));

  ChainComplex carrier(w);
  for (int d = w.lo; d <= w.hi; ++d) {
    std::vector<std::string> names;
    for (size_t i = 0; i < kb[d].size(); ++i)
      names.push_back("n" + std::to_string(i) + "@" + std::to_string(d));
    carrier.set_basis(d, std::move(names));
  }
  carrier.sync_shapes();

  KernelResult out{algebroid_shell(g.base, std::move(carrier), g.strict_lie, g.arity_cap),
                   GradedMap()};
  Algebroid& k = out.algebra;
  k.marking.reset();

  out.embed = GradedMap(k.carrier, g.carrier, 0);
  for (int d = w.lo; d <= w.hi; ++d)
    for (size_t j = 0; j < kb[d].size(); ++j)
      for (const auto& [r, c] : kb[d][j]) out.embed.at(d).add(r, static_cast<int>(j), c);

  // coordinates of a g-carrier vector (known to lie in the kernel span)
  auto coords_in_kernel = [&](int d, const Vec& v) -> Vec {
    if (v.empty()) return {};
    QMat sys = from_rows(kb[d], g.carrier.dim(d)).transpose();
    auto sol = solve(sys, v);
    if (!sol) throw std::runtime_error("anchor_kernel: vector not in the kernel");
    return *sol;
  };
  auto to_g_flat = [&](int d, const Vec& local) {
    Vec out_flat;
    for (const auto& [j, c] : local) {
      Vec t;
      for (const auto& [r, x] : kb[d][j]) t[g.fb.id(d, r)] = x;
      vec_add(out_flat, t, c);
    }
    return out_flat;
  };
  auto from_g_flat = [&](const Vec& v) {
    // split by degree, convert each part
    Vec result;
    std::map<int, Vec> parts;
    for (const auto& [id, c] : v) parts[g.deg_of(id)][g.fb.local_index(id)] = c;
    for (const auto& [d, pv] : parts) {
      Vec loc = coords_in_kernel(d, pv);
      for (const auto& [j, c] : loc) result[k.fb.id(d, static_cast<int>(j))] = c;
    }
    return result;
  };

  // differential
  for (int d = w.lo; d <= w.hi; ++d) {
    if (!w.contains(d - 1)) continue;
    for (size_t j = 0; j < kb[d].size(); ++j) {
      Vec dg = g.d_flat(to_g_flat(d, unit_vec(static_cast<int>(j))));
      Vec loc = from_g_flat(dg);
      for (const auto& [rid, c] : loc) k.carrier.d_at(d).add(k.fb.local_index(rid), static_cast<int>(j), c);
    }
  }
  // action
  for (int i = 0; i < g.base->gen_count(); ++i) {
    Expo gi(g.base->gen_count(), 0);
    gi[i] = 1;
    for (int d = w.lo; d <= w.hi; ++d) {
      if (!w.contains(d + g.base->gen_degree(i))) continue;
      for (size_t j = 0; j < kb[d].size(); ++j) {
        Vec av = g.act_mono_flat(gi, to_g_flat(d, unit_vec(static_cast<int>(j))));
        Vec loc = from_g_flat(av);
        for (const auto& [rid, c] : loc)
          k.action.gen_action[i].at(d).add(k.fb.local_index(rid), static_cast<int>(j), c);
      }
    }
  }
  // brackets (anchor stays zero)
  for (int n = 2; n <= g.arity_cap; ++n)
    for (const auto& tup : k.sorted_tuples(n)) {
      int outdeg = k.bracket_degree(tup);
      if (!w.contains(outdeg)) continue;
      std::vector<Vec> args;
      for (int id : tup) args.push_back(to_g_flat(k.deg_of(id), unit_vec(k.fb.local_index(id))));
      Vec br = g.bracket(args);
      set_bracket(k, tup, from_g_flat(br));
    }
  return out;
}

/// Mapping fiber of the anchor: g + T_A[-1] with d(X, v) = (dX, rho X - dv).
inline ChainComplex mapping_fiber(const Algebroid& g)
{
  const auto& w = g.carrier.window;
  // occupied degrees of T_A[-1]
  for (int d = w.lo; d <= w.hi; ++d)
    if (g.tangent.dim(d) > 0 && !w.contains(d - 1))
      throw window_error("mapping_fiber: T_A[-1] leaves the window at degree " +
                         std::to_string(d - 1));
  ChainComplex fib(w);
  for (int d = w.lo; d <= w.hi; ++d) {
    std::vector<std::string> names;
    for (const auto& s : g.carrier.names(d)) names.push_back(s);
    if (w.contains(d + 1))
      for (const auto& s : g.tangent.names(d + 1)) names.push_back("s-1(" + s + ")");
    fib.set_basis(d, std::move(names));
  }
  fib.sync_shapes();
  for (int d = w.lo; d <= w.hi; ++d) {
    if (!w.contains(d - 1)) continue;
    QMat& m = fib.d_at(d);
    int gcols = g.carrier.dim(d);
    int grows = g.carrier.dim(d - 1);
    // d(X, 0) = (dX, rho X)
    const QMat& dg = g.carrier.d_at(d);
    for (int r = 0; r < dg.nrows; ++r)
      for (const auto& [c, v] : dg.rows[r]) m.add(r, c, v);
    const QMat& an = g.anchor.at(d);
    for (int r = 0; r < an.nrows; ++r)
      for (const auto& [c, v] : an.rows[r]) m.add(grows + r, c, v);
    // d(0, v) = (0, -dv)
    if (w.contains(d + 1) && g.tangent.window.contains(d + 1)) {
      const QMat& dt = g.tangent.d_at(d + 1);
      for (int r = 0; r < dt.nrows; ++r)
        for (const auto& [c, v] : dt.rows[r]) m.add(grows + r, gcols + c, -v);
    }
  }
  return fib;
}

//------------------------------------------------------------------------------
// Fibrancy, cotensor, loop space
//------------------------------------------------------------------------------

/// Fibrant = the anchor is degreewise surjective; returns the failing degree.
inline std::optional<int> fibrancy_failure(const Algebroid& g)
{
  for (int d = g.carrier.window.lo; d <= g.carrier.window.hi; ++d)
    if (rank(g.anchor.at(d)) < g.tangent.dim(d)) return d;
  return std::nullopt;
}

struct Cotensor {
  Algebroid algebra;
  // flat id -> (B-basis flat id, source description)
  std::vector<int> b_of_id;           // index of the B monomial
  std::vector<Vec> g_component;       // flat g-vector tensored with that monomial
};

/// g boxtimes B: the pullback of g ox B -> T_A ox B <- T_A. The basis is
/// {x ox 1} for x in g plus {kappa ox b} for kappa in ker(rho), b != 1.
inline Cotensor cotensor_algebroid(const Algebroid& g, const Cdga& B)
{
  if (auto bad = fibrancy_failure(g))
    throw std::invalid_argument("cotensor: g is not fibrant (anchor not surjective in degree " +
                                std::to_string(*bad) + ")");
  const auto& w = g.carrier.window;
  // B monomials, flattened deterministically
  std::vector<Expo> bmons;
  std::vector<int> bdeg;
  for (int d = B.window.lo; d <= B.window.hi; ++d)
    for (const auto& m : B.basis(d)) {
      bmons.push_back(m);
      bdeg.push_back(d);
    }
  int unit_idx = -1;
  for (size_t i = 0; i < bmons.size(); ++i)
    if (bmons[i] == B.unit()) unit_idx = static_cast<int>(i);
  if (unit_idx < 0) throw std::invalid_argument("cotensor: B has no unit in its window");

  KernelResult ker = anchor_kernel(g);

  Cotensor out{zero_algebroid(g.base, g.arity_cap), {}, {}};
  ChainComplex carrier(w);
  std::vector<std::tuple<int, Vec>> id_data;  // (b index, g-flat vector)
  for (int d = w.lo; d <= w.hi; ++d) {
    std::vector<std::string> names;
    // x ox 1 terms
    for (int i = 0; i < g.carrier.dim(d); ++i) {
      names.push_back(g.carrier.names(d)[i]);
      id_data.push_back({unit_idx, unit_vec(g.fb.id(d, i))});
    }
    // kappa ox b terms, b != 1
    for (size_t bi = 0; bi < bmons.size(); ++bi) {
      if (static_cast<int>(bi) == unit_idx) continue;
      int gd = d - bdeg[bi];
      if (!w.contains(gd)) continue;
      for (int j = 0; j < ker.algebra.carrier.dim(gd); ++j) {
        Vec kv;
        for (int r = 0; r < ker.embed.at(gd).nrows; ++r) {
          Scalar c = ker.embed.at(gd).at(r, j);
          if (!is_zero(c)) kv[g.fb.id(gd, r)] = c;
        }
        names.push_back(ker.algebra.carrier.names(gd)[j] + "*" + B.mono_name(bmons[bi]));
        id_data.push_back({static_cast<int>(bi), std::move(kv)});
      }
    }
    carrier.set_basis(d, std::move(names));
  }
  carrier.sync_shapes();

  Algebroid& lg = out.algebra;
  lg = algebroid_shell(g.base, std::move(carrier), g.strict_lie, g.arity_cap);
  for (auto& [bi, gv] : id_data) {
    out.b_of_id.push_back(bi);
    out.g_component.push_back(gv);
  }

  // expressing a (g-flat vector) ox (B monomial index) in the pullback basis
  auto to_pullback = [&](const Vec& gvec, int bi) -> Vec {
    Vec res;
    if (gvec.empty()) return res;
    if (bi == unit_idx) {
      // x ox 1 ids come first per degree, in carrier order
      for (const auto& [gid, c] : gvec) {
        int d = g.deg_of(gid);
        Vec t = unit_vec(lg.fb.id(d, g.fb.local_index(gid)));
        vec_add(res, t, c);
      }
      return res;
    }
    // must lie in the kernel: coordinates against kernel embedding
    std::map<int, Vec> parts;
    for (const auto& [gid, c] : gvec) parts[g.deg_of(gid)][g.fb.local_index(gid)] = c;
    for (const auto& [gd, pv] : parts) {
      auto sol = solve(ker.embed.at(gd), pv);
      if (!sol) throw std::runtime_error("cotensor: component not in ker(rho)");
      int d = gd + bdeg[bi];
      if (!w.contains(d)) continue;
      // locate the block of (kernel j, b = bi) inside degree d
      int offset = g.carrier.dim(d);
      for (size_t bj = 0; bj < bmons.size(); ++bj) {
        if (static_cast<int>(bj) == unit_idx) continue;
        int gd2 = d - bdeg[bj];
        if (!w.contains(gd2)) continue;
        if (static_cast<int>(bj) == bi) {
          for (const auto& [j, c] : *sol) {
            Vec t = unit_vec(lg.fb.id(d, offset + static_cast<int>(j)));
            vec_add(res, t, c);
          }
          break;
        }
        offset += ker.algebra.carrier.dim(gd2);
      }
    }
    return res;
  };

  // differential: d(xi ox b) = d(xi) ox b + (-1)^{|xi|} xi ox d_B(b)
  for (int id = 0; id < lg.dim(); ++id) {
    int d = lg.deg_of(id);
    if (!w.contains(d - 1)) continue;
    int bi = out.b_of_id[id];
    const Vec& gv = out.g_component[id];
    int gdeg = d - bdeg[bi];
    Vec total = to_pullback(g.d_flat(gv), bi);
    Poly dB = B.d_poly(B.mono_poly(bmons[bi]));
    Scalar s = (gdeg % 2 == 0) ? 1 : -1;
    for (const auto& [bm, c] : dB) {
      int bj = -1;
      for (size_t t = 0; t < bmons.size(); ++t)
        if (bmons[t] == bm) bj = static_cast<int>(t);
      if (bj < 0) continue;
      Vec t = to_pullback(gv, bj);
      vec_add(total, t, s * c);
    }
    for (const auto& [rid, c] : total)
      lg.carrier.d_at(d).add(lg.fb.local_index(rid), lg.fb.local_index(id), c);
  }

  // A-action: a (xi ox b) = (a xi) ox b
  for (int i = 0; i < g.base->gen_count(); ++i) {
    Expo gi(g.base->gen_count(), 0);
    gi[i] = 1;
    for (int id = 0; id < lg.dim(); ++id) {
      int d = lg.deg_of(id);
      if (!w.contains(d + g.base->gen_degree(i))) continue;
      Vec av = g.act_mono_flat(gi, out.g_component[id]);
      Vec total = to_pullback(av, out.b_of_id[id]);
      for (const auto& [rid, c] : total)
        lg.action.gen_action[i].at(d).add(lg.fb.local_index(rid), lg.fb.local_index(id), c);
    }
  }

  // anchor: T_A component of the b = 1 part
  for (int id = 0; id < lg.dim(); ++id) {
    int d = lg.deg_of(id);
    if (out.b_of_id[id] != unit_idx) continue;
    Vec rv = g.anchor_flat(out.g_component[id]);
    for (const auto& [tid, c] : rv)
      lg.anchor.at(d).add(g.tfb.local_index(tid), lg.fb.local_index(id), c);
  }

  // brackets: [xi_1 ox b_1, ..., xi_n ox b_n] =
  //   (-1)^{sum_{i<j} |b_i||xi_j|} [xi_1, ..., xi_n] ox (b_1 ... b_n)
  for (int n = 2; n <= g.arity_cap; ++n)
    for (const auto& tup : lg.sorted_tuples(n)) {
      int outdeg = lg.bracket_degree(tup);
      if (!w.contains(outdeg)) continue;
      long expo = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          int gdeg_j = lg.deg_of(tup[j]) - bdeg[out.b_of_id[tup[j]]];
          expo += long(bdeg[out.b_of_id[tup[i]]]) * gdeg_j;
        }
      // product of the B monomials
      Scalar bsign(1);
      Expo bprod = B.unit();
      bool dead = false;
      for (int i = 0; i < n && !dead; ++i) {
        auto [s, m] = B.mono_mul(bprod, bmons[out.b_of_id[tup[i]]]);
        if (is_zero(s)) dead = true;
        else {
          bsign *= s;
          bprod = m;
        }
      }
      if (dead) continue;
      int bj = -1;
      for (size_t t = 0; t < bmons.size(); ++t)
        if (bmons[t] == bprod) bj = static_cast<int>(t);
      if (bj < 0) continue;
      std::vector<Vec> args;
      for (int id : tup) args.push_back(out.g_component[id]);
      Vec gbr = g.bracket(args);
      if (gbr.empty()) continue;
      Vec val = to_pullback(gbr, bj);
      Scalar total = bsign * Scalar(expo % 2 == 0 ? 1 : -1);
      Vec scaled;
      vec_add(scaled, val, total);
      set_bracket(lg, tup, std::move(scaled));
    }

  return out;
}

struct LoopSpace {
  Algebroid algebra;            // g + n[-1] as one algebroid
  GradedMixedComplex mixed;     // weights -1 and 0 with the inclusion
  std::vector<int> weight_of;   // per flat id: 0 for g, -1 for n[-1]
  GradedMap mixed_on_carrier;   // the mixed map as a degree +1 endo of the carrier
};

/// Free loop space L g = g boxtimes k[eps_{-1}], with weights Lg(0) = g and
/// Lg(-1) = ker(rho)[-1] and mixed map the shifted inclusion.
inline LoopSpace loop_space(const Algebroid& g)
{
  DegreeWindow w = g.carrier.window;
  auto B = cdga_exterior("eps", -1, w);
  Cotensor ct = cotensor_algebroid(g, *B);
  LoopSpace out{std::move(ct.algebra), {}, {}, {}};
  Algebroid& lg = out.algebra;

  int unit_idx = -1;
  {
    int i = 0;
    for (int d = B->window.lo; d <= B->window.hi; ++d)
      for (const auto& m : B->basis(d)) {
        if (m == B->unit()) unit_idx = i;
        ++i;
      }
  }
  for (int id = 0; id < lg.dim(); ++id)
    out.weight_of.push_back(ct.b_of_id[id] == unit_idx ? 0 : -1);

  // weight complexes
  ChainComplex w0(w), wm1(w);
  std::map<int, std::vector<int>> ids0, ids1;  // per degree, flat ids
  for (int id = 0; id < lg.dim(); ++id) {
    int d = lg.deg_of(id);
    if (out.weight_of[id] == 0) ids0[d].push_back(id);
    else ids1[d].push_back(id);
  }
  for (int d = w.lo; d <= w.hi; ++d) {
    std::vector<std::string> n0, n1;
    for (int id : ids0[d]) n0.push_back(lg.fb.name[id]);
    for (int id : ids1[d]) n1.push_back(lg.fb.name[id]);
    w0.set_basis(d, std::move(n0));
    wm1.set_basis(d, std::move(n1));
  }
  w0.sync_shapes();
  wm1.sync_shapes();
  auto local_of = [&](const std::map<int, std::vector<int>>& ids, int id) {
    int d = lg.deg_of(id);
    const auto& v = ids.at(d);
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] == id) return static_cast<int>(i);
    return -1;
  };
  // split the differential by weight (it preserves weight: eps is closed)
  for (int d = w.lo; d <= w.hi; ++d) {
    if (!w.contains(d - 1)) continue;
    for (int id : ids0[d]) {
      Vec dv = lg.d_flat(unit_vec(id));
      for (const auto& [rid, c] : dv)
        w0.d_at(d).add(local_of(ids0, rid), local_of(ids0, id), c);
    }
    for (int id : ids1[d]) {
      Vec dv = lg.d_flat(unit_vec(id));
      for (const auto& [rid, c] : dv)
        wm1.d_at(d).add(local_of(ids1, rid), local_of(ids1, id), c);
    }
  }
  out.mixed.wlo = -1;
  out.mixed.whi = 0;
  out.mixed.weights = {wm1, w0};
  out.mixed.mixed.resize(1);
  out.mixed.mixed[0] = GradedMap(wm1, w0, 1);
  out.mixed_on_carrier = GradedMap(lg.carrier, lg.carrier, 1);
  // d(kappa ox eps) = kappa ox 1: the g-component embeds at degree +1
  for (int d = w.lo; d <= w.hi; ++d) {
    if (!w.contains(d + 1)) continue;
    for (int id : ids1[d]) {
      const Vec& gv = ct.g_component[id];  // lives in g-degree d + 1
      for (const auto& [gid, c] : gv) {
        int td = g.deg_of(gid);
        // target id in lg: the (x ox 1) block preserves local indices
        int tgt = lg.fb.id(td, g.fb.local_index(gid));
        out.mixed.mixed[0].at(d).add(local_of(ids0, tgt), local_of(ids1, id), c);
        out.mixed_on_carrier.at(d).add(lg.fb.local_index(tgt), lg.fb.local_index(id), c);
      }
    }
  }
  return out;
}

} // namespace algd

#endif
