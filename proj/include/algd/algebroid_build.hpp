// Constructions of algebroids: tangent algebroids, action algebroids,
// Atiyah algebroids, anchor kernels, mapping fibers, cotensors by a finite
// cdga, and free loop spaces.
#ifndef ALGD_ALGEBROID_BUILD_HPP
#define ALGD_ALGEBROID_BUILD_HPP

#include "algebroid.hpp"

namespace algd {

//------------------------------------------------------------------------------
// Low-level assembly
//------------------------------------------------------------------------------

/// Builds the shared tangent bookkeeping and empty action/anchor maps.
inline Algebroid algebroid_shell(CdgaPtr base, ChainComplex carrier, bool strict, int arity_cap)
{
  Algebroid g;
  g.base = std::move(base);
  g.carrier = std::move(carrier);
  g.fb = FlatBasis(g.carrier);
  g.action = ModuleAction(g.base, g.carrier);
  g.tangent = g.base->tangent_complex();
  g.tfb = FlatBasis(g.tangent);
  g.anchor = GradedMap(g.carrier, g.tangent, 0);
  g.strict_lie = strict;
  g.arity_cap = arity_cap;
  return g;
}

/// Stores a bracket value for a sorted key, dropping zero vectors.
inline void set_bracket(Algebroid& g, const Key& key, Vec value)
{
  if (value.empty()) return;
  g.brackets[static_cast<int>(key.size())][key] = std::move(value);
}

/// The zero algebroid over A.
inline Algebroid zero_algebroid(CdgaPtr base, int arity_cap = 4)
{
  ChainComplex c(base->window);
  c.sync_shapes();
  return algebroid_shell(std::move(base), std::move(c), true, arity_cap);
}

/// k-linear Lie or L-infinity algebra presented by tables, as an algebroid
/// over k (anchor is forced to zero since T_k = 0).
struct LieTableEntry {
  Key args;   // indices into the basis list, sorted
  Vec value;  // flat output
};

inline Algebroid lie_over_k(const DegreeWindow& w, const std::vector<std::string>& names,
                            const std::vector<int>& degrees,
                            const std::vector<LieTableEntry>& table, bool strict = true,
                            int arity_cap = 4,
                            const std::vector<std::pair<int, Vec>>& differential = {})
{
  auto base = cdga_k(w);
  ChainComplex c(w);
  // basis grouped by degree, preserving the given order inside each degree
  std::vector<std::vector<std::string>> per_deg(w.size());
  std::vector<int> flat_of_input(names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    if (!w.contains(degrees[i])) throw window_error("lie_over_k: generator outside window");
    per_deg[degrees[i] - w.lo].push_back(names[i]);
  }
  for (int d = w.lo; d <= w.hi; ++d) c.set_basis(d, per_deg[d - w.lo]);
  c.sync_shapes();
  // map input index -> flat id
  {
    FlatBasis fb(c);
    std::vector<int> used(w.size(), 0);
    for (size_t i = 0; i < names.size(); ++i) {
      int d = degrees[i];
      flat_of_input[i] = fb.id(d, used[d - w.lo]++);
    }
  }
  Algebroid g = algebroid_shell(base, std::move(c), strict, arity_cap);
  auto translate = [&](const Vec& v) {
    Vec out;
    for (const auto& [i, s] : v) out[flat_of_input[i]] = s;
    return out;
  };
  for (const auto& [idx, dv] : differential) {
    Vec fdv = translate(dv);
    int d = g.deg_of(flat_of_input[idx]);
    for (const auto& [rid, s] : fdv) g.carrier.d_at(d).add(g.fb.local_index(rid), g.fb.local_index(flat_of_input[idx]), s);
  }
  for (const auto& e : table) {
    Key key;
    for (int i : e.args) key.push_back(flat_of_input[i]);
    auto [sgn, sorted] = g.canon(key);
    if (sgn == 0) continue;
    Vec val = translate(e.value);
    Vec scaled;
    vec_add(scaled, val, Scalar(sgn));
    set_bracket(g, sorted, std::move(scaled));
  }
  // graded-free marking: free on its own basis over k
  FreeMarking mk;
  for (size_t i = 0; i < names.size(); ++i) {
    mk.names.push_back(names[i]);
    mk.degrees.push_back(degrees[i]);
    mk.embed.push_back(unit_vec(flat_of_input[i]));
  }
  g.marking = std::move(mk);
  return g;
}

/// sl2 = <e, f, h> with [h,e] = 2e, [h,f] = -2f, [e,f] = h, everything in
/// degree 0. `perturb` negates the [h,e] constant, which breaks Jacobi.
inline Algebroid sl2_over_k(const DegreeWindow& w, bool perturb = false)
{
  std::vector<LieTableEntry> tbl;
  Scalar two = perturb ? Scalar(-2) : Scalar(2);
  // basis order e(0), f(1), h(2)
  tbl.push_back({{0, 1}, unit_vec(2)});                 // [e,f] = h
  tbl.push_back({{0, 2}, vec_scale(unit_vec(0), -two)});  // [e,h] = -[h,e] = -2e
  tbl.push_back({{1, 2}, vec_scale(unit_vec(1), Scalar(2))});  // [f,h] = 2f
  return lie_over_k(w, {"e", "f", "h"}, {0, 0, 0}, tbl);
}

//------------------------------------------------------------------------------
// Tangent algebroid
//------------------------------------------------------------------------------

inline Algebroid tangent_algebroid(CdgaPtr base, int arity_cap = 4)
{
  Algebroid g = algebroid_shell(base, base->tangent_complex(), true, arity_cap);
  const auto& w = g.carrier.window;
  // anchor = identity
  for (int d = w.lo; d <= w.hi; ++d) g.anchor.at(d) = QMat::identity(g.carrier.dim(d));
  // A-action: a . v via tangent_scale
  for (int i = 0; i < g.base->gen_count(); ++i) {
    Expo a(g.base->gen_count(), 0);
    a[i] = 1;
    int ad = g.base->gen_degree(i);
    for (int d = w.lo; d <= w.hi; ++d) {
      if (!w.contains(d + ad)) continue;
      QMat& m = g.action.gen_action[i].at(d);
      for (int col = 0; col < g.base->tangent_dim(d); ++col) {
        auto scaled = g.base->tangent_scale(g.base->mono_poly(a), g.base->tangent_basis(d)[col]);
        Vec coords = g.base->tangent_coords(scaled.values, d + ad);
        for (const auto& [r, c] : coords) m.add(r, col, c);
      }
    }
  }
  // commutator bracket
  for (const auto& tup : g.sorted_tuples(2)) {
    int outdeg = g.bracket_degree(tup);
    if (!w.contains(outdeg)) continue;
    const auto& v = g.base->tangent_basis(g.deg_of(tup[0]))[g.fb.local_index(tup[0])];
    const auto& x = g.base->tangent_basis(g.deg_of(tup[1]))[g.fb.local_index(tup[1])];
    Derivation br = g.base->tangent_bracket(v, x);
    bool zero = true;
    for (const auto& p : br.values)
      if (!p.empty()) zero = false;
    if (zero) continue;
    Vec coords = g.base->tangent_coords(br.values, outdeg);
    Vec val;
    for (const auto& [r, c] : coords) val[g.fb.id(outdeg, r)] = c;
    set_bracket(g, tup, std::move(val));
  }
  return g;
}

//------------------------------------------------------------------------------
// Action algebroids
//------------------------------------------------------------------------------

/// Anchor data for a k-linear L-infinity algebra: for each flat id of h, the
/// coordinates of rho(X) in A's tangent basis at the matching degree (local
/// indices within that degree).
using AnchorValues = std::vector<Vec>;

struct PairedCarrier {
  ChainComplex carrier;
  std::vector<std::pair<Expo, int>> pair_of_id;   // flat id -> (a-monomial, h id)
  std::map<std::pair<Expo, int>, int> id_of_pair;
};

/// Basis of A tensor h inside the window: pairs (monomial, h basis element).
inline PairedCarrier tensor_carrier(const Cdga& A, const Algebroid& h)
{
  PairedCarrier out;
  const auto& w = A.window;
  ChainComplex c(w);
  for (int d = w.lo; d <= w.hi; ++d) {
    std::vector<std::string> names;
    for (int ad = w.lo; ad <= w.hi; ++ad) {
      int hd = d - ad;
      if (!h.carrier.window.contains(hd)) continue;
      for (const auto& am : A.basis(ad))
        for (int j = 0; j < h.carrier.dim(hd); ++j) {
          int hid = h.fb.id(hd, j);
          out.pair_of_id.push_back({am, hid});
          out.id_of_pair[{am, hid}] = -1;  // fixed after flat ids are known
          std::string an = A.mono_name(am);
          names.push_back(an == "1" ? h.fb.name[hid] : an + "(" + h.fb.name[hid] + ")");
        }
    }
    c.set_basis(d, std::move(names));
  }
  c.sync_shapes();
  out.carrier = std::move(c);
  // now flat ids follow degree-major order, matching pair_of_id insertion
  for (size_t id = 0; id < out.pair_of_id.size(); ++id)
    out.id_of_pair[out.pair_of_id[id]] = static_cast<int>(id);
  return out;
}

/// Action L-infinity algebroid A tensor h for a k-linear L-infinity algebra h
/// with anchor values rho (an L-infinity map h -> T_A). Brackets follow the
/// A-linear extension with anchor correction terms in arity 2.
inline Algebroid action_algebroid(CdgaPtr base, const Algebroid& h, const AnchorValues& rho,
                                  CheckReport* precheck = nullptr)
{
  const Cdga& A = *base;
  // precondition: rho is a map of L-infinity algebras into T_A
  if (precheck) {
    CheckReport& r = *precheck;
    auto rho_deriv = [&](int hid) {
      Derivation out;
      out.degree = h.deg_of(hid);
      out.values.resize(A.gen_count());
      for (const auto& [tid, c] : rho[hid]) {
        // rho stored as tangent coords of A at the matching degree
        const auto& b = A.tangent_basis(h.deg_of(hid));
        const Derivation& der = b[tid];
        for (int i = 0; i < A.gen_count(); ++i) poly_add(out.values[i], der.values[i], c);
      }
      return out;
    };
    // chain map: rho(dX) = [d_A, rho X]
    bool ok = true;
    std::string wit;
    for (int id = 0; id < h.dim() && ok; ++id) {
      Vec dx = h.d_flat(unit_vec(id));
      Derivation lhs;
      lhs.degree = h.deg_of(id) - 1;
      lhs.values.resize(A.gen_count());
      for (const auto& [jid, c] : dx) {
        Derivation t = rho_deriv(jid);
        for (int i = 0; i < A.gen_count(); ++i) poly_add(lhs.values[i], t.values[i], c);
      }
      auto rhs = A.tangent_differential(rho_deriv(id));
      if (!rhs) continue;
      for (int i = 0; i < A.gen_count(); ++i) {
        Poly diff = lhs.values[i];
        poly_add(diff, rhs->values[i], Scalar(-1));
        if (!diff.empty()) {
          ok = false;
          wit = "rho(d " + h.fb.name[id] + ")";
          break;
        }
      }
    }
    r.add("rho chain map", ok, wit);
    // rho[X,Y] = [rho X, rho Y]; rho kills higher brackets
    ok = true;
    wit = "";
    for (const auto& tup : h.sorted_tuples(2)) {
      Vec br = h.bracket_ids(tup);
      Derivation lhs;
      lhs.degree = h.deg_of(tup[0]) + h.deg_of(tup[1]);
      lhs.values.resize(A.gen_count());
      for (const auto& [jid, c] : br) {
        Derivation t = rho_deriv(jid);
        for (int i = 0; i < A.gen_count(); ++i) poly_add(lhs.values[i], t.values[i], c);
      }
      Derivation rhs = A.tangent_bracket(rho_deriv(tup[0]), rho_deriv(tup[1]));
      for (int i = 0; i < A.gen_count(); ++i) {
        Poly diff = lhs.values[i];
        poly_add(diff, rhs.values[i], Scalar(-1));
        if (!diff.empty()) {
          ok = false;
          wit = "rho[" + h.tuple_name(tup) + "]";
          break;
        }
      }
      if (!ok) break;
    }
    r.add("rho preserves brackets", ok, wit);
    ok = true;
    wit = "";
    for (int n = 3; n <= h.arity_cap && ok; ++n)
      for (const auto& tup : h.sorted_tuples(n)) {
        Vec br = h.bracket_ids(tup);
        for (const auto& [jid, c] : br) {
          (void)c;
          if (!rho[jid].empty()) {
            ok = false;
            wit = "rho of arity-" + std::to_string(n) + " bracket " + h.tuple_name(tup);
            break;
          }
        }
        if (!ok) break;
      }
    r.add("rho kills higher brackets", ok, wit);
  }

  PairedCarrier pc = tensor_carrier(A, h);
  Algebroid g = algebroid_shell(base, pc.carrier, h.strict_lie, h.arity_cap);
  g.carrier.sync_shapes();

  auto pair_to_flat = [&](const Poly& a, const Vec& hv) {
    Vec out;
    for (const auto& [am, ac] : a)
      for (const auto& [hid, hc] : hv) {
        auto it = pc.id_of_pair.find({am, hid});
        if (it == pc.id_of_pair.end()) continue;  // outside window
        Vec t = unit_vec(it->second);
        vec_add(out, t, ac * hc);
      }
    return out;
  };

  // differential: d(a ox X) = da ox X + (-1)^{|a|} a ox dX
  for (int id = 0; id < g.dim(); ++id) {
    const auto& [am, hid] = pc.pair_of_id[id];
    int d = g.deg_of(id);
    if (!g.carrier.window.contains(d - 1)) continue;
    int adeg = A.mono_degree(am);
    Vec out = pair_to_flat(A.d_poly(A.mono_poly(am)), unit_vec(hid));
    Vec hdx = h.d_flat(unit_vec(hid));
    Scalar s = (adeg % 2 == 0) ? 1 : -1;
    vec_add(out, pair_to_flat(A.mono_poly(am), hdx), s);
    for (const auto& [rid, c] : out)
      g.carrier.d_at(d).add(g.fb.local_index(rid), g.fb.local_index(id), c);
  }

  // A-action: g_i . (a ox X) = (g_i a) ox X
  for (int i = 0; i < A.gen_count(); ++i) {
    Expo gi(A.gen_count(), 0);
    gi[i] = 1;
    for (int id = 0; id < g.dim(); ++id) {
      const auto& [am, hid] = pc.pair_of_id[id];
      int d = g.deg_of(id);
      if (!g.carrier.window.contains(d + A.gen_degree(i))) continue;
      Poly p = A.poly_mul(A.mono_poly(gi), A.mono_poly(am));
      Vec out = pair_to_flat(p, unit_vec(hid));
      for (const auto& [rid, c] : out)
        g.action.gen_action[i].at(d).add(g.fb.local_index(rid), g.fb.local_index(id), c);
    }
  }

  auto rho_deriv = [&](int hid) {
    Derivation out;
    out.degree = h.deg_of(hid);
    out.values.resize(A.gen_count());
    for (const auto& [tid, c] : rho[hid]) {
      const auto& b = A.tangent_basis(h.deg_of(hid));
      for (int i = 0; i < A.gen_count(); ++i) poly_add(out.values[i], b[tid].values[i], c);
    }
    return out;
  };

  // anchor: rho(a ox X) = a . rho(X)
  for (int id = 0; id < g.dim(); ++id) {
    const auto& [am, hid] = pc.pair_of_id[id];
    int d = g.deg_of(id);
    if (!g.tangent.window.contains(d)) continue;
    Derivation der = A.tangent_scale(A.mono_poly(am), rho_deriv(hid));
    bool zero = true;
    for (const auto& p : der.values)
      if (!p.empty()) zero = false;
    if (zero) continue;
    Vec coords = A.tangent_coords(der.values, d);
    for (const auto& [r, c] : coords) g.anchor.at(d).add(r, g.fb.local_index(id), c);
  }

  // brackets
  for (int n = 2; n <= h.arity_cap; ++n) {
    for (const auto& tup : g.sorted_tuples(n)) {
      int outdeg = g.bracket_degree(tup);
      if (!g.carrier.window.contains(outdeg)) continue;
      std::vector<Expo> as(n);
      std::vector<int> hids(n);
      for (int t = 0; t < n; ++t) {
        as[t] = pc.pair_of_id[tup[t]].first;
        hids[t] = pc.pair_of_id[tup[t]].second;
      }
      Vec value;
      if (n == 2) {
        const Expo &a = as[0], &b = as[1];
        int X = hids[0], Y = hids[1];
        int da = A.mono_degree(a), db = A.mono_degree(b);
        int dX = h.deg_of(X), dY = h.deg_of(Y);
        // (-1)^{|X||b|} (ab) ox [X, Y]
        {
          auto [s, ab] = A.mono_mul(a, b);
          if (!is_zero(s)) {
            Vec hbr = h.bracket_ids({X, Y});
            Scalar sgn = ((long(dX) * db) % 2 == 0) ? s : -s;
            Vec t = pair_to_flat(A.mono_poly(ab), hbr);
            vec_add(value, t, sgn);
          }
        }
        // + (a rho(X)(b)) ox Y
        {
          Poly rb = A.derivation_on_poly(rho_deriv(X).values, dX, A.mono_poly(b));
          Poly arb = A.poly_mul(A.mono_poly(a), rb);
          vec_add(value, pair_to_flat(arb, unit_vec(Y)), Scalar(1));
        }
        // - (-1)^{(|a|+|X|)(|b|+|Y|)} (b rho(Y)(a)) ox X
        {
          Poly ra = A.derivation_on_poly(rho_deriv(Y).values, dY, A.mono_poly(a));
          Poly bra = A.poly_mul(A.mono_poly(b), ra);
          Scalar sgn = ((long(da + dX) * (db + dY)) % 2 == 0) ? -1 : 1;
          vec_add(value, pair_to_flat(bra, unit_vec(X)), sgn);
        }
      } else {
        // sign: move each X_i past the a_j with j > i
        long expo = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) expo += long(h.deg_of(hids[i])) * A.mono_degree(as[j]);
        Poly prod = A.mono_poly(as[0]);
        for (int j = 1; j < n; ++j) prod = A.poly_mul(prod, A.mono_poly(as[j]));
        Key hkey(hids.begin(), hids.end());
        Vec hbr = h.bracket_ids(hkey);
        Vec t = pair_to_flat(prod, hbr);
        vec_add(value, t, Scalar(expo % 2 == 0 ? 1 : -1));
      }
      set_bracket(g, tup, std::move(value));
    }
  }

  // graded-free marking on the h basis
  FreeMarking mk;
  for (int j = 0; j < h.dim(); ++j) {
    mk.names.push_back(h.fb.name[j]);
    mk.degrees.push_back(h.deg_of(j));
    auto it = pc.id_of_pair.find({A.unit(), j});
    mk.embed.push_back(it == pc.id_of_pair.end() ? Vec{} : unit_vec(it->second));
  }
  g.marking = std::move(mk);
  return g;
}

} // namespace algd

#endif
