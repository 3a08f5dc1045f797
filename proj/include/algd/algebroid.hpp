// DG-Lie and L-infinity algebroids over a cdga: the carrier is an A-module
// chain complex with an anchor map to T_A and n-ary bracket tables up to an
// arity cap. Bracket tables store values on sorted basis tuples only; every
// other evaluation is produced by permutation and Koszul sign, so graded
// antisymmetry is a storage invariant rather than a test burden.
//
// check_axioms verifies the Jacobiators J^k = 0 (with [X] = -dX as the 1-ary
// bracket), the binary Leibniz rule, higher A-linearity, and the anchor
// conditions, on every in-window basis tuple.
#ifndef ALGD_ALGEBROID_HPP
#define ALGD_ALGEBROID_HPP

#include "cdga.hpp"

#include <functional>
#include <optional>
#include <sstream>

namespace algd {

using Key = std::vector<int>;  // sorted flat carrier ids

struct CheckReport {
  struct Item {
    std::string name;
    bool ok = true;
    std::string witness;
  };
  std::vector<Item> items;

  bool pass() const
  {
    for (const auto& it : items)
      if (!it.ok) return false;
    return true;
  }
  void add(const std::string& name, bool ok, const std::string& witness = "")
  {
    items.push_back({name, ok, witness});
  }
  /// Merge a sub-report under a prefixed name.
  void absorb(const std::string& prefix, const check_failure& f)
  {
    items.push_back({prefix, f.ok, f.what});
  }
  std::string first_failure() const
  {
    for (const auto& it : items)
      if (!it.ok) return it.name + ": " + it.witness;
    return "";
  }
};

/// Marked generating set witnessing that the carrier is spanned by
/// A . generators; graded-free when the pairs are independent.
struct FreeMarking {
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<Vec> embed;  // flat carrier vector per generator
};

struct Algebroid {
  CdgaPtr base;
  ChainComplex carrier;
  FlatBasis fb;          // of carrier
  ModuleAction action;   // A on carrier
  ChainComplex tangent;  // T_A as a complex (basis = base->tangent_basis)
  FlatBasis tfb;         // of tangent
  GradedMap anchor;      // carrier -> tangent, degree 0
  bool strict_lie = true;
  int arity_cap = 4;
  std::map<int, std::map<Key, Vec>> brackets;  // arity >= 2, sorted keys
  std::optional<FreeMarking> marking;

  int deg_of(int id) const { return fb.degree[id]; }
  int dim() const { return fb.size(); }

  std::string tuple_name(const Key& k) const
  {
    std::string s = "(";
    for (size_t i = 0; i < k.size(); ++i) {
      if (i) s += ", ";
      s += fb.name[k[i]];
    }
    return s + ")";
  }

  //--- flat-vector helpers ---------------------------------------------------

  Vec d_flat(const Vec& v) const
  {
    Vec out;
    for (const auto& [id, c] : v) {
      int d = deg_of(id);
      if (!carrier.window.contains(d - 1)) continue;
      const QMat& m = carrier.d_at(d);
      for (int r = 0; r < m.nrows; ++r) {
        Scalar x = m.at(r, fb.local_index(id));
        if (!is_zero(x)) {
          Vec t = unit_vec(fb.id(d - 1, r));
          vec_add(out, t, x * c);
        }
      }
    }
    return out;
  }

  Vec act_mono_flat(const Expo& a, const Vec& v) const
  {
    int adeg = base->mono_degree(a);
    Vec out;
    for (const auto& [id, c] : v) {
      int d = deg_of(id);
      if (!carrier.window.contains(d + adeg)) continue;
      Vec local = action.act_mono(a, d, unit_vec(fb.local_index(id)));
      for (const auto& [r, x] : local) {
        Vec t = unit_vec(fb.id(d + adeg, r));
        vec_add(out, t, x * c);
      }
    }
    return out;
  }

  Vec act_poly_flat(const Poly& p, const Vec& v) const
  {
    Vec out;
    for (const auto& [m, c] : p) {
      Vec t = act_mono_flat(m, v);
      vec_add(out, t, c);
    }
    return out;
  }

  /// Anchor of a flat carrier vector, as a flat vector over tangent ids.
  Vec anchor_flat(const Vec& v) const
  {
    Vec out;
    for (const auto& [id, c] : v) {
      int d = deg_of(id);
      if (!tangent.window.contains(d)) continue;
      Vec local = anchor.apply(d, unit_vec(fb.local_index(id)));
      for (const auto& [r, x] : local) {
        Vec t = unit_vec(tfb.id(d, r));
        vec_add(out, t, x * c);
      }
    }
    return out;
  }

  /// The derivation rho(X) applied to a polynomial.
  Poly apply_anchor(const Vec& carrier_vec, const Poly& a) const
  {
    Vec tv = anchor_flat(carrier_vec);
    Poly out;
    for (const auto& [tid, c] : tv) {
      int d = tfb.degree[tid];
      const Derivation& der = base->tangent_basis(d)[tfb.local_index(tid)];
      Poly t = base->derivation_on_poly(der.values, der.degree, a);
      poly_add(out, t, c);
    }
    return out;
  }

  //--- bracket evaluation ------------------------------------------------------

  /// Canonical form of a basis tuple: (sign, sorted key); sign 0 when an
  /// even-degree element repeats (graded antisymmetry kills it).
  std::pair<int, Key> canon(Key t) const
  {
    const int n = static_cast<int>(t.size());
    // insertion sort tracking the antisymmetry sign
    int sign = 1;
    for (int i = 1; i < n; ++i) {
      int j = i;
      while (j > 0 && t[j - 1] > t[j]) {
        long s = long(deg_of(t[j - 1])) * deg_of(t[j]);
        sign *= (s % 2 == 0) ? -1 : 1;  // swap sign: -(-1)^{|x||y|}
        std::swap(t[j - 1], t[j]);
        --j;
      }
    }
    for (int i = 1; i < n; ++i)
      if (t[i] == t[i - 1] && deg_of(t[i]) % 2 == 0) return {0, {}};
    return {sign, t};
  }

  /// Bracket of basis elements (any order, any arity >= 1). Arity 1 is -d.
  Vec bracket_ids(const Key& ids) const
  {
    if (ids.size() == 1) {
      Vec v = d_flat(unit_vec(ids[0]));
      Vec out;
      vec_add(out, v, Scalar(-1));
      return out;
    }
    auto [sign, key] = canon(ids);
    if (sign == 0) return {};
    auto ait = brackets.find(static_cast<int>(ids.size()));
    if (ait == brackets.end()) return {};
    auto it = ait->second.find(key);
    if (it == ait->second.end()) return {};
    Vec out;
    vec_add(out, it->second, Scalar(sign));
    return out;
  }

  /// Multilinear bracket of flat vectors.
  Vec bracket(const std::vector<Vec>& args) const
  {
    if (args.size() == 1) {
      Vec out;
      vec_add(out, d_flat(args[0]), Scalar(-1));
      return out;
    }
    Vec out;
    Key ids(args.size());
    std::function<void(size_t, Scalar)> rec = [&](size_t slot, Scalar coef) {
      if (slot == args.size()) {
        Vec t = bracket_ids(ids);
        vec_add(out, t, coef);
        return;
      }
      for (const auto& [id, c] : args[slot]) {
        ids[slot] = id;
        rec(slot + 1, coef * c);
      }
    };
    rec(0, Scalar(1));
    return out;
  }

  /// Degree of the n-ary bracket output on a tuple.
  int bracket_degree(const Key& ids) const
  {
    int d = 0;
    for (int id : ids) d += deg_of(id);
    return d + static_cast<int>(ids.size()) - 2;
  }

  //--- tuple enumeration ------------------------------------------------------

  /// All sorted tuples of the given arity; repeats allowed only in odd degree.
  std::vector<Key> sorted_tuples(int arity) const
  {
    std::vector<Key> out;
    Key cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == arity) {
        out.push_back(cur);
        return;
      }
      for (int id = start; id < dim(); ++id) {
        cur.push_back(id);
        rec(deg_of(id) % 2 != 0 ? id : id + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  }

  /// True when every sub-bracket degree of a tuple stays inside the window,
  /// so Jacobiator evaluation sees no truncation.
  bool tuple_fully_in_window(const Key& tup) const
  {
    const int k = static_cast<int>(tup.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
      int sum = 0, sz = 0;
      for (int t = 0; t < k; ++t)
        if (mask & (1 << t)) {
          sum += deg_of(tup[t]);
          ++sz;
        }
      if (sz >= 2 && !carrier.window.contains(sum + sz - 2)) return false;
    }
    int jdeg = k - 3;
    for (int id : tup) jdeg += deg_of(id);
    return carrier.window.contains(jdeg);
  }
};

//------------------------------------------------------------------------------
// Jacobiator
//------------------------------------------------------------------------------

/// J^k(X_1..X_k) = sum_{i+j=k} (-1)^{ij} sum_{sigma in UnSh(i,j)}
///                (-1)^sigma (Koszul) [[X_{s(1)}..X_{s(i)}]_i, X_{s(i+1)}..]_{j+1}
inline Vec jacobiator(const Algebroid& g, const Key& tuple)
{
  const int k = static_cast<int>(tuple.size());
  std::vector<int> degs(k);
  for (int i = 0; i < k; ++i) degs[i] = g.deg_of(tuple[i]);
  Vec total;
  for (int i = 1; i <= k; ++i) {
    int j = k - i;
    Scalar outer_sign = ((long(i) * j) % 2 == 0) ? 1 : -1;
    for (const auto& sigma : unshuffles(i, j)) {
      int s = perm_sign(sigma) * koszul_sign(sigma, degs);
      Key inner(i);
      for (int t = 0; t < i; ++t) inner[t] = tuple[sigma[t]];
      Vec v = g.bracket_ids(inner);
      if (v.empty()) continue;
      Vec term;
      if (j == 0) {
        term = g.bracket({v});
      } else {
        std::vector<Vec> args;
        args.push_back(v);
        for (int t = i; t < k; ++t) args.push_back(unit_vec(tuple[sigma[t]]));
        term = g.bracket(args);
      }
      vec_add(total, term, outer_sign * Scalar(s));
    }
  }
  return total;
}

//------------------------------------------------------------------------------
// check_axioms
//------------------------------------------------------------------------------

inline std::string vec_str(const Algebroid& g, const Vec& v)
{
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [id, c] : v) {
    if (!s.empty()) s += " + ";
    s += scalar_str(c) + "*" + g.fb.name[id];
  }
  return s;
}

inline CheckReport check_axioms(const Algebroid& g)
{
  CheckReport rep;
  if (g.arity_cap < 2) {
    rep.add("arity_cap", false, "arity_cap must be >= 2");
    return rep;
  }

  int bad = 0;
  bool dsq = g.carrier.differential_squares_to_zero(&bad);
  rep.add("carrier d^2 = 0", dsq, dsq ? "" : "degree " + std::to_string(bad));
  rep.absorb("A-action", g.action.check(g.carrier));
  bool achain = g.anchor.is_chain_map(g.carrier, g.tangent, &bad);
  rep.add("anchor chain map", achain, achain ? "" : "degree " + std::to_string(bad));

  // anchor A-linearity: rho(a X) = a rho(X)
  {
    bool ok = true;
    std::string wit;
    for (int i = 0; ok && i < g.base->gen_count(); ++i) {
      Expo a(g.base->gen_count(), 0);
      a[i] = 1;
      for (int id = 0; ok && id < g.dim(); ++id) {
        Vec ax = g.act_mono_flat(a, unit_vec(id));
        Vec lhs = g.anchor_flat(ax);
        // a . rho(X) computed in T_A
        Vec rx = g.anchor_flat(unit_vec(id));
        Vec rhs;
        for (const auto& [tid, c] : rx) {
          int d = g.tfb.degree[tid];
          auto scaled = g.base->tangent_scale(g.base->mono_poly(a),
                                              g.base->tangent_basis(d)[g.tfb.local_index(tid)]);
          if (!g.tangent.window.contains(scaled.degree)) continue;
          Vec coords = g.base->tangent_coords(scaled.values, scaled.degree);
          for (const auto& [r, x] : coords) {
            Vec t = unit_vec(g.tfb.id(scaled.degree, r));
            vec_add(rhs, t, x * c);
          }
        }
        Vec delta = lhs;
        vec_add(delta, rhs, Scalar(-1));
        if (!delta.empty()) {
          ok = false;
          wit = "rho(" + g.base->pres.generators[i].name + "." + g.fb.name[id] + ")";
        }
      }
    }
    rep.add("anchor A-linear", ok, wit);
  }

  // flavor: strict Lie means no brackets of arity >= 3
  if (g.strict_lie) {
    bool ok = true;
    std::string wit;
    for (const auto& [n, tbl] : g.brackets)
      if (n >= 3)
        for (const auto& [key, val] : tbl)
          if (!val.empty()) {
            ok = false;
            wit = "arity " + std::to_string(n) + " bracket at " + g.tuple_name(key);
            break;
          }
    rep.add("strict flavor", ok, wit);
  }

  // Jacobiators J^k = 0, 2 <= k <= arity_cap
  for (int k = 2; k <= g.arity_cap; ++k) {
    bool ok = true;
    std::string wit;
    int skipped = 0;
    for (const auto& tup : g.sorted_tuples(k)) {
      if (!g.tuple_fully_in_window(tup)) {
        ++skipped;
        continue;
      }
      Vec j = jacobiator(g, tup);
      if (!j.empty()) {
        ok = false;
        wit = "J^" + std::to_string(k) + g.tuple_name(tup) + " = " + vec_str(g, j);
        break;
      }
    }
    std::string name = "Jacobiator J^" + std::to_string(k);
    if (skipped) name += " (skipped " + std::to_string(skipped) + " out-of-window tuples)";
    rep.add(name, ok, wit);
  }

  // binary Leibniz: [X, a.Y] = (-1)^{|a||X|} a [X, Y] + rho(X)(a) . Y
  {
    bool ok = true;
    std::string wit;
    for (int d = 0; d <= g.base->window.hi - g.base->window.lo && ok; ++d) {
      int adeg = g.base->window.lo + d;
      for (const auto& am : g.base->basis(adeg)) {
        if (am == g.base->unit()) continue;
        for (int x = 0; x < g.dim() && ok; ++x)
          for (int y = 0; y < g.dim(); ++y) {
            int outdeg = g.deg_of(x) + g.deg_of(y) + adeg;
            if (!g.carrier.window.contains(outdeg)) continue;
            Vec ay = g.act_mono_flat(am, unit_vec(y));
            Vec lhs = g.bracket({unit_vec(x), ay});
            Scalar s = ((long(adeg) * g.deg_of(x)) % 2 == 0) ? 1 : -1;
            Vec rhs = g.act_mono_flat(am, g.bracket_ids({x, y}));
            Vec rhs2;
            vec_add(rhs2, rhs, s);
            Poly rxa = g.apply_anchor(unit_vec(x), g.base->mono_poly(am));
            vec_add(rhs2, g.act_poly_flat(rxa, unit_vec(y)), Scalar(1));
            Vec delta = lhs;
            vec_add(delta, rhs2, Scalar(-1));
            if (!delta.empty()) {
              ok = false;
              wit = "[" + g.fb.name[x] + ", " + g.base->mono_name(am) + "." + g.fb.name[y] +
                    "]: difference " + vec_str(g, delta);
              break;
            }
          }
        if (!ok) break;
      }
    }
    rep.add("binary Leibniz", ok, wit);
  }

  // higher A-linearity: [X_1, ..., a.X_n] =
  //   (-1)^{|a| n} (-1)^{|a|(|X_1|+...+|X_{n-1}|)} a [X_1, ..., X_n],  n >= 3
  for (int n = 3; n <= g.arity_cap; ++n) {
    bool ok = true;
    std::string wit;
    for (const auto& tup : g.sorted_tuples(n)) {
      for (int adeg = g.base->window.lo; adeg <= g.base->window.hi && ok; ++adeg) {
        for (const auto& am : g.base->basis(adeg)) {
          if (am == g.base->unit()) continue;
          int outdeg = g.bracket_degree(tup) + adeg;
          if (!g.carrier.window.contains(outdeg)) continue;
          std::vector<Vec> args;
          for (int t = 0; t < n - 1; ++t) args.push_back(unit_vec(tup[t]));
          args.push_back(g.act_mono_flat(am, unit_vec(tup[n - 1])));
          Vec lhs = g.bracket(args);
          long expo = long(adeg) * n;
          for (int t = 0; t < n - 1; ++t) expo += long(adeg) * g.deg_of(tup[t]);
          Scalar s = (expo % 2 == 0) ? 1 : -1;
          Vec rhs = g.act_mono_flat(am, g.bracket_ids(tup));
          Vec delta = lhs;
          vec_add(delta, rhs, -s);
          if (!delta.empty()) {
            ok = false;
            wit = "arity " + std::to_string(n) + " at " + g.tuple_name(tup) + " with a = " +
                  g.base->mono_name(am);
            break;
          }
        }
      }
      if (!ok) break;
    }
    rep.add("A-linearity of the " + std::to_string(n) + "-ary bracket", ok, wit);
  }

  // anchor preserves brackets; kills arity >= 3
  {
    bool ok = true;
    std::string wit;
    for (const auto& tup : g.sorted_tuples(2)) {
      if (!g.carrier.window.contains(g.bracket_degree(tup))) continue;
      Vec lhs = g.anchor_flat(g.bracket_ids(tup));
      // [rho X, rho Y] in T_A
      Vec rx = g.anchor_flat(unit_vec(tup[0]));
      Vec ry = g.anchor_flat(unit_vec(tup[1]));
      Vec rhs;
      for (const auto& [t1, c1] : rx)
        for (const auto& [t2, c2] : ry) {
          const auto& v1 = g.base->tangent_basis(g.tfb.degree[t1])[g.tfb.local_index(t1)];
          const auto& v2 = g.base->tangent_basis(g.tfb.degree[t2])[g.tfb.local_index(t2)];
          Derivation br = g.base->tangent_bracket(v1, v2);
          if (!g.tangent.window.contains(br.degree)) continue;
          bool zero = true;
          for (const auto& p : br.values)
            if (!p.empty()) zero = false;
          if (zero) continue;
          Vec coords = g.base->tangent_coords(br.values, br.degree);
          for (const auto& [r, x] : coords) {
            Vec t = unit_vec(g.tfb.id(br.degree, r));
            vec_add(rhs, t, x * c1 * c2);
          }
        }
      Vec delta = lhs;
      vec_add(delta, rhs, Scalar(-1));
      if (!delta.empty()) {
        ok = false;
        wit = "rho[" + g.tuple_name(tup) + "]";
        break;
      }
    }
    rep.add("anchor preserves the bracket", ok, wit);

    bool ok3 = true;
    std::string wit3;
    for (int n = 3; n <= g.arity_cap && ok3; ++n)
      for (const auto& tup : g.sorted_tuples(n)) {
        if (!g.carrier.window.contains(g.bracket_degree(tup))) continue;
        Vec v = g.anchor_flat(g.bracket_ids(tup));
        if (!v.empty()) {
          ok3 = false;
          wit3 = "rho of arity-" + std::to_string(n) + " bracket at " + g.tuple_name(tup);
          break;
        }
      }
    rep.add("anchor kills higher brackets", ok3, wit3);
  }

  return rep;
}

//------------------------------------------------------------------------------
// Morphisms
//------------------------------------------------------------------------------

struct AlgebroidMorphism {
  GradedMap map;  // degree 0
};

inline CheckReport check_morphism(const Algebroid& g, const Algebroid& h,
                                  const AlgebroidMorphism& f)
{
  CheckReport rep;
  if (g.base != h.base) {
    rep.add("same base", false, "source and target live over different cdgas");
    return rep;
  }
  auto flat_apply = [&](const Vec& v) {
    Vec out;
    for (const auto& [id, c] : v) {
      int d = g.deg_of(id);
      if (!h.carrier.window.contains(d)) continue;
      Vec local = f.map.apply(d, unit_vec(g.fb.local_index(id)));
      for (const auto& [r, x] : local) {
        Vec t = unit_vec(h.fb.id(d, r));
        vec_add(out, t, x * c);
      }
    }
    return out;
  };

  rep.add("chain map", f.map.is_chain_map(g.carrier, h.carrier), "");

  // A-linear
  {
    bool ok = true;
    std::string wit;
    for (int i = 0; i < g.base->gen_count() && ok; ++i) {
      Expo a(g.base->gen_count(), 0);
      a[i] = 1;
      for (int id = 0; id < g.dim(); ++id) {
        Vec lhs = flat_apply(g.act_mono_flat(a, unit_vec(id)));
        Vec rhs = h.act_mono_flat(a, flat_apply(unit_vec(id)));
        Vec delta = lhs;
        vec_add(delta, rhs, Scalar(-1));
        if (!delta.empty()) {
          ok = false;
          wit = "f(" + g.base->pres.generators[i].name + "." + g.fb.name[id] + ")";
          break;
        }
      }
    }
    rep.add("A-linear", ok, wit);
  }

  // over T_A
  {
    bool ok = true;
    std::string wit;
    for (int id = 0; id < g.dim(); ++id) {
      Vec lhs = h.anchor_flat(flat_apply(unit_vec(id)));
      Vec rhs = g.anchor_flat(unit_vec(id));
      Vec delta = lhs;
      vec_add(delta, rhs, Scalar(-1));
      if (!delta.empty()) {
        ok = false;
        wit = "anchor of " + g.fb.name[id];
        break;
      }
    }
    rep.add("over T_A", ok, wit);
  }

  // brackets
  {
    bool ok = true;
    std::string wit;
    int cap = std::min(g.arity_cap, h.arity_cap);
    for (int n = 2; n <= cap && ok; ++n)
      for (const auto& tup : g.sorted_tuples(n)) {
        if (!g.carrier.window.contains(g.bracket_degree(tup))) continue;
        Vec lhs = flat_apply(g.bracket_ids(tup));
        std::vector<Vec> args;
        for (int id : tup) args.push_back(flat_apply(unit_vec(id)));
        Vec rhs = h.bracket(args);
        Vec delta = lhs;
        vec_add(delta, rhs, Scalar(-1));
        if (!delta.empty()) {
          ok = false;
          wit = "bracket at " + g.tuple_name(tup);
          break;
        }
      }
    rep.add("preserves brackets", ok, wit);
  }
  return rep;
}

} // namespace algd

#endif
