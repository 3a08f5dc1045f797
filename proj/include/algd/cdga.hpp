// Finitely presented graded-commutative dg-algebras with monomial-quotient
// relations, their exact per-degree bases, derivations (the tangent complex
// T_A = Der_k(A, A)), and A-module actions on chain complexes.
//
// Relations are nilpotency orders per generator (odd generators square to
// zero automatically). Degree-zero generators may instead carry a polynomial
// cap; every answer involving a capped generator is window-capped, and
// reports must say so.
#ifndef ALGD_CDGA_HPP
#define ALGD_CDGA_HPP

#include "complex.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace algd {

struct check_failure {
  bool ok = true;
  std::string what;  // first counterexample, human readable
};

//------------------------------------------------------------------------------
// Monomials and polynomials
//------------------------------------------------------------------------------

using Expo = std::vector<int>;            // exponent per generator
using Poly = std::map<Expo, Scalar>;      // canonical: sorted, nonzero coeffs

inline void poly_add(Poly& into, const Poly& p, const Scalar& c)
{
  if (is_zero(c)) return;
  for (const auto& [m, v] : p) {
    auto it = into.find(m);
    if (it == into.end()) {
      Scalar w = v * c;
      if (!is_zero(w)) into.emplace(m, std::move(w));
    } else {
      it->second += v * c;
      if (is_zero(it->second)) into.erase(it);
    }
  }
}

struct CdgaGenerator {
  std::string name;
  int degree = 0;
  int order = 0;  // >= 2: g^order = 0 as a relation
  int cap = 0;    // >= 1: free generator truncated at exponent < cap
};

struct CdgaPresentation {
  std::vector<CdgaGenerator> generators;
  std::vector<Poly> differential;  // image of each generator, degree - 1
};

//------------------------------------------------------------------------------
// Cdga: presentation + computed in-window bases + tangent data
//------------------------------------------------------------------------------

struct Derivation {
  int degree = 0;
  std::vector<Poly> values;  // value on each generator
};

class Cdga {
public:
  CdgaPresentation pres;
  DegreeWindow window;
  bool capped = false;  // some generator is window-capped

  Cdga(CdgaPresentation p, DegreeWindow w) : pres(std::move(p)), window(w)
  {
    if (!window.contains(0))
      throw std::invalid_argument("cdga: the window must contain degree 0 (the unit)");
    validate();
    build_bounds();
    build_basis();
    build_tangent();
  }

  int gen_count() const { return static_cast<int>(pres.generators.size()); }
  int gen_degree(int i) const { return pres.generators[i].degree; }

  //--- basis ---------------------------------------------------------------

  const std::vector<Expo>& basis(int d) const
  {
    static const std::vector<Expo> empty;
    if (!window.contains(d)) return empty;
    return basis_[d - window.lo];
  }

  int dim(int d) const { return static_cast<int>(basis(d).size()); }

  int mono_index(const Expo& m) const
  {
    int d = mono_degree(m);
    if (!window.contains(d)) return -1;
    const auto& b = basis(d);
    auto it = std::lower_bound(b.begin(), b.end(), m);
    if (it == b.end() || *it != m) return -1;
    return static_cast<int>(it - b.begin());
  }

  int mono_degree(const Expo& m) const
  {
    int d = 0;
    for (int i = 0; i < gen_count(); ++i) d += m[i] * gen_degree(i);
    return d;
  }

  Expo unit() const { return Expo(gen_count(), 0); }

  std::string mono_name(const Expo& m) const
  {
    std::string s;
    for (int i = 0; i < gen_count(); ++i) {
      if (m[i] == 0) continue;
      if (!s.empty()) s += ".";
      s += pres.generators[i].name;
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
  }

  std::string poly_str(const Poly& p) const
  {
    if (p.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : p) {
      if (!s.empty()) s += " + ";
      s += scalar_str(c) + "*" + mono_name(m);
    }
    return s;
  }

  //--- arithmetic ----------------------------------------------------------

  /// Product of two monomials: Koszul sign and merged exponents; zero when a
  /// relation or cap kills it; out-of-window products are dropped (the
  /// algebra is only modelled inside the window).
  std::pair<Scalar, Expo> mono_mul(const Expo& a, const Expo& b) const
  {
    long expo = 0;
    for (int j = 0; j < gen_count(); ++j) {
      if (b[j] == 0) continue;
      long tail = 0;
      for (int k = j + 1; k < gen_count(); ++k) tail += long(a[k]) * gen_degree(k);
      expo += long(b[j]) * gen_degree(j) * tail;
    }
    Expo m(gen_count());
    for (int i = 0; i < gen_count(); ++i) {
      m[i] = a[i] + b[i];
      if (m[i] > bound_[i]) return {Scalar(0), {}};
    }
    if (!window.contains(mono_degree(m))) return {Scalar(0), {}};
    return {Scalar(expo % 2 == 0 ? 1 : -1), m};
  }

  Poly poly_mul(const Poly& p, const Poly& q) const
  {
    Poly out;
    for (const auto& [ma, ca] : p)
      for (const auto& [mb, cb] : q) {
        auto [s, m] = mono_mul(ma, mb);
        if (is_zero(s)) continue;
        Poly t;
        t.emplace(m, s * ca * cb);
        poly_add(out, t, Scalar(1));
      }
    return out;
  }

  Poly mono_poly(const Expo& m, const Scalar& c = Scalar(1)) const
  {
    Poly p;
    if (!is_zero(c)) p.emplace(m, c);
    return p;
  }

  /// Applies a derivation of the given degree (values per generator) to a
  /// monomial, by the Leibniz rule v(g.rest) = v(g).rest + (-1)^{|v||g|} g.v(rest).
  Poly derivation_on_mono(const std::vector<Poly>& values, int vdeg, const Expo& m) const
  {
    // find first generator with positive exponent
    int i = 0;
    while (i < gen_count() && m[i] == 0) ++i;
    if (i == gen_count()) return {};  // v(1) = 0
    Expo rest = m;
    rest[i] -= 1;
    Expo head(gen_count(), 0);
    head[i] = 1;
    Poly out = poly_mul(values[i], mono_poly(rest));
    Poly tail = derivation_on_mono(values, vdeg, rest);
    if (!tail.empty()) {
      Scalar sgn = ((long(vdeg) * gen_degree(i)) % 2 == 0) ? 1 : -1;
      poly_add(out, poly_mul(mono_poly(head), tail), sgn);
    }
    return out;
  }

  Poly derivation_on_poly(const std::vector<Poly>& values, int vdeg, const Poly& p) const
  {
    Poly out;
    for (const auto& [m, c] : p) poly_add(out, derivation_on_mono(values, vdeg, m), c);
    return out;
  }

  Poly d_poly(const Poly& p) const { return derivation_on_poly(pres.differential, -1, p); }

  Vec poly_to_vec(const Poly& p, int d) const
  {
    Vec v;
    for (const auto& [m, c] : p) {
      int idx = mono_index(m);
      if (idx < 0) throw window_error("poly_to_vec: monomial outside window basis");
      if (mono_degree(m) != d) throw std::invalid_argument("poly_to_vec: inhomogeneous");
      v[idx] = c;
    }
    return v;
  }

  Poly vec_to_poly(const Vec& v, int d) const
  {
    Poly p;
    for (const auto& [i, c] : v) p.emplace(basis(d)[i], c);
    return p;
  }

  /// A as a chain complex on its monomial basis.
  ChainComplex as_complex() const
  {
    ChainComplex c(window);
    for (int d = window.lo; d <= window.hi; ++d) {
      std::vector<std::string> names;
      for (const auto& m : basis(d)) names.push_back(mono_name(m));
      c.set_basis(d, std::move(names));
    }
    c.sync_shapes();
    for (int d = window.lo + 1; d <= window.hi; ++d) {
      QMat& mat = c.d_at(d);
      const auto& b = basis(d);
      for (size_t j = 0; j < b.size(); ++j) {
        Poly dp = d_poly(mono_poly(b[j]));
        for (const auto& [m, cf] : dp) {
          int r = mono_index(m);
          if (r >= 0) mat.add(r, static_cast<int>(j), cf);
        }
      }
    }
    return c;
  }

  //--- tangent complex -----------------------------------------------------

  const std::vector<Derivation>& tangent_basis(int d) const
  {
    static const std::vector<Derivation> empty;
    if (!window.contains(d)) return empty;
    return tangent_[d - window.lo];
  }

  int tangent_dim(int d) const { return static_cast<int>(tangent_basis(d).size()); }

  /// Coordinates of a derivation (given by its values) in the degree-d basis.
  Vec tangent_coords(const std::vector<Poly>& values, int d) const
  {
    QMat sys = tangent_matrix(d).transpose();
    Vec rhs = derivation_values_vec(values, d);
    auto sol = solve(sys, rhs);
    if (!sol) throw std::invalid_argument("tangent_coords: not a derivation in the computed basis");
    return *sol;
  }

  /// The tangent complex as a ChainComplex, differential [d_A, v].
  ChainComplex tangent_complex() const
  {
    ChainComplex c(window);
    for (int d = window.lo; d <= window.hi; ++d) {
      std::vector<std::string> names;
      for (int i = 0; i < tangent_dim(d); ++i)
        names.push_back("D" + std::to_string(i) + "@" + std::to_string(d));
      c.set_basis(d, std::move(names));
    }
    c.sync_shapes();
    for (int d = window.lo + 1; d <= window.hi; ++d) {
      QMat& mat = c.d_at(d);
      for (int j = 0; j < tangent_dim(d); ++j) {
        auto dv = tangent_differential(tangent_basis(d)[j]);
        if (!dv) continue;
        Vec coords = tangent_coords(dv->values, d - 1);
        for (const auto& [r, cf] : coords) mat.add(r, j, cf);
      }
    }
    return c;
  }

  /// [d_A, v] = d_A o v - (-1)^{|v|} v o d_A, degree |v| - 1.
  std::optional<Derivation> tangent_differential(const Derivation& v) const
  {
    if (!window.contains(v.degree - 1)) return std::nullopt;
    Derivation out;
    out.degree = v.degree - 1;
    out.values.resize(gen_count());
    Scalar sgn = (v.degree % 2 == 0) ? 1 : -1;
    for (int i = 0; i < gen_count(); ++i) {
      Poly t = d_poly(v.values[i]);
      poly_add(t, derivation_on_poly(v.values, v.degree, pres.differential[i]), -sgn);
      out.values[i] = std::move(t);
    }
    return out;
  }

  /// Commutator [v, w] = v o w - (-1)^{|v||w|} w o v.
  Derivation tangent_bracket(const Derivation& v, const Derivation& w) const
  {
    Derivation out;
    out.degree = v.degree + w.degree;
    out.values.resize(gen_count());
    Scalar sgn = ((long(v.degree) * w.degree) % 2 == 0) ? 1 : -1;
    for (int i = 0; i < gen_count(); ++i) {
      Poly t = derivation_on_poly(v.values, v.degree, w.values[i]);
      poly_add(t, derivation_on_poly(w.values, w.degree, v.values[i]), -sgn);
      out.values[i] = std::move(t);
    }
    return out;
  }

  Derivation tangent_scale(const Poly& a, const Derivation& v) const
  {
    Derivation out;
    out.degree = v.degree;
    for (const auto& [m, c] : a) out.degree = mono_degree(m) + v.degree;
    out.values.resize(gen_count());
    for (int i = 0; i < gen_count(); ++i) out.values[i] = poly_mul(a, v.values[i]);
    return out;
  }

  //--- checks ---------------------------------------------------------------

  check_failure check() const
  {
    check_failure r;
    // degrees of the differential images
    for (int i = 0; i < gen_count(); ++i) {
      for (const auto& [m, c] : pres.differential[i]) {
        if (mono_degree(m) != gen_degree(i) - 1) {
          r.ok = false;
          r.what = "d(" + pres.generators[i].name + ") has a term of wrong degree: " +
                   mono_name(m);
          return r;
        }
      }
    }
    // d^2 = 0 on generators
    for (int i = 0; i < gen_count(); ++i) {
      Poly dd = d_poly(pres.differential[i]);
      if (!dd.empty()) {
        r.ok = false;
        r.what = "d^2(" + pres.generators[i].name + ") = " + poly_str(dd);
        return r;
      }
    }
    // d compatible with nilpotency relations: n g^{n-1} d(g) = 0
    for (int i = 0; i < gen_count(); ++i) {
      const auto& g = pres.generators[i];
      if (g.order >= 2 && g.degree % 2 == 0) {
        Expo pw(gen_count(), 0);
        pw[i] = g.order - 1;
        if (window.contains(mono_degree(pw) + g.degree - 1)) {
          Poly t = poly_mul(mono_poly(pw, Scalar(g.order)), pres.differential[i]);
          if (!t.empty()) {
            r.ok = false;
            r.what = "d does not preserve the relation " + g.name + "^" +
                     std::to_string(g.order) + " = 0: " + poly_str(t);
            return r;
          }
        }
      }
    }
    // graded commutativity and the derivation property on in-window products
    for (int d1 = window.lo; d1 <= window.hi; ++d1)
      for (const auto& m1 : basis(d1))
        for (int d2 = d1; d2 <= window.hi; ++d2)
          for (const auto& m2 : basis(d2)) {
            if (!window.contains(d1 + d2)) continue;
            auto [s12, p12] = mono_mul(m1, m2);
            auto [s21, p21] = mono_mul(m2, m1);
            Poly a = mono_poly(p12, s12), b = mono_poly(p21, s21);
            if (is_zero(s12)) a.clear();
            if (is_zero(s21)) b.clear();
            Scalar sgn = ((long(d1) * d2) % 2 == 0) ? 1 : -1;
            Poly diff = a;
            poly_add(diff, b, -sgn);
            if (!diff.empty()) {
              r.ok = false;
              r.what = "commutativity fails on " + mono_name(m1) + ", " + mono_name(m2);
              return r;
            }
            if (window.contains(d1 + d2 - 1)) {
              Poly lhs = d_poly(a);
              Poly rhs = poly_mul(d_poly(mono_poly(m1)), mono_poly(m2));
              Scalar s = (d1 % 2 == 0) ? 1 : -1;
              poly_add(rhs, poly_mul(mono_poly(m1), d_poly(mono_poly(m2))), s);
              Poly delta = lhs;
              poly_add(delta, rhs, Scalar(-1));
              if (!delta.empty()) {
                r.ok = false;
                r.what = "Leibniz fails for d on " + mono_name(m1) + ", " + mono_name(m2);
                return r;
              }
            }
          }
    return r;
  }

private:
  std::vector<int> bound_;  // max exponent per generator (>= 0)
  std::vector<std::vector<Expo>> basis_;
  std::vector<std::vector<Derivation>> tangent_;
  std::vector<QMat> tangent_mat_;  // rows = basis derivations, cols = stacked values

  void validate()
  {
    for (size_t i = 0; i < pres.generators.size(); ++i) {
      auto& g = pres.generators[i];
      if (g.order && g.cap) throw std::invalid_argument("generator " + g.name + ": order and cap are exclusive");
      if (g.order == 1) throw std::invalid_argument("generator " + g.name + ": order must be >= 2");
      if (g.degree % 2 != 0) {
        if (g.cap) throw std::invalid_argument("odd generator " + g.name + " cannot be capped");
        if (g.order && g.order != 2)
          throw std::invalid_argument("odd generator " + g.name + " squares to zero; order must be 2");
        g.order = 2;
      }
      if (g.degree == 0 && !g.order && !g.cap)
        throw std::invalid_argument("degree-0 generator " + g.name + " needs an order or a cap");
      if (g.cap) capped = true;
    }
    if (pres.differential.size() != pres.generators.size())
      pres.differential.resize(pres.generators.size());
  }

  void build_bounds()
  {
    int n = gen_count();
    bound_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      const auto& g = pres.generators[i];
      if (g.order) bound_[i] = g.order - 1;
      else if (g.cap) bound_[i] = g.cap - 1;
    }
    // window-derived bounds for the rest; reject mixed unbounded signs
    int span = std::max(std::abs(window.lo), std::abs(window.hi));
    bool unb_pos = false, unb_neg = false;
    for (int i = 0; i < n; ++i)
      if (bound_[i] < 0) (gen_degree(i) > 0 ? unb_pos : unb_neg) = true;
    if (unb_pos && unb_neg)
      throw std::invalid_argument("generators of mixed unbounded degree signs need explicit caps");
    // negative contributions of bounded generators widen the reachable span
    long slack = 0;
    for (int i = 0; i < n; ++i)
      if (bound_[i] >= 0) slack += long(bound_[i]) * std::abs(gen_degree(i));
    for (int i = 0; i < n; ++i)
      if (bound_[i] < 0) bound_[i] = int((span + slack) / std::abs(gen_degree(i)));
  }

  void enum_basis(int i, Expo& cur, std::vector<std::map<Expo, char>>& by_deg)
  {
    if (i == gen_count()) {
      int d = mono_degree(cur);
      if (window.contains(d)) by_deg[d - window.lo].emplace(cur, 1);
      return;
    }
    for (int e = 0; e <= bound_[i]; ++e) {
      cur[i] = e;
      enum_basis(i + 1, cur, by_deg);
    }
    cur[i] = 0;
  }

  void build_basis()
  {
    std::vector<std::map<Expo, char>> by_deg(window.size());
    Expo cur(gen_count(), 0);
    enum_basis(0, cur, by_deg);
    basis_.resize(window.size());
    for (int d = window.lo; d <= window.hi; ++d) {
      for (const auto& [m, _] : by_deg[d - window.lo]) basis_[d - window.lo].push_back(m);
    }
  }

  /// Stacked coordinates of derivation values: per generator i, the value
  /// v(g_i) in degree d + |g_i| as a block.
  Vec derivation_values_vec(const std::vector<Poly>& values, int d) const
  {
    Vec out;
    int off = 0;
    for (int i = 0; i < gen_count(); ++i) {
      int td = d + gen_degree(i);
      if (window.contains(td)) {
        for (const auto& [m, c] : values[i]) {
          int idx = mono_index(m);
          if (idx < 0) throw window_error("derivation value outside window");
          out[off + idx] = c;
        }
        off += dim(td);
      } else {
        if (!values[i].empty())
          throw window_error("derivation value in out-of-window degree");
      }
    }
    return out;
  }

  QMat tangent_matrix(int d) const { return tangent_mat_[d - window.lo]; }

  void build_tangent()
  {
    tangent_.resize(window.size());
    tangent_mat_.resize(window.size());
    for (int d = window.lo; d <= window.hi; ++d) {
      // unknowns: stacked coords of v(g_i) in degree d + |g_i| (in-window only)
      int total = 0;
      std::vector<int> off(gen_count(), -1);
      for (int i = 0; i < gen_count(); ++i) {
        int td = d + gen_degree(i);
        if (window.contains(td)) {
          off[i] = total;
          total += dim(td);
        }
      }
      // constraints: for each even generator with a nilpotency order,
      // n g^{n-1} v(g) = 0 (odd generators impose nothing); rows indexed by
      // (generator, target monomial), columns by the stacked unknowns
      QMat sys(0, total);
      for (int i = 0; i < gen_count(); ++i) {
        const auto& g = pres.generators[i];
        if (off[i] < 0 || !(g.order >= 2) || g.degree % 2 != 0) continue;
        Expo pw(gen_count(), 0);
        pw[i] = g.order - 1;
        int td = d + gen_degree(i);
        int cdeg = mono_degree(pw) + td;
        if (!window.contains(cdeg)) continue;
        int base_row = sys.nrows;
        sys.nrows += dim(cdeg);
        sys.rows.resize(sys.nrows);
        for (int col = 0; col < dim(td); ++col) {
          Poly t = poly_mul(mono_poly(pw, Scalar(g.order)), mono_poly(basis(td)[col]));
          for (const auto& [m, c] : t) {
            int r = mono_index(m);
            if (r >= 0) sys.rows[base_row + r][off[i] + col] += c;
          }
        }
      }
      auto ker = kernel_basis(sys);
      auto& out = tangent_[d - window.lo];
      QMat coords(static_cast<int>(ker.size()), total);
      for (size_t b = 0; b < ker.size(); ++b) {
        Derivation v;
        v.degree = d;
        v.values.resize(gen_count());
        for (int i = 0; i < gen_count(); ++i) {
          if (off[i] < 0) continue;
          int td = d + gen_degree(i);
          for (int col = 0; col < dim(td); ++col) {
            Scalar c = vec_get(ker[b], off[i] + col);
            if (!is_zero(c)) v.values[i].emplace(basis(td)[col], c);
          }
        }
        coords.rows[b] = ker[b];
        out.push_back(std::move(v));
      }
      tangent_mat_[d - window.lo] = std::move(coords);
    }
  }
};

using CdgaPtr = std::shared_ptr<const Cdga>;

//------------------------------------------------------------------------------
// Module actions: A acting on a chain complex E
//------------------------------------------------------------------------------

/// A-action on a complex, stored as one matrix per generator and degree;
/// monomials act by composing generator actions in written order.
struct ModuleAction {
  CdgaPtr A;
  std::vector<GradedMap> gen_action;  // per generator: E -> E of degree |g_i|

  ModuleAction() = default;
  ModuleAction(CdgaPtr a, const ChainComplex& E) : A(std::move(a))
  {
    gen_action.reserve(A->gen_count());
    for (int i = 0; i < A->gen_count(); ++i)
      gen_action.emplace_back(E, E, A->gen_degree(i));
  }

  Vec act_gen_power(int i, int power, int d, Vec v) const
  {
    for (int t = 0; t < power; ++t) {
      v = gen_action[i].apply(d, v);
      d += A->gen_degree(i);
      if (v.empty()) return v;
    }
    return v;
  }

  /// Action of a basis monomial on a degree-d vector.
  Vec act_mono(const Expo& m, int d, const Vec& v) const
  {
    // monomial g_1^{e_1} ... g_n^{e_n} acts with g_n first (right factor acts
    // first under (ab).e = a.(b.e))
    Vec w = v;
    int cur = d;
    for (int i = A->gen_count() - 1; i >= 0; --i) {
      if (m[i] == 0) continue;
      w = act_gen_power(i, m[i], cur, std::move(w));
      cur += m[i] * A->gen_degree(i);
      if (w.empty()) return w;
    }
    return w;
  }

  Vec act_poly(const Poly& p, int d, const Vec& v) const
  {
    Vec out;
    for (const auto& [m, c] : p) {
      Vec t = act_mono(m, d, v);
      vec_add(out, t, c);
    }
    return out;
  }

  /// Validates associativity against the algebra, unitality (implicit: the
  /// unit monomial acts by identity composition of nothing), the relations,
  /// and the Leibniz rule with the differentials.
  check_failure check(const ChainComplex& E) const
  {
    check_failure r;
    const auto& w = E.window;
    // chain map: d_E(g.e) = (dg).e + (-1)^{|g|} g.(d_E e)
    for (int i = 0; i < A->gen_count(); ++i) {
      int gd = A->gen_degree(i);
      for (int d = w.lo; d <= w.hi; ++d) {
        if (!w.contains(d + gd) || !w.contains(d + gd - 1)) continue;
        for (int col = 0; col < E.dim(d); ++col) {
          Vec e = unit_vec(col);
          Vec lhs = E.d_apply(d + gd, gen_action[i].apply(d, e));
          Vec rhs = act_poly(A->pres.differential[i], d, e);
          if (w.contains(d - 1)) {
            Scalar s = (gd % 2 == 0) ? 1 : -1;
            vec_add(rhs, gen_action[i].apply(d - 1, E.d_apply(d, e)), s);
          }
          Vec delta = lhs;
          vec_add(delta, rhs, Scalar(-1));
          if (!delta.empty()) {
            r.ok = false;
            r.what = "action of " + A->pres.generators[i].name +
                     " is not a chain map at degree " + std::to_string(d);
            return r;
          }
        }
      }
    }
    // commutativity and relations on generator pairs/powers
    for (int i = 0; i < A->gen_count(); ++i)
      for (int j = 0; j < A->gen_count(); ++j) {
        int di = A->gen_degree(i), dj = A->gen_degree(j);
        for (int d = w.lo; d <= w.hi; ++d) {
          if (!w.contains(d + di + dj)) continue;
          for (int col = 0; col < E.dim(d); ++col) {
            Vec e = unit_vec(col);
            Vec lhs = gen_action[i].apply(d + dj, gen_action[j].apply(d, e));
            Vec rhs = gen_action[j].apply(d + di, gen_action[i].apply(d, e));
            Scalar s = ((long(di) * dj) % 2 == 0) ? 1 : -1;
            Vec delta = lhs;
            vec_add(delta, rhs, -s);
            if (!delta.empty()) {
              r.ok = false;
              r.what = "actions of " + A->pres.generators[i].name + " and " +
                       A->pres.generators[j].name + " do not graded-commute";
              return r;
            }
          }
        }
      }
    for (int i = 0; i < A->gen_count(); ++i) {
      const auto& g = A->pres.generators[i];
      if (g.order < 2) continue;
      for (int d = w.lo; d <= w.hi; ++d) {
        if (!w.contains(d + g.order * g.degree)) continue;
        for (int col = 0; col < E.dim(d); ++col) {
          Vec e = act_gen_power(i, g.order, d, unit_vec(col));
          if (!e.empty()) {
            r.ok = false;
            r.what = "relation " + g.name + "^" + std::to_string(g.order) +
                     " = 0 fails on the module";
            return r;
          }
        }
      }
    }
    return r;
  }
};

//------------------------------------------------------------------------------
// Standard presentations
//------------------------------------------------------------------------------

inline CdgaPtr cdga_k(const DegreeWindow& w)
{
  return std::make_shared<Cdga>(CdgaPresentation{}, w);
}

/// k[x]/(x^n) with |x| = 0.
inline CdgaPtr cdga_truncated_poly(const std::string& name, int order, const DegreeWindow& w)
{
  CdgaPresentation p;
  p.generators.push_back({name, 0, order, 0});
  p.differential.resize(1);
  return std::make_shared<Cdga>(p, w);
}

/// Exterior algebra k[e]/(e^2) with |e| odd.
inline CdgaPtr cdga_exterior(const std::string& name, int degree, const DegreeWindow& w)
{
  CdgaPresentation p;
  p.generators.push_back({name, degree, 2, 0});
  p.differential.resize(1);
  return std::make_shared<Cdga>(p, w);
}

} // namespace algd

#endif
