// Chain complexes with finite named bases inside a declared degree window,
// graded maps, shifts, cones, tensor and symmetric powers, and homology by
// exact rank computation. Also the graded-mixed variant.
//
// Degrees are homological: d : C_d -> C_{d-1}. The n-fold suspension C[n] has
// (C[n])_d = C_{d-n} and d_{C[n]} = (-1)^n d_C. Computations that would leave
// the window are refused with window_error, never silently truncated.
#ifndef ALGD_COMPLEX_HPP
#define ALGD_COMPLEX_HPP

#include "koszul.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace algd {

struct window_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeWindow {
  int lo = 0;
  int hi = 0;

  DegreeWindow() = default;
  DegreeWindow(int l, int h) : lo(l), hi(h)
  {
    if (l > h) throw std::invalid_argument("DegreeWindow: lo > hi");
  }
  bool contains(int d) const { return lo <= d && d <= hi; }
  int size() const { return hi - lo + 1; }
};

//------------------------------------------------------------------------------
// ChainComplex
//------------------------------------------------------------------------------

struct ChainComplex {
  DegreeWindow window;
  std::vector<std::vector<std::string>> basis;  // per degree, index = d - lo
  std::vector<QMat> diff;                       // diff[d-lo] : C_d -> C_{d-1}

  ChainComplex() = default;
  explicit ChainComplex(DegreeWindow w) : window(w), basis(w.size()), diff(w.size())
  {
    for (int d = w.lo; d <= w.hi; ++d) diff[d - w.lo] = QMat(0, 0);
    sync_shapes();
  }

  int dim(int d) const
  {
    if (!window.contains(d)) return 0;
    return static_cast<int>(basis[d - window.lo].size());
  }

  const std::vector<std::string>& names(int d) const
  {
    static const std::vector<std::string> empty;
    if (!window.contains(d)) return empty;
    return basis[d - window.lo];
  }

  void set_basis(int d, std::vector<std::string> names_)
  {
    if (!window.contains(d)) throw window_error("set_basis: degree outside window");
    basis[d - window.lo] = std::move(names_);
  }

  /// Resize all differential matrices to match adjacent basis sizes,
  /// preserving stored entries where shapes allow.
  void sync_shapes()
  {
    for (int d = window.lo; d <= window.hi; ++d) {
      int rows = (d - 1 >= window.lo) ? dim(d - 1) : 0;
      QMat& m = diff[d - window.lo];
      if (m.nrows != rows || m.ncols != dim(d)) {
        QMat fresh(rows, dim(d));
        for (int i = 0; i < std::min(rows, m.nrows); ++i) fresh.rows[i] = m.rows[i];
        m = std::move(fresh);
      }
    }
  }

  QMat& d_at(int deg)
  {
    if (!window.contains(deg)) throw window_error("d_at: degree outside window");
    return diff[deg - window.lo];
  }

  const QMat& d_at(int deg) const
  {
    if (!window.contains(deg)) throw window_error("d_at: degree outside window");
    return diff[deg - window.lo];
  }

  /// Applies the differential to a vector in degree d (result in degree d-1,
  /// empty when d-1 leaves the window).
  Vec d_apply(int d, const Vec& v) const
  {
    if (!window.contains(d)) return {};
    if (d - 1 < window.lo) return {};
    return d_at(d).apply(v);
  }

  int total_dim() const
  {
    int n = 0;
    for (int d = window.lo; d <= window.hi; ++d) n += dim(d);
    return n;
  }

  /// d^2 = 0 in every degree fully inside the window; false with the first
  /// failing degree reported through *bad_deg when nonzero is found.
  bool differential_squares_to_zero(int* bad_deg = nullptr) const
  {
    for (int d = window.lo + 2; d <= window.hi; ++d) {
      QMat sq = d_at(d - 1) * d_at(d);
      if (!sq.is_zero_mat()) {
        if (bad_deg) *bad_deg = d;
        return false;
      }
    }
    return true;
  }
};

//------------------------------------------------------------------------------
// GradedMap
//------------------------------------------------------------------------------

struct GradedMap {
  DegreeWindow src_window;
  DegreeWindow tgt_window;
  int degree = 0;
  std::vector<QMat> mats;  // mats[d - src.lo] : C_d -> D_{d+degree}

  GradedMap() = default;
  GradedMap(const ChainComplex& src, const ChainComplex& tgt, int deg)
      : src_window(src.window), tgt_window(tgt.window), degree(deg), mats(src.window.size())
  {
    for (int d = src.window.lo; d <= src.window.hi; ++d) {
      int td = d + deg;
      int rows = tgt.window.contains(td) ? tgt.dim(td) : 0;
      mats[d - src.window.lo] = QMat(rows, src.dim(d));
    }
  }

  QMat& at(int d) { return mats[d - src_window.lo]; }
  const QMat& at(int d) const { return mats[d - src_window.lo]; }

  Vec apply(int d, const Vec& v) const
  {
    if (!src_window.contains(d)) return {};
    return at(d).apply(v);
  }

  /// Chain-map test relative to the fixed sign rule d f = (-1)^{deg f} f d.
  bool is_chain_map(const ChainComplex& src, const ChainComplex& tgt, int* bad_deg = nullptr) const
  {
    int sgn = (degree % 2 == 0) ? 1 : -1;
    for (int d = src.window.lo; d <= src.window.hi; ++d) {
      int td = d + degree;
      if (!tgt.window.contains(td) || !tgt.window.contains(td - 1)) continue;
      if (!src.window.contains(d - 1)) continue;
      QMat lhs = tgt.d_at(td) * at(d);
      QMat rhs = Scalar(sgn) * (at(d - 1) * src.d_at(d));
      if (!(lhs == rhs)) {
        if (bad_deg) *bad_deg = d;
        return false;
      }
    }
    return true;
  }
};

/// Composite g after f (degrees add).
inline GradedMap compose(const GradedMap& g, const GradedMap& f)
{
  GradedMap h;
  h.src_window = f.src_window;
  h.tgt_window = g.tgt_window;
  h.degree = f.degree + g.degree;
  h.mats.resize(f.src_window.size());
  for (int d = f.src_window.lo; d <= f.src_window.hi; ++d) {
    int mid = d + f.degree;
    const QMat& fm = f.at(d);
    if (g.src_window.contains(mid)) {
      h.mats[d - f.src_window.lo] = g.at(mid) * fm;
    } else {
      h.mats[d - f.src_window.lo] = QMat(0, fm.ncols);
    }
  }
  return h;
}

//------------------------------------------------------------------------------
// Constructions
//------------------------------------------------------------------------------

inline ChainComplex shift(const ChainComplex& c, int n)
{
  DegreeWindow w(c.window.lo + n, c.window.hi + n);
  ChainComplex out(w);
  for (int d = c.window.lo; d <= c.window.hi; ++d) {
    std::vector<std::string> names = c.names(d);
    if (n != 0)
      for (auto& s : names) s = "s" + std::to_string(n) + "(" + s + ")";
    out.set_basis(d + n, std::move(names));
  }
  out.sync_shapes();
  Scalar sgn = (n % 2 == 0) ? 1 : -1;
  for (int d = c.window.lo; d <= c.window.hi; ++d) out.d_at(d + n) = sgn * c.d_at(d);
  return out;
}

/// Cone: C + C[1] with d(x, y) = (dx + y, -dy). Always acyclic.
inline ChainComplex cone(const ChainComplex& c, const DegreeWindow& global)
{
  int occ_lo = c.window.hi + 1, occ_hi = c.window.lo - 1;
  for (int d = c.window.lo; d <= c.window.hi; ++d)
    if (c.dim(d) > 0) {
      occ_lo = std::min(occ_lo, d);
      occ_hi = std::max(occ_hi, d);
    }
  if (occ_lo > occ_hi) return ChainComplex(DegreeWindow(global.lo, global.lo));
  if (occ_hi + 1 > global.hi)
    throw window_error("cone: no window headroom for degree +1");
  DegreeWindow w(std::min(occ_lo, c.window.lo),
                 std::min(global.hi, std::max(c.window.hi, occ_hi + 1)));
  ChainComplex out(w);
  for (int d = w.lo; d <= w.hi; ++d) {
    std::vector<std::string> names;
    for (const auto& s : c.names(d)) names.push_back(s);
    for (const auto& s : c.names(d - 1)) names.push_back("cone(" + s + ")");
    out.set_basis(d, std::move(names));
  }
  out.sync_shapes();
  for (int d = w.lo + 1; d <= w.hi; ++d) {
    QMat& m = out.d_at(d);
    int nc = c.dim(d), ncs = c.dim(d - 1);          // source split
    int mc = c.dim(d - 1);                          // target split
    // d(x, 0) = (dx, 0)
    if (c.window.contains(d)) {
      const QMat& dc = c.d_at(d);
      for (int i = 0; i < dc.nrows; ++i)
        for (const auto& [j, v] : dc.rows[i]) m.add(i, j, v);
    }
    // d(0, y) = (y, -dy)
    for (int j = 0; j < ncs; ++j) m.add(j, nc + j, Scalar(1));
    if (c.window.contains(d - 1)) {
      const QMat& dcs = c.d_at(d - 1);
      for (int i = 0; i < dcs.nrows; ++i)
        for (const auto& [j, v] : dcs.rows[i]) m.add(mc + i, nc + j, -v);
    }
  }
  return out;
}

inline ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b)
{
  DegreeWindow w(std::min(a.window.lo, b.window.lo), std::max(a.window.hi, b.window.hi));
  ChainComplex out(w);
  for (int d = w.lo; d <= w.hi; ++d) {
    std::vector<std::string> names;
    for (const auto& s : a.names(d)) names.push_back(s);
    for (const auto& s : b.names(d)) names.push_back(s);
    out.set_basis(d, std::move(names));
  }
  out.sync_shapes();
  for (int d = w.lo + 1; d <= w.hi; ++d) {
    QMat& m = out.d_at(d);
    int acols = a.dim(d), arows = a.dim(d - 1);
    if (a.window.contains(d) && a.window.contains(d - 1)) {
      const QMat& da = a.d_at(d);
      for (int i = 0; i < da.nrows; ++i)
        for (const auto& [j, v] : da.rows[i]) m.add(i, j, v);
    }
    if (b.window.contains(d) && b.window.contains(d - 1)) {
      const QMat& db = b.d_at(d);
      for (int i = 0; i < db.nrows; ++i)
        for (const auto& [j, v] : db.rows[i]) m.add(arows + i, acols + j, v);
    }
  }
  return out;
}

inline ChainComplex tensor(const ChainComplex& a, const ChainComplex& b, const DegreeWindow& global)
{
  int lo = a.window.lo + b.window.lo;
  int hi = a.window.hi + b.window.hi;
  if (lo < global.lo || hi > global.hi)
    throw window_error("tensor: result window exceeds the global window");
  DegreeWindow w(lo, hi);
  ChainComplex out(w);
  // index bookkeeping: per degree, list of (p, i, q, j)
  std::vector<std::vector<std::array<int, 4>>> pairs(w.size());
  for (int d = lo; d <= hi; ++d) {
    std::vector<std::string> names;
    for (int p = a.window.lo; p <= a.window.hi; ++p) {
      int q = d - p;
      if (!b.window.contains(q)) continue;
      for (int i = 0; i < a.dim(p); ++i)
        for (int j = 0; j < b.dim(q); ++j) {
          names.push_back(a.names(p)[i] + "*" + b.names(q)[j]);
          pairs[d - lo].push_back({p, i, q, j});
        }
    }
    out.set_basis(d, std::move(names));
  }
  out.sync_shapes();
  auto index_of = [&](int d, int p, int i, int q, int j) -> int {
    const auto& lst = pairs[d - lo];
    for (size_t t = 0; t < lst.size(); ++t)
      if (lst[t][0] == p && lst[t][1] == i && lst[t][2] == q && lst[t][3] == j)
        return static_cast<int>(t);
    return -1;
  };
  for (int d = lo + 1; d <= hi; ++d) {
    QMat& m = out.d_at(d);
    const auto& lst = pairs[d - lo];
    for (size_t col = 0; col < lst.size(); ++col) {
      auto [p, i, q, j] = lst[col];
      // d(x ox y) = dx ox y + (-1)^{|x|} x ox dy
      if (a.window.contains(p - 1)) {
        const QMat& da = a.d_at(p);
        for (int r = 0; r < da.nrows; ++r) {
          Scalar v = da.at(r, i);
          if (is_zero(v)) continue;
          int row = index_of(d - 1, p - 1, r, q, j);
          if (row >= 0) m.add(row, static_cast<int>(col), v);
        }
      }
      if (b.window.contains(q - 1)) {
        const QMat& db = b.d_at(q);
        Scalar sgn = (p % 2 == 0) ? 1 : -1;
        for (int r = 0; r < db.nrows; ++r) {
          Scalar v = db.at(r, j);
          if (is_zero(v)) continue;
          int row = index_of(d - 1, p, i, q - 1, r);
          if (row >= 0) m.add(row, static_cast<int>(col), sgn * v);
        }
      }
    }
  }
  return out;
}

//------------------------------------------------------------------------------
// Flat indexing of a complex's basis (used by Sym powers and the algebroid
// bracket tables).
//------------------------------------------------------------------------------

struct FlatBasis {
  std::vector<int> degree;        // per flat id
  std::vector<std::string> name;  // per flat id
  std::vector<int> offset;        // offset[d - lo] = first flat id in degree d
  DegreeWindow window;

  FlatBasis() = default;
  explicit FlatBasis(const ChainComplex& c) : window(c.window)
  {
    offset.resize(c.window.size());
    for (int d = c.window.lo; d <= c.window.hi; ++d) {
      offset[d - c.window.lo] = static_cast<int>(degree.size());
      for (int i = 0; i < c.dim(d); ++i) {
        degree.push_back(d);
        name.push_back(c.names(d)[i]);
      }
    }
  }

  int size() const { return static_cast<int>(degree.size()); }
  int id(int d, int i) const { return offset[d - window.lo] + i; }
  int local_index(int flat) const { return flat - offset[degree[flat] - window.lo]; }
};

//------------------------------------------------------------------------------
// Symmetric powers (graded-commutative: odd elements square to zero)
//------------------------------------------------------------------------------

namespace detail {

/// Sorted monomials of a given weight over flat ids with the stated degrees.
inline void enum_monomials(const std::vector<int>& degs, int weight, int start,
                           std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
  if (weight == 0) {
    out.push_back(cur);
    return;
  }
  for (int id = start; id < static_cast<int>(degs.size()); ++id) {
    bool odd = (degs[id] % 2 != 0);
    if (odd && !cur.empty() && cur.back() == id) continue;  // odd square vanishes
    cur.push_back(id);
    enum_monomials(degs, weight - 1, odd ? id + 1 : id, cur, out);
    cur.pop_back();
  }
}

} // namespace detail

inline std::vector<std::vector<int>> sym_monomials(const std::vector<int>& degs, int weight)
{
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  detail::enum_monomials(degs, weight, 0, cur, out);
  return out;
}

/// Sym^q(C): basis of admissible sorted monomials, differential extended as a
/// derivation with Koszul signs.
inline ChainComplex sym_power(const ChainComplex& c, int q, const DegreeWindow& global)
{
  if (q < 0) throw std::invalid_argument("sym_power: negative weight");
  FlatBasis fb(c);
  auto mons = sym_monomials(fb.degree, q);
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& m : mons) {
    int d = 0;
    for (int id : m) d += fb.degree[id];
    if (first) { lo = hi = d; first = false; }
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (mons.empty()) {
    // no admissible monomials: the zero complex on a degenerate window
    return ChainComplex(DegreeWindow(global.lo, global.lo));
  }
  if (lo < global.lo || hi > global.hi)
    throw window_error("sym_power: result window exceeds the global window");
  DegreeWindow w(lo, hi);
  ChainComplex out(w);
  std::map<std::vector<int>, std::pair<int, int>> index;  // monomial -> (deg, i)
  for (const auto& m : mons) {
    int d = 0;
    std::string nm;
    for (int id : m) {
      d += fb.degree[id];
      if (!nm.empty()) nm += ".";
      nm += fb.name[id];
    }
    if (m.empty()) nm = "1";
    index[m] = {d, out.dim(d)};
    auto names = out.names(d);
    names.push_back(nm);
    out.set_basis(d, std::move(names));
  }
  out.sync_shapes();
  // derivation: d(x_1...x_q) = sum_i (-1)^{|x_1|+...+|x_{i-1}|} x_1...dx_i...x_q,
  // each term re-sorted with the Koszul sign of the moves
  for (const auto& m : mons) {
    auto [d, col] = index[m];
    if (!out.window.contains(d - 1)) continue;
    QMat& mat = out.d_at(d);
    long prefix = 0;
    for (size_t i = 0; i < m.size(); ++i) {
      int id = m[i];
      int deg = fb.degree[id];
      int li = fb.local_index(id);
      if (c.window.contains(deg - 1)) {
        const QMat& dc = c.d_at(deg);
        for (int r = 0; r < dc.nrows; ++r) {
          Scalar v = dc.at(r, li);
          if (is_zero(v)) continue;
          std::vector<int> rest;
          for (size_t t = 0; t < m.size(); ++t)
            if (t != i) rest.push_back(m[t]);
          int rid = fb.id(deg - 1, r);
          int pos = 0;
          while (pos < static_cast<int>(rest.size()) && rest[pos] < rid) ++pos;
          bool odd = ((deg - 1) % 2 != 0);
          if (odd && ((pos < static_cast<int>(rest.size()) && rest[pos] == rid) ||
                      (pos > 0 && rest[pos - 1] == rid)))
            continue;  // odd square vanishes
          // the replacement sits at slot i; moving it left to slot pos jumps
          // rest[pos..i)
          long jump = 0;
          for (int t = pos; t < static_cast<int>(i); ++t) jump += fb.degree[rest[t]];
          rest.insert(rest.begin() + pos, rid);
          auto it = index.find(rest);
          if (it == index.end()) continue;
          Scalar sgn = ((prefix + jump * long(deg - 1)) % 2 == 0) ? 1 : -1;
          mat.add(it->second.second, col, sgn * v);
        }
      }
      prefix += deg;
    }
  }
  return out;
}

//------------------------------------------------------------------------------
// Homology
//------------------------------------------------------------------------------

struct HomologyResult {
  int dimension = 0;
  std::vector<Vec> representatives;
  bool certified = false;
};

/// H_d = ker d_d / im d_{d+1} by exact elimination. Certified when degrees
/// d-1, d, d+1 all lie inside the window, so truncation cannot contribute.
inline HomologyResult homology(const ChainComplex& c, int d)
{
  HomologyResult res;
  res.certified = c.window.contains(d) && c.window.contains(d - 1) && c.window.contains(d + 1);
  if (!c.window.contains(d)) return res;

  std::vector<Vec> cycles;
  if (c.window.contains(d - 1)) {
    cycles = kernel_basis(c.d_at(d));
  } else {
    for (int i = 0; i < c.dim(d); ++i) cycles.push_back(unit_vec(i));
  }
  QMat image(0, c.dim(d));
  if (c.window.contains(d + 1)) image = row_space(c.d_at(d + 1).transpose());

  // reduce cycle representatives against the image, then echelonize
  QMat reduced = from_rows(cycles, c.dim(d));
  QMat img = image;
  auto piv = rref(img);
  for (int i = 0; i < reduced.nrows; ++i) {
    for (size_t r = 0; r < piv.size(); ++r) {
      Scalar cv = vec_get(reduced.rows[i], piv[r]);
      if (!is_zero(cv)) vec_add(reduced.rows[i], img.rows[r], -cv);
    }
  }
  QMat reps = row_space(reduced);
  res.dimension = reps.nrows;
  for (int i = 0; i < reps.nrows; ++i) res.representatives.push_back(reps.rows[i]);
  return res;
}

/// All homology dimensions over the window at once; independent degrees run
/// in parallel, results are merged by index.
inline std::vector<HomologyResult> homology_all(const ChainComplex& c)
{
  int n = c.window.size();
  std::vector<HomologyResult> out(n);
  parallel_for(n, [&](int i) { out[i] = homology(c, c.window.lo + i); });
  return out;
}

//------------------------------------------------------------------------------
// Graded-mixed complexes
//------------------------------------------------------------------------------

/// Weight-indexed complexes with mixed maps d_p : V(p) -> V(p+1)[-1], stored
/// as maps raising homological degree by one; d_{p+1} d_p = 0 and every d_p
/// is a chain map against the internal differentials (with the (-1)^{deg}
/// rule of GradedMap).
struct GradedMixedComplex {
  int wlo = 0;
  int whi = -1;                   // weights wlo..whi
  std::vector<ChainComplex> weights;
  std::vector<GradedMap> mixed;   // mixed[p - wlo] : V(p) -> V(p+1), degree +1

  int weight_count() const { return whi - wlo + 1; }
  const ChainComplex& at(int p) const { return weights[p - wlo]; }
  ChainComplex& at(int p) { return weights[p - wlo]; }
  bool has_weight(int p) const { return wlo <= p && p <= whi; }

  bool mixed_squares_to_zero(int* bad_weight = nullptr) const
  {
    for (int p = wlo; p + 2 <= whi; ++p) {
      GradedMap sq = compose(mixed[p + 1 - wlo], mixed[p - wlo]);
      for (const auto& m : sq.mats)
        if (!m.is_zero_mat()) {
          if (bad_weight) *bad_weight = p;
          return false;
        }
    }
    return true;
  }

  bool mixed_chain_maps(int* bad_weight = nullptr) const
  {
    for (int p = wlo; p + 1 <= whi; ++p) {
      if (!mixed[p - wlo].is_chain_map(at(p), at(p + 1))) {
        if (bad_weight) *bad_weight = p;
        return false;
      }
    }
    return true;
  }

  /// Total complex with the Tate twist: Tot = sum_p V(p)[-2p], so that the
  /// mixed maps become degree -1 alongside the internal differentials.
  ChainComplex totalization(const DegreeWindow& global) const
  {
    int lo = global.hi, hi = global.lo;
    for (int p = wlo; p <= whi; ++p) {
      const ChainComplex& v = at(p);
      if (v.total_dim() == 0) continue;
      lo = std::min(lo, v.window.lo - 2 * p);
      hi = std::max(hi, v.window.hi - 2 * p);
    }
    if (lo > hi) return ChainComplex(DegreeWindow(0, 0));
    DegreeWindow w(lo, hi);
    ChainComplex out(w);
    // flat ids per (weight, degree, index)
    std::map<std::tuple<int, int, int>, std::pair<int, int>> pos;  // -> (tot deg, col)
    for (int d = lo; d <= hi; ++d) {
      std::vector<std::string> names;
      for (int p = wlo; p <= whi; ++p) {
        int vd = d + 2 * p;
        const ChainComplex& v = at(p);
        if (!v.window.contains(vd)) continue;
        for (int i = 0; i < v.dim(vd); ++i) {
          pos[{p, vd, i}] = {d, static_cast<int>(names.size())};
          names.push_back("w" + std::to_string(p) + ":" + v.names(vd)[i]);
        }
      }
      out.set_basis(d, std::move(names));
    }
    out.sync_shapes();
    for (int d = lo + 1; d <= hi; ++d) {
      QMat& m = out.d_at(d);
      for (int p = wlo; p <= whi; ++p) {
        int vd = d + 2 * p;
        const ChainComplex& v = at(p);
        if (!v.window.contains(vd)) continue;
        for (int i = 0; i < v.dim(vd); ++i) {
          auto [td, col] = pos.at({p, vd, i});
          (void)td;
          // internal differential
          if (v.window.contains(vd - 1)) {
            const QMat& dv = v.d_at(vd);
            for (int r = 0; r < dv.nrows; ++r) {
              Scalar val = dv.at(r, i);
              if (is_zero(val)) continue;
              auto it = pos.find({p, vd - 1, r});
              if (it != pos.end()) m.add(it->second.second, col, val);
            }
          }
          // mixed map: weight p -> p+1, internal degree vd -> vd+1, total d-1
          if (p + 1 <= whi) {
            const GradedMap& dm = mixed[p - wlo];
            if (dm.src_window.contains(vd)) {
              const QMat& mm = dm.at(vd);
              for (int r = 0; r < mm.nrows; ++r) {
                Scalar val = mm.at(r, i);
                if (is_zero(val)) continue;
                auto it = pos.find({p + 1, vd + 1, r});
                if (it != pos.end()) m.add(it->second.second, col, val);
              }
            }
          }
        }
      }
    }
    return out;
  }
};

} // namespace algd

#endif
