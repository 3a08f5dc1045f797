// Exact sparse linear algebra over the rationals. Matrices are stored as
// sparse rows (column -> Scalar); elimination is plain Gaussian with exact
// pivots, so ranks, kernels and solves are certified by construction.
#ifndef ALGD_LINALG_HPP
#define ALGD_LINALG_HPP

#include "scalar.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace algd {

/// Sparse vector: column index -> nonzero Scalar.
using Vec = std::map<int, Scalar>;

inline void vec_add(Vec& into, const Vec& other, const Scalar& c)
{
  if (is_zero(c)) return;
  for (const auto& [j, v] : other) {
    auto it = into.find(j);
    if (it == into.end()) {
      Scalar w = v * c;
      if (!is_zero(w)) into.emplace(j, std::move(w));
    } else {
      it->second += v * c;
      if (is_zero(it->second)) into.erase(it);
    }
  }
}

inline Vec vec_scale(const Vec& v, const Scalar& c)
{
  Vec out;
  if (is_zero(c)) return out;
  for (const auto& [j, x] : v) out.emplace(j, x * c);
  return out;
}

inline Scalar vec_get(const Vec& v, int j)
{
  auto it = v.find(j);
  return it == v.end() ? Scalar(0) : it->second;
}

inline Vec unit_vec(int j) { Vec v; v.emplace(j, Scalar(1)); return v; }

//------------------------------------------------------------------------------
// QMat: rows x cols sparse matrix of Scalars
//------------------------------------------------------------------------------

struct QMat {
  int nrows = 0;
  int ncols = 0;
  std::vector<Vec> rows;  // size nrows

  QMat() = default;
  QMat(int r, int c) : nrows(r), ncols(c), rows(r) {}

  static QMat identity(int n)
  {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.rows[i].emplace(i, Scalar(1));
    return m;
  }

  static QMat zero(int r, int c) { return QMat(r, c); }

  Scalar at(int i, int j) const { return vec_get(rows[i], j); }

  void set(int i, int j, const Scalar& v)
  {
    if (is_zero(v)) rows[i].erase(j);
    else rows[i][j] = v;
  }

  void add(int i, int j, const Scalar& v)
  {
    auto it = rows[i].find(j);
    if (it == rows[i].end()) {
      if (!is_zero(v)) rows[i].emplace(j, v);
    } else {
      it->second += v;
      if (is_zero(it->second)) rows[i].erase(it);
    }
  }

  bool is_zero_mat() const
  {
    for (const auto& r : rows)
      if (!r.empty()) return false;
    return true;
  }

  /// Number of stored nonzero entries.
  int nnz() const
  {
    int n = 0;
    for (const auto& r : rows) n += static_cast<int>(r.size());
    return n;
  }

  QMat transpose() const
  {
    QMat t(ncols, nrows);
    for (int i = 0; i < nrows; ++i)
      for (const auto& [j, v] : rows[i]) t.rows[j].emplace(i, v);
    return t;
  }

  friend QMat operator*(const QMat& a, const QMat& b)
  {
    if (a.ncols != b.nrows) throw std::invalid_argument("QMat: shape mismatch in product");
    QMat c(a.nrows, b.ncols);
    for (int i = 0; i < a.nrows; ++i)
      for (const auto& [k, av] : a.rows[i]) vec_add(c.rows[i], b.rows[k], av);
    return c;
  }

  friend QMat operator+(const QMat& a, const QMat& b)
  {
    if (a.nrows != b.nrows || a.ncols != b.ncols)
      throw std::invalid_argument("QMat: shape mismatch in sum");
    QMat c = a;
    for (int i = 0; i < b.nrows; ++i) vec_add(c.rows[i], b.rows[i], Scalar(1));
    return c;
  }

  friend QMat operator-(const QMat& a, const QMat& b)
  {
    if (a.nrows != b.nrows || a.ncols != b.ncols)
      throw std::invalid_argument("QMat: shape mismatch in difference");
    QMat c = a;
    for (int i = 0; i < b.nrows; ++i) vec_add(c.rows[i], b.rows[i], Scalar(-1));
    return c;
  }

  friend QMat operator*(const Scalar& c, const QMat& a)
  {
    QMat out(a.nrows, a.ncols);
    if (is_zero(c)) return out;
    for (int i = 0; i < a.nrows; ++i) out.rows[i] = vec_scale(a.rows[i], c);
    return out;
  }

  friend bool operator==(const QMat& a, const QMat& b)
  {
    if (a.nrows != b.nrows || a.ncols != b.ncols) return false;
    for (int i = 0; i < a.nrows; ++i)
      if (a.rows[i] != b.rows[i]) return false;
    return true;
  }

  /// Matrix-vector product (columns indexed by the vector).
  Vec apply(const Vec& x) const
  {
    Vec y;
    for (int i = 0; i < nrows; ++i) {
      Scalar acc = 0;
      for (const auto& [j, v] : rows[i]) {
        auto it = x.find(j);
        if (it != x.end()) acc += v * it->second;
      }
      if (!is_zero(acc)) y.emplace(i, acc);
    }
    return y;
  }
};

//------------------------------------------------------------------------------
// Elimination
//------------------------------------------------------------------------------

/// Reduced row echelon form. Returns pivot columns; `m` is replaced by its
/// RREF. Deterministic: first nonzero column, rows processed in order.
inline std::vector<int> rref(QMat& m)
{
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.ncols && row < m.nrows; ++col) {
    int pr = -1;
    for (int i = row; i < m.nrows; ++i)
      if (!is_zero(vec_get(m.rows[i], col))) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(m.rows[row], m.rows[pr]);
    Scalar inv = 1 / m.rows[row][col];
    m.rows[row] = vec_scale(m.rows[row], inv);
    for (int i = 0; i < m.nrows; ++i) {
      if (i == row) continue;
      Scalar c = vec_get(m.rows[i], col);
      if (!is_zero(c)) vec_add(m.rows[i], m.rows[row], -c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(QMat m) { return static_cast<int>(rref(m).size()); }

/// Basis of the (right) kernel {x : m x = 0}, in reduced echelon form with
/// respect to the free columns. Deterministic.
inline std::vector<Vec> kernel_basis(QMat m)
{
  auto pivots = rref(m);
  std::vector<char> is_pivot(m.ncols, 0);
  for (int p : pivots) is_pivot[p] = 1;
  std::vector<Vec> basis;
  for (int col = 0; col < m.ncols; ++col) {
    if (is_pivot[col]) continue;
    Vec v;
    v.emplace(col, Scalar(1));
    for (size_t r = 0; r < pivots.size(); ++r) {
      Scalar c = vec_get(m.rows[r], col);
      if (!is_zero(c)) v.emplace(pivots[r], -c);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves m x = b; returns std::nullopt when inconsistent.
inline std::optional<Vec> solve(const QMat& m, const Vec& b)
{
  QMat aug(m.nrows, m.ncols + 1);
  for (int i = 0; i < m.nrows; ++i) {
    aug.rows[i] = m.rows[i];
    Scalar bi = vec_get(b, i);
    if (!is_zero(bi)) aug.rows[i].emplace(m.ncols, bi);
  }
  auto pivots = rref(aug);
  Vec x;
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.ncols) return std::nullopt;  // pivot in the rhs column
    Scalar v = vec_get(aug.rows[r], m.ncols);
    if (!is_zero(v)) x.emplace(pivots[r], v);
  }
  return x;
}

/// Row span as a matrix in RREF with zero rows dropped.
inline QMat row_space(QMat m)
{
  auto pivots = rref(m);
  QMat out(static_cast<int>(pivots.size()), m.ncols);
  for (size_t i = 0; i < pivots.size(); ++i) out.rows[i] = m.rows[i];
  return out;
}

/// Does the row span of `sub` lie inside the row span of `space`?
inline bool rows_contained(const QMat& sub, QMat space)
{
  auto pivots = rref(space);
  for (int i = 0; i < sub.nrows; ++i) {
    Vec v = sub.rows[i];
    for (size_t r = 0; r < pivots.size(); ++r) {
      Scalar c = vec_get(v, pivots[r]);
      if (!is_zero(c)) vec_add(v, space.rows[r], -c);
    }
    if (!v.empty()) return false;
  }
  return true;
}

/// Matrix whose rows are the given vectors.
inline QMat from_rows(const std::vector<Vec>& rows, int ncols)
{
  QMat m(static_cast<int>(rows.size()), ncols);
  for (size_t i = 0; i < rows.size(); ++i) m.rows[i] = rows[i];
  return m;
}

} // namespace algd

#endif
