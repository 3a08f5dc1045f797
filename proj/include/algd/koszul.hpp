// Koszul sign engine: the single authority on signs in this library.
//
// Conventions (fixed once, everything else is derived):
//   * homological grading, differentials have degree -1;
//   * moving x past y costs (-1)^{|x||y|};
//   * the 1-ary bracket is [X] = -dX;
//   * the shifted differential is d_{V[n]} = (-1)^n d_V.
#ifndef ALGD_KOSZUL_HPP
#define ALGD_KOSZUL_HPP

#include <stdexcept>
#include <vector>

namespace algd {

/// Koszul sign of reordering (x_1,...,x_n) into (x_{perm[0]+...}) — the sign
/// (-1)^{sum |x_{perm[i]}||x_{perm[j]}|} over inversions i<j, perm[i]>perm[j].
/// perm is 0-based and must be a bijection on {0..n-1}.
inline int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees)
{
  if (perm.size() != degrees.size())
    throw std::invalid_argument("koszul_sign: length mismatch");
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("koszul_sign: not a permutation");
    seen[p] = 1;
  }
  long acc = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (perm[i] > perm[j]) acc += long(degrees[perm[i]]) * long(degrees[perm[j]]);
  return (acc % 2 == 0) ? 1 : -1;
}

/// Plain permutation parity.
inline int perm_sign(const std::vector<int>& perm)
{
  int inv = 0;
  const int n = static_cast<int>(perm.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (perm[i] > perm[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

/// Combined sign for graded-antisymmetric brackets:
/// [x_{perm[0]}, ..., x_{perm[n-1]}] = antisym_sign(perm, degs) [x_1, ..., x_n].
inline int antisym_sign(const std::vector<int>& perm, const std::vector<int>& degrees)
{
  return perm_sign(perm) * koszul_sign(perm, degrees);
}

/// All (i, n-i)-unshuffles of {0..n-1}: permutations increasing on the first
/// i slots and on the last n-i slots. Returned in lexicographic order of the
/// leading block, so enumeration order is deterministic.
inline std::vector<std::vector<int>> unshuffles(int i, int j)
{
  const int n = i + j;
  std::vector<std::vector<int>> out;
  std::vector<int> pick(i);
  for (int t = 0; t < i; ++t) pick[t] = t;
  while (true) {
    std::vector<int> perm;
    perm.reserve(n);
    std::vector<char> used(n, 0);
    for (int p : pick) { perm.push_back(p); used[p] = 1; }
    for (int p = 0; p < n; ++p)
      if (!used[p]) perm.push_back(p);
    out.push_back(std::move(perm));
    // next i-subset of {0..n-1}
    int t = i - 1;
    while (t >= 0 && pick[t] == n - i + t) --t;
    if (t < 0) break;
    ++pick[t];
    for (int s = t + 1; s < i; ++s) pick[s] = pick[s - 1] + 1;
  }
  return out;
}

/// Koszul sign of pulling the subset S (given as sorted 0-based positions) of
/// (x_0,...,x_{n-1}) to the front, keeping relative orders.
inline int front_unshuffle_sign(const std::vector<int>& subset, int n,
                                const std::vector<int>& degrees)
{
  long acc = 0;
  std::vector<char> in_s(n, 0);
  for (int p : subset) in_s[p] = 1;
  // each member of S hops over the non-members standing before it
  for (int p : subset)
    for (int q = 0; q < p; ++q)
      if (!in_s[q]) acc += long(degrees[p]) * long(degrees[q]);
  return (acc % 2 == 0) ? 1 : -1;
}

} // namespace algd

#endif
